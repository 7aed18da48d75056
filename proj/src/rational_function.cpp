#include "poisson/rational_function.hpp"

#include "poisson/errors.hpp"

#include <sstream>

namespace poisson {

RationalFunction RationalFunction::monic(Polynomial num, Polynomial den) {
    if (num.is_zero()) return RationalFunction();
    if (den.leading_coeff() != 1) {
        const Rational inv = Rational(1) / den.leading_coeff();
        num *= inv;
        den *= inv;
    }
    return RationalFunction(std::move(num), std::move(den), Canonical{});
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw MathError("division by the zero polynomial");
    if (num.is_zero()) {
        den_ = Polynomial(Rational(1));
        return;
    }
    if (!den.is_constant()) {
        const Polynomial g = gcd(num, den);
        if (!g.is_constant()) {
            num = *divide_exact(num, g);
            den = *divide_exact(den, g);
        }
    }
    *this = monic(std::move(num), std::move(den));
}

RationalFunction RationalFunction::operator-() const {
    return RationalFunction(-num_, den_, Canonical{});
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.is_polynomial()) return RationalFunction(a.num_ + b.num_);
        return RationalFunction(a.num_ + b.num_, a.den_);
    }
    if (a.is_polynomial()) return RationalFunction::monic(a.num_ * b.den_ + b.num_, b.den_);
    if (b.is_polynomial()) return RationalFunction::monic(a.num_ + b.num_ * a.den_, a.den_);

    // a/(g b') + c/(g d') = (a d' + c b') / (g b' d'); only g can share
    // factors with the new numerator.
    const Polynomial g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        return RationalFunction::monic(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    const Polynomial bp = *divide_exact(a.den_, g);
    const Polynomial dp = *divide_exact(b.den_, g);
    Polynomial num = a.num_ * dp + b.num_ * bp;
    if (num.is_zero()) return RationalFunction();
    Polynomial den = g;
    const Polynomial h = gcd(num, g);
    if (!h.is_constant()) {
        num = *divide_exact(num, h);
        den = *divide_exact(den, h);
    }
    return RationalFunction::monic(std::move(num), den * bp * dp);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
    // Cross-cancel: (a/b)(c/d) with g1 = gcd(a,d), g2 = gcd(c,b).
    Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant()) {
        const Polynomial g1 = gcd(an, bd);
        if (!g1.is_constant()) {
            an = *divide_exact(an, g1);
            bd = *divide_exact(bd, g1);
        }
    }
    if (!ad.is_constant()) {
        const Polynomial g2 = gcd(bn, ad);
        if (!g2.is_constant()) {
            bn = *divide_exact(bn, g2);
            ad = *divide_exact(ad, g2);
        }
    }
    return RationalFunction::monic(an * bn, ad * bd);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw MathError("division by the zero rational function");
    return a * RationalFunction::monic(b.den_, b.num_);
}

RationalFunction pow(const RationalFunction& base, int exponent) {
    if (exponent < 0) return RationalFunction(1) / pow(base, -exponent);
    // Powers of coprime polynomials stay coprime.
    const auto e = static_cast<unsigned>(exponent);
    if (base.is_polynomial()) return RationalFunction(pow(base.numerator(), e));
    return RationalFunction(pow(base.numerator(), e), pow(base.denominator(), e));
}

RationalFunction derivative(const RationalFunction& f, std::size_t var) {
    const Polynomial& n = f.numerator();
    const Polynomial& d = f.denominator();
    if (f.is_polynomial()) return RationalFunction(derivative(n, var) * (Rational(1) / d.constant_value()));
    const Polynomial dd = derivative(d, var);
    if (dd.is_zero()) return RationalFunction(derivative(n, var), d);
    // (n' d - n d') / d^2 = (n' (d/g) - n (d'/g)) / (d (d/g)), g = gcd(d, d').
    const Polynomial g = gcd(d, dd);
    const Polynomial dg = *divide_exact(d, g);
    const Polynomial ddg = *divide_exact(dd, g);
    return RationalFunction(derivative(n, var) * dg - n * ddg, d * dg);
}

Rational evaluate(const RationalFunction& f, std::span<const Rational> point) {
    const Rational den = evaluate(f.denominator(), point);
    if (den.is_zero()) throw MathError("pole: denominator vanishes at the evaluation point");
    return evaluate(f.numerator(), point) / den;
}

namespace {

RationalFunction compose_polynomial(const Polynomial& p, std::span<const RationalFunction> images) {
    // Fast path when every image is a polynomial.
    bool all_poly = true;
    for (const auto& img : images) all_poly = all_poly && img.is_polynomial();
    if (all_poly) {
        std::vector<Polynomial> polys;
        polys.reserve(images.size());
        for (const auto& img : images)
            polys.push_back(img.numerator() * (Rational(1) / img.denominator().constant_value()));
        return RationalFunction(compose(p, polys));
    }

    std::vector<std::vector<RationalFunction>> powers(images.size());
    auto power = [&](std::size_t var, unsigned e) -> const RationalFunction& {
        auto& table = powers[var];
        if (table.empty()) table.push_back(RationalFunction(1));
        while (table.size() <= e) table.push_back(table.back() * images[var]);
        return table[e];
    };
    RationalFunction sum;
    for (const auto& t : p.terms()) {
        Monomial kept;
        RationalFunction factor(t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i] == 0) continue;
            if (i < images.size()) {
                factor *= power(i, t.monomial[i]);
            } else {
                kept.resize(i + 1, 0);
                kept[i] = t.monomial[i];
            }
        }
        if (!kept.empty()) factor *= RationalFunction(Polynomial::term(std::move(kept), Rational(1)));
        sum += factor;
    }
    return sum;
}

}  // namespace

RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> images) {
    const RationalFunction num = compose_polynomial(f.numerator(), images);
    if (f.is_polynomial()) return num * RationalFunction(Rational(1) / f.denominator().constant_value());
    const RationalFunction den = compose_polynomial(f.denominator(), images);
    if (den.is_zero()) throw MathError("composition makes the denominator identically zero");
    return num / den;
}

RationalFunction substitute(const RationalFunction& f, const std::map<std::size_t, RationalFunction>& bindings) {
    std::size_t bound = f.symbol_bound();
    std::vector<RationalFunction> images;
    images.reserve(bound);
    for (std::size_t i = 0; i < bound; ++i) {
        auto it = bindings.find(i);
        images.push_back(it == bindings.end() ? RationalFunction::variable(i) : it->second);
    }
    return compose(f, images);
}

RationalFunction conjugate(const RationalFunction& f, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    std::size_t bound = f.symbol_bound();
    for (const auto& [i, j] : pairs) bound = std::max({bound, i + 1, j + 1});
    std::vector<RationalFunction> images;
    for (std::size_t i = 0; i < bound; ++i) images.push_back(RationalFunction::variable(i));
    for (const auto& [i, j] : pairs) std::swap(images[i], images[j]);
    return compose(f, images);
}

std::string to_string(const RationalFunction& f, std::span<const std::string> names) {
    if (f.is_polynomial()) {
        const Rational c = f.denominator().constant_value();
        return to_string(c == 1 ? f.numerator() : f.numerator() * (Rational(1) / c), names);
    }
    auto wrap = [&](const Polynomial& p) {
        const std::string s = to_string(p, names);
        const bool single = p.is_monomial() && p.leading_coeff() == 1;
        return single ? s : "(" + s + ")";
    };
    return wrap(f.numerator()) + "/" + wrap(f.denominator());
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) {
    return os << to_string(f, std::span<const std::string>{});
}

}  // namespace poisson
