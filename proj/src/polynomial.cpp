#include "poisson/polynomial.hpp"

#include "poisson/errors.hpp"

#include <algorithm>
#include <sstream>

namespace poisson {

// ---------------------------------------------------------------------------
// Monomials

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ea = exponent_of(a, i);
        const auto eb = exponent_of(b, i);
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = static_cast<std::uint16_t>(out[i] + b[i]);
    return out;
}

std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b) {
    if (b.size() > a.size()) return std::nullopt;
    Monomial out(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] > a[i]) return std::nullopt;
        out[i] = static_cast<std::uint16_t>(a[i] - b[i]);
    }
    trim(out);
    return out;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial out(std::min(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(a[i], b[i]);
    trim(out);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial basics

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(std::size_t index) {
    Monomial m(index + 1, 0);
    m[index] = 1;
    return term(std::move(m), Rational(1));
}

Polynomial Polynomial::term(Monomial monomial, const Rational& coeff) {
    Polynomial p;
    trim(monomial);
    if (!coeff.is_zero()) p.terms_.push_back({std::move(monomial), coeff});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    for (auto& t : terms) trim(t.monomial);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.monomial, b.monomial) > 0; });
    Polynomial p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    const auto& last = terms_.back();
    return last.monomial.empty() ? last.coeff : Rational(0);
}

unsigned Polynomial::degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.front().monomial);
}

unsigned Polynomial::degree(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, exponent_of(t.monomial, var));
    return d;
}

std::size_t Polynomial::symbol_bound() const {
    std::size_t n = 0;
    for (const auto& t : terms_) n = std::max(n, t.monomial.size());
    return n;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

namespace {

// Merge two descending term lists, b scaled by `sign`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = grlex_compare(a[i].monomial, b[j].monomial);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].monomial, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
            ++j;
        } else {
            Rational sum = sign > 0 ? a[i].coeff + b[j].coeff : a[i].coeff - b[j].coeff;
            if (!sum.is_zero()) out.push_back({a[i].monomial, std::move(sum)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].monomial, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
    return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.is_zero()) return *this;
    terms_ = merge_terms(terms_, other.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.is_zero()) return *this;
    terms_ = merge_terms(terms_, other.terms_, -1);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b * a.leading_coeff();
    if (b.is_constant()) return a * b.leading_coeff();
    std::vector<Term> prods;
    prods.reserve(a.size() * b.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            prods.push_back({monomial_product(ta.monomial, tb.monomial), ta.coeff * tb.coeff});
    return Polynomial::from_terms(std::move(prods));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= scalar;
    return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
    Polynomial result(Rational(1));
    Polynomial acc = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= acc;
        exponent >>= 1u;
        if (exponent > 0) acc *= acc;
    }
    return result;
}

Polynomial derivative(const Polynomial& p, std::size_t var) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        const auto e = exponent_of(t.monomial, var);
        if (e == 0) continue;
        Monomial m = t.monomial;
        m[var] = static_cast<std::uint16_t>(e - 1);
        out.push_back({std::move(m), t.coeff * e});
    }
    return Polynomial::from_terms(std::move(out));
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (p.symbol_bound() > point.size()) throw MathError("evaluation point has too few coordinates");
    std::vector<std::vector<Rational>> powers(point.size());
    auto power = [&](std::size_t var, unsigned e) -> const Rational& {
        auto& table = powers[var];
        if (table.empty()) table.push_back(Rational(1));
        while (table.size() <= e) table.push_back(table.back() * point[var]);
        return table[e];
    };
    Rational sum(0);
    for (const auto& t : p.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < t.monomial.size(); ++i)
            if (t.monomial[i] != 0) v *= power(i, t.monomial[i]);
        sum += v;
    }
    return sum;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images) {
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t var, unsigned e) -> const Polynomial& {
        auto& table = powers[var];
        if (table.empty()) table.push_back(Polynomial(Rational(1)));
        while (table.size() <= e) table.push_back(table.back() * images[var]);
        return table[e];
    };
    Polynomial sum;
    for (const auto& t : p.terms()) {
        Monomial kept;
        Polynomial factor(t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i] == 0) continue;
            if (i < images.size()) {
                factor *= power(i, t.monomial[i]);
            } else {
                kept.resize(i + 1, 0);
                kept[i] = t.monomial[i];
            }
        }
        if (!kept.empty()) factor *= Polynomial::term(std::move(kept), Rational(1));
        sum += factor;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Division

namespace {

// Scale by coeff and shift by monomial.
Polynomial shifted(const Polynomial& p, const Monomial& m, const Rational& coeff) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({monomial_product(t.monomial, m), t.coeff * coeff});
    return Polynomial::from_terms(std::move(out));
}

// Core division loop; stops at the first non-divisible leading term when
// `exact_only` is set.
bool divide_impl(const Polynomial& dividend, const Polynomial& divisor, bool exact_only,
                 Polynomial& quotient, Polynomial& remainder) {
    if (divisor.is_zero()) throw MathError("division by the zero polynomial");
    std::vector<Term> q_terms;
    std::vector<Term> r_terms;
    Polynomial p = dividend;
    const Term& lead = divisor.leading_term();
    while (!p.is_zero()) {
        const Term& lt = p.leading_term();
        if (auto m = monomial_quotient(lt.monomial, lead.monomial)) {
            Rational c = lt.coeff / lead.coeff;
            p -= shifted(divisor, *m, c);
            q_terms.push_back({std::move(*m), std::move(c)});
        } else {
            if (exact_only) return false;
            r_terms.push_back(lt);
            p -= Polynomial::term(lt.monomial, lt.coeff);
        }
    }
    quotient = Polynomial::from_terms(std::move(q_terms));
    remainder = Polynomial::from_terms(std::move(r_terms));
    return true;
}

}  // namespace

std::pair<Polynomial, Polynomial> divide(const Polynomial& dividend, const Polynomial& divisor) {
    Polynomial q, r;
    divide_impl(dividend, divisor, false, q, r);
    return {std::move(q), std::move(r)};
}

std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
    if (divisor.is_zero()) throw MathError("division by the zero polynomial");
    if (dividend.is_zero()) return Polynomial{};
    if (divisor.is_constant()) return dividend * (Rational(1) / divisor.leading_coeff());
    // Cheap rejections: degree in any symbol must not exceed the dividend's.
    const std::size_t bound = divisor.symbol_bound();
    for (std::size_t v = 0; v < bound; ++v)
        if (divisor.degree(v) > dividend.degree(v)) return std::nullopt;
    Polynomial q, r;
    if (!divide_impl(dividend, divisor, true, q, r)) return std::nullopt;
    return q;
}

bool divides(const Polynomial& divisor, const Polynomial& dividend) {
    if (divisor.is_zero()) throw MathError("divisibility test by the zero polynomial");
    return divide_exact(dividend, divisor).has_value();
}

Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero() || p.leading_coeff() == 1) return p;
    return p * (Rational(1) / p.leading_coeff());
}

// ---------------------------------------------------------------------------
// GCD
//
// Recursive over symbols. Before running a subresultant remainder sequence we
// try to prove the gcd free of some symbol x by specializing every other
// symbol: if lc_x(a) survives the specialization and the univariate images
// are coprime, the gcd cannot involve x and we recurse on the x-contents.

namespace {

using UPoly = std::vector<Polynomial>;  // coefficient of x^k at index k

UPoly to_univariate(const Polynomial& p, std::size_t x) {
    UPoly out(p.degree(x) + 1);
    std::vector<std::vector<Term>> buckets(out.size());
    for (const auto& t : p.terms()) {
        const auto e = exponent_of(t.monomial, x);
        Monomial m = t.monomial;
        if (e) m[x] = 0;
        buckets[e].push_back({std::move(m), t.coeff});
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = Polynomial::from_terms(std::move(buckets[k]));
    return out;
}

Polynomial from_univariate(const UPoly& u, std::size_t x) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (const auto& t : u[k].terms()) {
            Monomial m = t.monomial;
            if (k) {
                if (m.size() <= x) m.resize(x + 1, 0);
                m[x] = static_cast<std::uint16_t>(k);
            }
            out.push_back({std::move(m), t.coeff});
        }
    }
    return Polynomial::from_terms(std::move(out));
}

void strip(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b);

Polynomial content(const UPoly& u) {
    Polynomial g;
    // Start from the smallest coefficient; it bounds the gcd fastest.
    std::vector<const Polynomial*> order;
    for (const auto& c : u)
        if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Polynomial* l, const Polynomial* r) { return l->size() < r->size(); });
    for (const Polynomial* c : order) {
        g = g.is_zero() ? *c : gcd_nonzero(g, *c);
        if (g.is_constant()) return Polynomial(Rational(1));
    }
    return g;
}

UPoly divide_coeffs(const UPoly& u, const Polynomial& d) {
    UPoly out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        auto q = divide_exact(u[k], d);
        if (!q) throw CertificationError("gcd: inexact coefficient division");
        out[k] = std::move(*q);
    }
    return out;
}

UPoly pseudo_remainder(UPoly r, const UPoly& g) {
    const std::size_t dg = g.size() - 1;
    const Polynomial& lcg = g.back();
    int e = static_cast<int>(r.size()) - static_cast<int>(dg);  // dF - dG + 1
    while (!r.empty() && r.size() - 1 >= dg) {
        const Polynomial t = r.back();
        const std::size_t s = r.size() - 1 - dg;
        for (auto& c : r) c *= lcg;
        for (std::size_t k = 0; k <= dg; ++k) r[k + s] -= t * g[k];
        strip(r);
        --e;
    }
    if (e > 0) {
        const Polynomial f = pow(lcg, static_cast<unsigned>(e));
        for (auto& c : r) c *= f;
    }
    return r;
}

// Univariate images over Q.
using QPoly = std::vector<Rational>;

void strip(QPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

QPoly specialize(const Polynomial& p, std::size_t x, std::span<const Rational> point) {
    const auto u = to_univariate(p, x);
    QPoly out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = evaluate(u[k], point);
    strip(out);
    return out;
}

std::size_t univariate_gcd_degree(QPoly a, QPoly b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            const Rational f = a.back() / b.back();
            const std::size_t s = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[k + s] -= f * b[k];
            a.pop_back();
            strip(a);
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b);

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
    if (a == b) return a;

    auto monomial_content = [](const Polynomial& p) {
        Monomial m = p.terms().front().monomial;
        for (const auto& t : p.terms()) m = monomial_gcd(m, t.monomial);
        return m;
    };
    auto strip_monomial = [](const Polynomial& p, const Monomial& m) {
        if (m.empty()) return p;
        std::vector<Term> out;
        for (const auto& t : p.terms()) out.push_back({*monomial_quotient(t.monomial, m), t.coeff});
        return Polynomial::from_terms(std::move(out));
    };
    const Monomial ma = monomial_content(a);
    const Monomial mb = monomial_content(b);
    const Monomial common = monomial_gcd(ma, mb);
    Polynomial g = gcd_core(strip_monomial(a, ma), strip_monomial(b, mb));
    if (!common.empty()) g *= Polynomial::term(common, Rational(1));
    return g;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));

    const std::size_t bound = std::max(a.symbol_bound(), b.symbol_bound());
    std::vector<std::size_t> shared;
    for (std::size_t v = 0; v < bound; ++v) {
        const bool in_a = a.contains(v);
        const bool in_b = b.contains(v);
        if (in_a && !in_b) return gcd_nonzero(content(to_univariate(a, v)), b);
        if (in_b && !in_a) return gcd_nonzero(a, content(to_univariate(b, v)));
        if (in_a) shared.push_back(v);
    }

    std::sort(shared.begin(), shared.end(), [&](std::size_t l, std::size_t r) {
        return std::max(a.degree(l), b.degree(l)) < std::max(a.degree(r), b.degree(r));
    });

    std::vector<Rational> point(bound);
    for (std::size_t v = 0; v < bound; ++v) point[v] = Rational(static_cast<long>(3 + 2 * v + (v * v) % 7));
    for (std::size_t x : shared) {
        const QPoly ua = specialize(a, x, point);
        const QPoly ub = specialize(b, x, point);
        if (ua.size() != a.degree(x) + 1 || ub.size() != b.degree(x) + 1) continue;
        if (univariate_gcd_degree(ua, ub) == 0)
            return gcd_nonzero(content(to_univariate(a, x)), content(to_univariate(b, x)));
    }

    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    if (divides(small, large)) return small;

    const std::size_t x = shared.front();
    UPoly ua = to_univariate(a, x);
    UPoly ub = to_univariate(b, x);
    const Polynomial ca = content(ua);
    const Polynomial cb = content(ub);
    const Polynomial c = gcd_nonzero(ca, cb);
    ua = divide_coeffs(ua, ca);
    ub = divide_coeffs(ub, cb);
    if (ua.size() < ub.size()) std::swap(ua, ub);

    // Subresultant remainder sequence.
    Polynomial g(Rational(1));
    Polynomial h(Rational(1));
    while (true) {
        const std::size_t d = ua.size() - ub.size();
        UPoly r = pseudo_remainder(ua, ub);
        if (r.empty()) break;
        if (r.size() == 1) return c;
        ua = std::move(ub);
        Polynomial scale = g * pow(h, static_cast<unsigned>(d));
        ub = divide_coeffs(r, scale);
        g = ua.back();
        if (d == 1) {
            h = g;
        } else if (d > 1) {
            auto q = divide_exact(pow(g, static_cast<unsigned>(d)), pow(h, static_cast<unsigned>(d - 1)));
            if (!q) throw CertificationError("gcd: inexact subresultant update");
            h = std::move(*q);
        }
    }
    const Polynomial cg = content(ub);
    return c * from_univariate(divide_coeffs(ub, cg), x);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    return make_monic(gcd_nonzero(a, b));
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        const bool negative = t.coeff < 0;
        const Rational mag = negative ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || t.monomial.empty()) {
            os << to_string(mag);
            wrote = true;
        }
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i] == 0) continue;
            if (wrote) os << '*';
            if (i < names.size()) os << names[i];
            else os << 'x' << i;
            if (t.monomial[i] > 1) os << '^' << t.monomial[i];
            wrote = true;
        }
    }
    return os.str();
}

}  // namespace poisson
