#pragma once

#include "poisson/poisson_structure.hpp"
#include "poisson/random.hpp"

#include <string>
#include <vector>

namespace poisson::testing {

inline PoissonStructure symplectic_plane() {
    Chart c({"q", "p"});
    return PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}});
}

inline PoissonStructure symplectic_r4() {
    Chart c({"q1", "p1", "q2", "p2"});
    return PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}, {2, 3, RationalFunction(1)}});
}

inline PoissonStructure so3() {
    Chart c({"x", "y", "z"});
    return PoissonStructure::from_entries(c, {{0, 1, c.parse("z")}, {1, 2, c.parse("x")}, {2, 0, c.parse("y")}});
}

inline RationalMatrix diag(std::initializer_list<long> entries) {
    RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(entries.size()),
                                            static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (long e : entries) m(i, i) = e, ++i;
    return m;
}

/// Random polynomial over symbols [0, count) with a constant term so that
/// it is rarely zero.
inline RationalFunction random_polynomial(SeededRandom& rng, std::size_t count, unsigned degree = 3,
                                          std::size_t terms = 4) {
    return RationalFunction(rng.polynomial(0, count, degree, terms));
}

/// Random quotient with a denominator that has a nonzero constant term.
inline RationalFunction random_fraction(SeededRandom& rng, std::size_t count) {
    Polynomial den = rng.polynomial(0, count, 2, 2) + Polynomial(rng.nonzero_rational());
    while (den.is_zero()) den = rng.polynomial(0, count, 2, 2) + Polynomial(rng.nonzero_rational());
    return RationalFunction(rng.polynomial(0, count, 3, 3), den);
}

inline std::vector<Rational> random_point(SeededRandom& rng, std::size_t count) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < count; ++i) p.push_back(rng.rational(7, 5));
    return p;
}

/// Exact derivative of f at `point` along symbol `var`, computed from the
/// Taylor coefficients of t ↦ f(point + t e_var) without using `derivative`.
inline Rational derivative_oracle(const RationalFunction& f, std::size_t var, const std::vector<Rational>& point) {
    std::vector<Polynomial> line;
    for (std::size_t i = 0; i < point.size(); ++i)
        line.push_back(i == var ? Polynomial(point[i]) + Polynomial::variable(0) : Polynomial(point[i]));
    const Polynomial n = compose(f.numerator(), line);
    const Polynomial d = compose(f.denominator(), line);
    auto coefficient = [](const Polynomial& p, unsigned k) {
        for (const auto& t : p.terms())
            if (exponent_of(t.monomial, 0) == k) return t.coeff;
        return Rational(0);
    };
    const Rational n0 = coefficient(n, 0), n1 = coefficient(n, 1), d0 = coefficient(d, 0), d1 = coefficient(d, 1);
    return (n1 * d0 - n0 * d1) / (d0 * d0);
}

}  // namespace poisson::testing
