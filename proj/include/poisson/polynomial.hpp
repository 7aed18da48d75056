#pragma once

#include "poisson/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace poisson {

/// Exponent vector indexed by symbol ordinal. Trailing zeros are never
/// stored, so a monomial does not depend on how many symbols the ring has.
using Monomial = boost::container::small_vector<std::uint16_t, 8>;

unsigned total_degree(const Monomial& m);
/// Graded lexicographic order; symbol 0 is the most significant.
int grlex_compare(const Monomial& a, const Monomial& b);
Monomial monomial_product(const Monomial& a, const Monomial& b);
/// a / b when b divides a.
std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b);
/// Componentwise minimum.
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
inline std::uint16_t exponent_of(const Monomial& m, std::size_t var) {
    return var < m.size() ? m[var] : std::uint16_t{0};
}

struct Term {
    Monomial monomial;
    Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept strictly descending in grlex order with no zero coefficients, so
/// structural equality is mathematical equality.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant);
    Polynomial(long constant) : Polynomial(Rational(constant)) {}

    static Polynomial variable(std::size_t index);
    static Polynomial term(Monomial monomial, const Rational& coeff);
    /// Accepts terms in any order, with duplicates and zeros.
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.empty()); }
    bool is_monomial() const { return terms_.size() == 1; }
    /// Value of a constant polynomial; 0 for the zero polynomial.
    Rational constant_value() const;

    const Term& leading_term() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coeff; }

    unsigned degree() const;
    unsigned degree(std::size_t var) const;
    /// One past the largest symbol index that occurs.
    std::size_t symbol_bound() const;
    bool contains(std::size_t var) const { return degree(var) > 0; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& base, unsigned exponent);
Polynomial derivative(const Polynomial& p, std::size_t var);
/// `point` supplies a value for every symbol index the polynomial uses.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
/// Replace symbol k by images[k]; symbols beyond images.size() stay as they are.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images);

/// Multivariate division by a single divisor in grlex order: (quotient, remainder).
std::pair<Polynomial, Polynomial> divide(const Polynomial& dividend, const Polynomial& divisor);
/// Quotient when divisor | dividend exactly, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor);
/// True iff `divisor` divides `dividend` in Q[x]. Throws MathError for a zero divisor.
bool divides(const Polynomial& divisor, const Polynomial& dividend);

/// Greatest common divisor, normalized monic in grlex (gcd(0,0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Divide by the leading coefficient; zero stays zero.
Polynomial make_monic(const Polynomial& p);

/// Renders with the given symbol names; `x0, x1, ...` are used for missing names.
std::string to_string(const Polynomial& p, std::span<const std::string> names);

}  // namespace poisson
