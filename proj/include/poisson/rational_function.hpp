#pragma once

#include "poisson/polynomial.hpp"
#include "poisson/rational.hpp"

#include <Eigen/Core>

#include <concepts>
#include <map>
#include <ostream>
#include <span>
#include <string>

namespace poisson {

/// Quotient of polynomials kept in canonical form: numerator and denominator
/// coprime, denominator monic in grlex, zero stored as 0/1. Canonical form
/// makes `==` a structural comparison.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}
    template <std::integral I>
    RationalFunction(I c) : RationalFunction(Rational(static_cast<long>(c))) {}
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(Rational(1)) {}
    /// Throws MathError when the denominator is the zero polynomial.
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction variable(std::size_t index) { return Polynomial::variable(index); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    std::size_t symbol_bound() const { return std::max(num_.symbol_bound(), den_.symbol_bound()); }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    /// Throws MathError when b is zero.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct Canonical {};
    RationalFunction(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    static RationalFunction monic(Polynomial num, Polynomial den);

    Polynomial num_;
    Polynomial den_;
};

RationalFunction pow(const RationalFunction& base, int exponent);
RationalFunction derivative(const RationalFunction& f, std::size_t var);
/// Exact value; throws MathError("pole") when the denominator vanishes.
Rational evaluate(const RationalFunction& f, std::span<const Rational> point);
/// Replace symbol k by images[k]; symbols past images.size() are kept.
/// Throws MathError when the composed denominator is identically zero.
RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> images);
/// Same-ring substitution of selected symbols.
RationalFunction substitute(const RationalFunction& f, const std::map<std::size_t, RationalFunction>& bindings);
/// Swap each symbol pair (i, j) in `pairs`; models complex conjugation on
/// (z, z̄) coordinates with real coefficients.
RationalFunction conjugate(const RationalFunction& f, std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// `p`, or `(p)/(q)` with parentheses dropped around single factors.
std::string to_string(const RationalFunction& f, std::span<const std::string> names);
std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

using RFMatrix = MatrixX<RationalFunction>;
using RFVector = VectorX<RationalFunction>;

}  // namespace poisson

namespace Eigen {

template <>
struct NumTraits<poisson::RationalFunction> {
    using Real = poisson::RationalFunction;
    using NonInteger = poisson::RationalFunction;
    using Nested = poisson::RationalFunction;
    using Literal = poisson::RationalFunction;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 200,
        MulCost = 400
    };
    static int digits10() { return 0; }
};

}  // namespace Eigen
