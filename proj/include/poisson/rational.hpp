#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace poisson {

/// Exact arbitrary-precision rational. Expression templates are off so that
/// `auto` and Eigen kernels always see plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

/// Parses `int` or `int/uint` (optional leading sign). Throws InputError.
Rational parse_rational(std::string_view text);

/// `p` or `p/q` in lowest terms.
std::string to_string(const Rational& value);

/// Rows separated by ';', entries by whitespace: "1 0 ; 0 -1/2".
RationalMatrix parse_matrix(std::string_view text);
std::string format_matrix(const RationalMatrix& m);

}  // namespace poisson
