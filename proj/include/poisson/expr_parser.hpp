#pragma once

#include "poisson/rational_function.hpp"

#include <span>
#include <string>
#include <string_view>

namespace poisson {

/// Parses an expression over the given symbols into a normalized rational
/// function. Symbol k of `symbols` becomes variable index k.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' uint)?
///   base   := rational | ident | '(' expr ')'
///   rational := int | int '/' uint        (binds as one literal)
///
/// Throws ParseError (with column) on bad syntax or an unknown symbol, and
/// MathError on division by the zero polynomial.
RationalFunction parse_expr(std::string_view text, std::span<const std::string> symbols);

}  // namespace poisson
