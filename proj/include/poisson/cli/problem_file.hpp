#pragma once

#include "poisson/errors.hpp"
#include "poisson/group_action.hpp"
#include "poisson/poisson_structure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace poisson::cli {

/// Problem file error with a 1-based line and column.
class FileError : public InputError {
public:
    FileError(const std::string& what, std::size_t line, std::size_t column)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct TaskParams {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> points;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> pairs;
    std::optional<std::size_t> n;
    std::optional<RationalMatrix> A;
    bool symbolic = false;
};

struct ProblemFile {
    std::optional<PoissonStructure> structure;  ///< present iff there is a [chart]; zero without [bracket]
    std::optional<ActionSpec> action;           ///< from [action] or [torus]
    std::optional<RationalMatrix> submanifold;  ///< columns span it
    TaskParams params;
};

/// Sections: [chart], [bracket], [action], [torus], [submanifold], [params].
/// See docs/file-format.md. Throws FileError.
ProblemFile parse_problem(std::string_view text);

/// [chart] and [bracket] sections describing P; parse_problem reads it back
/// to an equal structure.
std::string format_structure(const PoissonStructure& P);

}  // namespace poisson::cli
