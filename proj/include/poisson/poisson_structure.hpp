#pragma once

#include "poisson/rational.hpp"
#include "poisson/rational_function.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace poisson {

/// Ordered coordinates followed by formal parameters (e.g. symbolic matrix
/// entries). Symbol index k < dimension() is coordinate k; the rest are
/// parameters, which brackets and derivatives treat as constants.
class Chart {
public:
    Chart() = default;
    /// Throws InputError on an empty coordinate list, duplicate or malformed names.
    explicit Chart(std::vector<std::string> coordinates, std::vector<std::string> parameters = {});

    std::size_t dimension() const { return dimension_; }
    std::size_t parameter_count() const { return symbols_.size() - dimension_; }
    std::size_t symbol_count() const { return symbols_.size(); }

    const std::vector<std::string>& symbols() const { return symbols_; }
    std::span<const std::string> coordinates() const { return {symbols_.data(), dimension_}; }
    std::span<const std::string> parameters() const { return std::span<const std::string>(symbols_).subspan(dimension_); }

    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Throws InputError if `name` is not a coordinate.
    std::size_t coordinate_index(std::string_view name) const;

    RationalFunction coordinate(std::size_t i) const { return RationalFunction::variable(i); }
    RationalFunction parse(std::string_view text) const;
    std::string format(const RationalFunction& f) const { return to_string(f, symbols_); }
    /// True when f only uses symbols of this chart.
    bool owns(const RationalFunction& f) const { return f.symbol_bound() <= symbols_.size(); }

    friend bool operator==(const Chart&, const Chart&) = default;

private:
    std::vector<std::string> symbols_;
    std::size_t dimension_ = 0;
};

struct VectorFieldExpr {
    Chart chart;
    RFVector components;
};

struct CovectorExpr {
    Chart chart;
    RFVector components;
};

/// Bivector π on a chart, stored as the skew matrix π^{ij}. The bracket is
/// {f,g} = Σ π^{ij} ∂_i f ∂_j g and the sharp map is (#ξ)^i = Σ_j π^{ij} ξ_j,
/// so {q,p} = 1 exactly when π^{qp} = +1.
class PoissonStructure {
public:
    /// Throws InputError unless pi is dimension×dimension, exactly skew, and
    /// only uses chart symbols.
    PoissonStructure(Chart chart, RFMatrix pi);

    static PoissonStructure zero(Chart chart);
    /// Entries given for i<j (or j<i); the mirror is implied. Throws InputError
    /// on diagonal entries or conflicting duplicates.
    static PoissonStructure from_entries(Chart chart,
                                         const std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>>& entries);

    const Chart& chart() const { return chart_; }
    const RFMatrix& matrix() const { return pi_; }
    const RationalFunction& entry(std::size_t i, std::size_t j) const {
        return pi_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    std::size_t dimension() const { return chart_.dimension(); }

    /// Set only by verify(), after an exact Jacobi check.
    bool is_verified() const { return verified_; }
    /// Copy carrying the verified flag iff every Jacobi defect vanishes.
    PoissonStructure verify() const;

    /// Exact entrywise comparison; the verified flag is ignored.
    friend bool operator==(const PoissonStructure& a, const PoissonStructure& b) {
        return a.chart_ == b.chart_ && a.pi_ == b.pi_;
    }

private:
    Chart chart_;
    RFMatrix pi_;
    bool verified_ = false;
};

/// Σ_{i,j} π^{ij} ∂_i f ∂_j g. Throws InputError if f or g leave the chart.
RationalFunction bracket(const PoissonStructure& P, const RationalFunction& f, const RationalFunction& g);

CovectorExpr differential(const Chart& chart, const RationalFunction& f);
/// (#ξ)^i = Σ_j π^{ij} ξ_j. Throws InputError on chart mismatch.
VectorFieldExpr sharp(const PoissonStructure& P, const CovectorExpr& xi);
/// X_f = #(df). With the sharp convention above this gives X_f(g) = {g,f}.
VectorFieldExpr hamiltonian_vf(const PoissonStructure& P, const RationalFunction& f);
/// X(g) = Σ_i X^i ∂_i g.
RationalFunction apply(const VectorFieldExpr& X, const RationalFunction& g);

struct JacobiDefect {
    std::size_t i, j, k;
    RationalFunction value;
};

/// One entry per coordinate triple i<j<k:
/// Σ_l (π^{il} ∂_l π^{jk} + π^{jl} ∂_l π^{ki} + π^{kl} ∂_l π^{ij}).
std::vector<JacobiDefect> jacobi_defect(const PoissonStructure& P);
/// Only the triples whose defect is not identically zero.
std::vector<JacobiDefect> jacobi_failures(const PoissonStructure& P);

/// Push π forward along x ↦ T x: π'(x) = T π(T⁻¹ x) Tᵀ. Parameters are
/// untouched. Throws MathError for singular T, InputError on a size mismatch.
PoissonStructure pushforward_linear(const PoissonStructure& P, const RationalMatrix& T);

/// Rank of π at a point (coordinates followed by parameter values). Throws
/// MathError at a pole.
Eigen::Index rank_at(const PoissonStructure& P, std::span<const Rational> point);

/// Nonzero entries with i<j, as used by the bracket table file format.
std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> upper_entries(const PoissonStructure& P);

}  // namespace poisson
