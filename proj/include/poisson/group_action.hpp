#pragma once

#include "poisson/poisson_structure.hpp"
#include "poisson/rational.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace poisson {

/// Finite group generated by invertible matrices acting linearly on the
/// coordinates, x ↦ g x. Parameters are fixed.
struct FiniteActionSpec {
    Chart chart;
    std::vector<RationalMatrix> generators;
    std::size_t max_order = 1024;
};

/// Torus acting by phases: factor k multiplies the z of pair p by
/// e^{i w(k,p) θ_k} and its partner z̄ by the inverse phase. Coordinates that
/// belong to no pair are fixed.
struct TorusActionSpec {
    Chart chart;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (z, z̄) coordinate indices
    MatrixX<long> weights;                                   ///< factors × pairs
};

using ActionSpec = std::variant<FiniteActionSpec, TorusActionSpec>;

/// Throws InputError on malformed specs (shape, singular generator, pair reuse).
void validate(const FiniteActionSpec& spec);
void validate(const TorusActionSpec& spec);
const Chart& chart_of(const ActionSpec& action);

/// Weight of every coordinate under every torus factor (factors × dimension).
MatrixX<long> coordinate_weights(const TorusActionSpec& spec);

/// Symmetric bilinear form on the tangent space. `conjugate_pairs` marks
/// (z, z̄) coordinate pairs; positivity is judged on the underlying real
/// vectors (v_z̄ = conj(v_z)).
struct InvariantMetric {
    Chart chart;
    RationalMatrix matrix;
    std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs;
};

bool is_positive_definite(const InvariantMetric& metric);
bool is_invariant(const InvariantMetric& metric, const ActionSpec& action);

/// Linear subspace of a chart: columns of `basis` span it, rows of
/// `equations` are the covectors that cut it out.
struct LinearSubmanifold {
    Chart chart;
    RationalMatrix basis;      ///< dimension × k
    RationalMatrix equations;  ///< (dimension − k) × dimension

    Eigen::Index dimension() const { return basis.cols(); }
    bool contains(std::span<const Rational> point) const;
};

/// Builds the subspace spanned by independent columns; equations come from
/// the left null space. Throws InputError for dependent columns.
LinearSubmanifold make_subspace(const Chart& chart, const RationalMatrix& basis);

/// All group elements, identity first, in breadth-first order over the
/// generators. Throws MathError when more than max_order elements appear.
std::vector<RationalMatrix> enumerate_group(const FiniteActionSpec& spec);

struct ActionCertificate {
    bool pass = true;
    std::size_t checks = 0;
    std::vector<std::string> witnesses;  ///< one line per failing element or entry
};

/// Finite case: pushforward by every element reproduces P exactly. Torus
/// case: every π^{ij} is weight-homogeneous of weight w_i + w_j.
ActionCertificate is_poisson_action(const PoissonStructure& P, const ActionSpec& action);

/// Joint fixed space: ∩ ker(g − I) over generators, or the weight-zero
/// coordinates of a torus.
LinearSubmanifold fixed_subspace(const ActionSpec& action);

/// (1/|G|) Σ_g gᵀ seed g. Throws InputError for a seed that is not positive
/// definite.
InvariantMetric average_metric(const FiniteActionSpec& spec, const RationalMatrix& seed);
/// Identity on unpaired coordinates, dz·dz̄ on each pair. Invariant for any weights.
InvariantMetric torus_metric(const TorusActionSpec& spec);
/// average_metric with the identity seed, or torus_metric.
InvariantMetric invariant_metric(const ActionSpec& action);

/// {v : ⟨v, w⟩ = 0 for all w ∈ N}. Throws MathError when N ⊕ E does not span
/// the chart.
LinearSubmanifold orthogonal_complement(const LinearSubmanifold& N, const InvariantMetric& metric);

/// Group average of a function (Reynolds operator). Finite: mean of f∘g.
/// Torus: the weight-zero part; f must be a polynomial.
RationalFunction group_average(const RationalFunction& f, const ActionSpec& action);

/// Pull f back along x ↦ M x on the coordinates.
RationalFunction compose_linear(const RationalFunction& f, const RationalMatrix& M, std::size_t symbol_count);

}  // namespace poisson
