#pragma once

#include "poisson/group_action.hpp"
#include "poisson/poisson_structure.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poisson {

/// A submanifold N with a complement E, T_N M = TN ⊕ E, and the adapted
/// frame F = [basis(N) | basis(E)]. Adapted coordinates are y = F⁻¹ x; the
/// first dim N of them are the coordinates of `n_chart`.
struct SplitContext {
    PoissonStructure P;
    LinearSubmanifold N;
    LinearSubmanifold E;
    InvariantMetric metric;
    RationalMatrix frame;
    RationalMatrix frame_inverse;
    Chart n_chart;                       ///< N coordinates followed by P's parameters
    std::optional<ActionSpec> action;    ///< when N is a fixed-point set
};

/// E is the metric-orthogonal complement of N.
SplitContext make_split_context(const PoissonStructure& P, const LinearSubmanifold& N, const InvariantMetric& metric,
                                std::optional<ActionSpec> action = std::nullopt);

/// Pull an ambient function back to N (x = basis(N) y).
RationalFunction restrict_to_N(const SplitContext& ctx, const RationalFunction& f);
/// Extend an N function to the ambient chart along the projection with
/// kernel E: f̃(x) = f((F⁻¹ x)_N). Its differential lies in E⁰.
RationalFunction extend_from_N(const SplitContext& ctx, const RationalFunction& f);

/// dim(TN ∩ #(TN⁰)) at each point; 0 means the Poisson-Dirac condition
/// holds there. Points list coordinates then parameter values. Throws
/// InputError for a point off N and MathError at a pole.
std::vector<Eigen::Index> check_eq1(const PoissonStructure& P, const LinearSubmanifold& N,
                                    const std::vector<std::vector<Rational>>& points);

struct SharpCheck {
    RationalVector covector;                      ///< ξ ∈ E⁰, as a row of F⁻¹
    std::vector<RationalFunction> e_components;   ///< E-part of #ξ on N, in N coordinates
    bool pass = true;
};

struct SharpCertificate {
    bool pass = true;
    std::vector<SharpCheck> checks;
};

/// #(E⁰) ⊂ TN, symbolically along N.
SharpCertificate check_sharp_E0(const SplitContext& ctx);

struct SplitBlocks {
    RFMatrix pi_N;       ///< k × k
    RFMatrix pi_E;       ///< (d−k) × (d−k)
    RFMatrix pi_mixed;   ///< k × (d−k)
    bool valid = true;   ///< pi_mixed ≡ 0 on N
};

/// F⁻¹ π F⁻ᵀ restricted to N, cut into blocks.
SplitBlocks split_bivector(const SplitContext& ctx);

/// π_N as a Poisson structure on n_chart, Jacobi re-verified. Throws
/// MathError when the split is invalid or N is a point.
PoissonStructure induced_structure(const SplitContext& ctx);

/// {f̃, g̃}|_N using extend_from_N, checked against the induced bracket.
/// Throws CertificationError on disagreement.
RationalFunction induced_bracket_via_extensions(const SplitContext& ctx, const PoissonStructure& induced,
                                                const RationalFunction& f, const RationalFunction& g);
RationalFunction induced_bracket_via_extensions(const SplitContext& ctx, const RationalFunction& f,
                                                const RationalFunction& g);

struct IndependenceCertificate {
    bool pass = true;
    std::size_t trials = 0;
    std::size_t nontrivial = 0;               ///< trials with a nonzero perturbation
    std::vector<std::string> counterexamples;
};

/// Perturbs the canonical extensions by functions vanishing on N whose
/// differential also vanishes along N (group-averaged multiples of the
/// defining equations, or quadratic in them without an action) and checks
/// that the restricted bracket does not move.
IndependenceCertificate extension_independence_test(const SplitContext& ctx, const RationalFunction& f,
                                                    const RationalFunction& g, std::size_t trials,
                                                    std::uint64_t seed);

/// Some group element does not act by Poisson maps, so there is nothing to
/// reduce.
class ActionNotPoisson : public std::runtime_error {
public:
    explicit ActionNotPoisson(ActionCertificate cert)
        : std::runtime_error("the action is not by Poisson maps"), certificate(std::move(cert)) {}
    ActionCertificate certificate;
};

struct ReductionOptions {
    std::size_t points = 100;          ///< sample points for the Poisson-Dirac rank condition
    std::size_t trials = 20;           ///< perturbed-extension trials
    std::size_t function_pairs = 20;   ///< random pairs for split vs extension agreement
    std::uint64_t seed = 1;
    std::optional<RationalMatrix> seed_metric;  ///< finite actions only
};

struct ReductionReport {
    ActionCertificate action;
    InvariantMetric metric;
    LinearSubmanifold fixed_set;
    LinearSubmanifold complement;
    Chart fixed_chart;                              ///< empty when the fixed set is a point
    std::optional<PoissonStructure> induced;        ///< absent when the fixed set is a point
    bool metric_pass = false;
    SharpCertificate sharp;
    bool split_valid = false;
    std::vector<JacobiDefect> jacobi_failures;
    std::vector<Eigen::Index> eq1_dimensions;
    std::size_t agreement_pairs = 0;
    IndependenceCertificate independence;

    bool eq1_pass() const;
    bool pass() const;
};

/// Invariant metric → fixed set N → E = N^⊥ → #(E⁰) ⊂ TN → split → induced
/// structure → Jacobi → rank condition samples → bracket agreement → extension
/// independence. Throws ActionNotPoisson before any of that if the action
/// check fails, and CertificationError if the two bracket constructions
/// disagree.
ReductionReport reduce_fixed_set(const PoissonStructure& P, const ActionSpec& action,
                                 const ReductionOptions& options = {});

/// Random points on N (coordinates then parameters) avoiding poles of π.
std::vector<std::vector<Rational>> sample_points(const PoissonStructure& P, const LinearSubmanifold& N,
                                                 std::size_t count, std::uint64_t seed);

}  // namespace poisson
