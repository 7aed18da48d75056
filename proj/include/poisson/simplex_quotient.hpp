#pragma once

#include "poisson/group_action.hpp"
#include "poisson/poisson_structure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace poisson {

/// Skew (n+1)×(n+1) matrix A = (a_ij), either numeric or with formal
/// parameters a_ij (i < j). Entries are stored over the parameter symbols
/// only: variable(p) is parameter p.
class SkewParamMatrix {
public:
    /// Throws InputError unless A is square, at least 2×2, skew with zero diagonal.
    static SkewParamMatrix numeric(const RationalMatrix& A);
    /// Parameters a01, a02, ..., one per i < j (a{i}_{j} once n ≥ 10).
    static SkewParamMatrix symbolic(std::size_t n);

    std::size_t n() const { return static_cast<std::size_t>(entries_.rows()) - 1; }
    bool is_symbolic() const { return !parameters_.empty(); }
    const std::vector<std::string>& parameters() const { return parameters_; }
    /// a_ij with parameter p relocated to symbol `offset + p`.
    RationalFunction entry(std::size_t i, std::size_t j, std::size_t offset) const;
    const RFMatrix& entries() const { return entries_; }

private:
    SkewParamMatrix(RFMatrix entries, std::vector<std::string> parameters)
        : entries_(std::move(entries)), parameters_(std::move(parameters)) {}
    RFMatrix entries_;
    std::vector<std::string> parameters_;
};

/// Seeded random rational skew matrix with nonzero entries above the diagonal.
RationalMatrix random_skew_matrix(std::size_t n, std::uint64_t seed);

/// Chart z0..zn, zb0..zbn followed by A's parameters.
Chart cpn_chart(const SkewParamMatrix& A);
/// Chart mu0..mun followed by A's parameters.
Chart simplex_chart(const SkewParamMatrix& A);

/// {z_i, z_j} = a_ij z_i z_j, every bracket involving a zb is zero.
PoissonStructure cpn_bracket(const SkewParamMatrix& A);
/// Same, but also {zb_i, zb_j} = a_ij zb_i zb_j.
PoissonStructure cpn_bracket_conjugate_symmetric(const SkewParamMatrix& A);

/// (z_0, ..., z_n) ↦ (z_0, e^{iθ_1} z_1, ..., e^{iθ_n} z_n) on cpn_chart(A).
TorusActionSpec cpn_torus_action(const SkewParamMatrix& A);

/// μ_i = z_i zb_i / Σ_l z_l zb_l on cpn_chart(A).
std::vector<RationalFunction> moment_components(const SkewParamMatrix& A);

/// (a_ij − Σ_l (a_il + a_lj) μ_l) μ_i μ_j on simplex_chart(A).
RationalFunction simplex_formula(const SkewParamMatrix& A, std::size_t i, std::size_t j);

struct PairCheck {
    std::size_t i, j;
    RationalFunction direct;    ///< {μ_i, μ_j} computed on the cpn chart
    RationalFunction composed;  ///< simplex_formula(i, j) composed with μ
    bool pass;
};

struct SimplexDerivation {
    RFMatrix mu_brackets;  ///< simplex_formula entries, on simplex_chart(A)
    std::vector<PairCheck> checks;
    bool pass = true;
};

/// Computes every {μ_i, μ_j} (i < j) from cpn_bracket(A) and compares it with
/// the simplex formula composed with μ. Throws CertificationError with the
/// residual when some pair differs.
SimplexDerivation derive_simplex_bracket(const SkewParamMatrix& A);

/// The simplex formula as a structure on simplex_chart(A), Jacobi-verified
/// (check is_verified()).
PoissonStructure simplex_bracket(const SkewParamMatrix& A);

struct DivisibilityCheck {
    char condition;         ///< 'a': μ_l | {μ_i, μ_l};  'b': (1 − Σμ) | {μ_i, Σμ}
    std::size_t i, l;       ///< l unused for 'b'
    Polynomial bracket;
    bool pass;
};

struct StratificationCertificate {
    bool pass = true;
    std::vector<DivisibilityCheck> checks;  ///< (n+1)² of kind a, then n+1 of kind b
};

/// Throws InputError when S has non-polynomial entries.
StratificationCertificate check_face_stratification(const PoissonStructure& S);
StratificationCertificate check_face_stratification(const SkewParamMatrix& A);

struct FaceDescriptor {
    std::vector<std::size_t> vanishing_set;  ///< indices l with μ_l = 0, increasing
    std::size_t dimension;                   ///< n − |vanishing_set|
};

/// All 2^{n+1} − 1 faces of the n-simplex, by increasing dimension, and
/// lexicographically within one dimension.
std::vector<FaceDescriptor> enumerate_faces(std::size_t n);

/// The bracket restricted to {μ_l = 0, l in the vanishing set}, on the
/// remaining μ coordinates. Zero for a vertex.
PoissonStructure face_bracket(const PoissonStructure& S, const FaceDescriptor& face);

/// Compares the conjugate-symmetric convention against the simplex formula,
/// pair by pair. `factor` is set when every pair with a nonzero composed
/// formula has the same constant ratio and no pair is inconsistent.
struct ConventionComparison {
    std::vector<std::optional<RationalFunction>> ratios;  ///< per i < j; nullopt when the formula composes to 0
    std::optional<Rational> factor;
    bool consistent = true;
};

ConventionComparison compare_conjugate_convention(const SkewParamMatrix& A);

}  // namespace poisson
