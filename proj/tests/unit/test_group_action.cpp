#include "poisson/errors.hpp"
#include "poisson/group_action.hpp"
#include "poisson/linalg.hpp"
#include "poisson/simplex_quotient.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace poisson;
using namespace poisson::testing;

namespace {

RationalMatrix M(std::string_view s) { return parse_matrix(s); }

FiniteActionSpec finite(const Chart& c, std::vector<RationalMatrix> gens) { return FiniteActionSpec{c, std::move(gens)}; }

// Random group generated by signed permutation matrices.
std::vector<RationalMatrix> random_signed_permutations(SeededRandom& rng, Eigen::Index d, int count) {
    std::vector<RationalMatrix> gens;
    for (int k = 0; k < count; ++k) {
        std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        RationalMatrix g = RationalMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) g(perm[static_cast<std::size_t>(i)], i) = rng.coin() ? 1 : -1;
        gens.push_back(g);
    }
    return gens;
}

}  // namespace

TEST(EnumerateGroup, Examples) {
    const Chart c4({"q1", "p1", "q2", "p2"});
    const auto z2 = enumerate_group(finite(c4, {diag({1, 1, -1, -1})}));
    ASSERT_EQ(z2.size(), 2u);
    EXPECT_EQ(z2[0], RationalMatrix::Identity(4, 4));

    const Chart c2({"x", "y"});
    EXPECT_EQ(enumerate_group(finite(c2, {M("0 -1 ; 1 0")})).size(), 4u);
    EXPECT_THROW(enumerate_group(finite(c2, {M("1 1 ; 0 1")})), MathError);
    EXPECT_EQ(enumerate_group(finite(c2, {})).size(), 1u);
}

TEST(EnumerateGroup, ClosedUnderProductsAndInverses) {
    SeededRandom rng(31);
    const Chart c({"a", "b", "c", "d"});
    for (int trial = 0; trial < 5; ++trial) {
        const auto elements = enumerate_group(finite(c, random_signed_permutations(rng, 4, 2)));
        auto member = [&](const RationalMatrix& m) { return std::find(elements.begin(), elements.end(), m) != elements.end(); };
        for (const auto& a : elements) {
            EXPECT_TRUE(member(linalg::inverse(a)));
            for (const auto& b : elements) EXPECT_TRUE(member(a * b));
        }
    }
}

TEST(PoissonAction, Examples) {
    const auto r4 = symplectic_r4();
    EXPECT_TRUE(is_poisson_action(r4, finite(r4.chart(), {diag({1, 1, -1, -1})})).pass);

    const auto plane = symplectic_plane();
    const auto anti = is_poisson_action(plane, finite(plane.chart(), {diag({1, -1})}));
    EXPECT_FALSE(anti.pass);
    EXPECT_FALSE(anti.witnesses.empty());

    for (std::size_t n = 1; n <= 3; ++n) {
        const auto A = SkewParamMatrix::numeric(random_skew_matrix(n, 50 + n));
        EXPECT_TRUE(is_poisson_action(cpn_bracket(A), cpn_torus_action(A)).pass);
    }
    const auto A = SkewParamMatrix::symbolic(2);
    EXPECT_TRUE(is_poisson_action(cpn_bracket(A), cpn_torus_action(A)).pass);
}

TEST(PoissonAction, TorusWeightMismatchIsRejected) {
    Chart c({"z", "zb", "w"});
    const auto P = PoissonStructure::from_entries(c, {{0, 2, c.parse("z*w")}, {1, 2, c.parse("w")}});
    TorusActionSpec t{c, {{0, 1}}, MatrixX<long>::Ones(1, 1)};
    const auto cert = is_poisson_action(P, t);
    EXPECT_FALSE(cert.pass);
    EXPECT_EQ(cert.witnesses.size(), 1u);  // {zb,w} = w has weight 0, not -1
}

TEST(FixedSubspace, Examples) {
    const Chart c4({"q1", "p1", "q2", "p2"});
    const auto N = fixed_subspace(finite(c4, {diag({1, 1, -1, -1})}));
    EXPECT_EQ(N.basis, M("1 0 ; 0 1 ; 0 0 ; 0 0"));
    EXPECT_EQ(N.equations, M("0 0 1 0 ; 0 0 0 1"));

    const Chart c3({"x", "y", "z"});
    EXPECT_EQ(fixed_subspace(finite(c3, {diag({-1, -1, 1})})).basis, M("0 ; 0 ; 1"));

    const auto A = SkewParamMatrix::numeric(random_skew_matrix(3, 5));
    const auto T = fixed_subspace(cpn_torus_action(A));
    RationalMatrix expected = RationalMatrix::Zero(8, 2);
    expected(0, 0) = 1;  // z0
    expected(4, 1) = 1;  // zb0
    EXPECT_EQ(T.basis, expected);
}

TEST(FixedSubspace, TorusFactorWithZeroWeightsKeepsPair) {
    Chart c({"z", "zb", "w", "wb"});
    TorusActionSpec t{c, {{0, 1}, {2, 3}}, MatrixX<long>::Zero(1, 2)};
    t.weights(0, 1) = 2;
    EXPECT_EQ(fixed_subspace(t).dimension(), 2);
}

TEST(AverageMetric, Examples) {
    const Chart c3({"x", "y", "z"});
    EXPECT_EQ(average_metric(finite(c3, {diag({-1, -1, 1})}), RationalMatrix::Identity(3, 3)).matrix,
              RationalMatrix::Identity(3, 3));
    const Chart c2({"x", "y"});
    EXPECT_EQ(average_metric(finite(c2, {M("0 1 ; 1 0")}), diag({1, 2})).matrix, M("3/2 0 ; 0 3/2"));
    EXPECT_EQ(average_metric(finite(c2, {}), M("2 1 ; 1 1")).matrix, M("2 1 ; 1 1"));
    EXPECT_THROW(average_metric(finite(c2, {}), M("1 2 ; 2 1")), InputError);
}

TEST(OrthogonalComplement, Examples) {
    const Chart c4({"a", "b", "c", "d"});
    InvariantMetric id4{c4, RationalMatrix::Identity(4, 4), {}};
    EXPECT_EQ(orthogonal_complement(make_subspace(c4, M("1 0 ; 0 1 ; 0 0 ; 0 0")), id4).basis,
              M("0 0 ; 0 0 ; 1 0 ; 0 1"));

    const Chart c2({"x", "y"});
    const auto E = orthogonal_complement(make_subspace(c2, M("1 ; 1")), {c2, RationalMatrix::Identity(2, 2), {}});
    ASSERT_EQ(E.dimension(), 1);
    EXPECT_EQ(E.basis(0, 0), -E.basis(1, 0));

    const auto F = orthogonal_complement(make_subspace(c2, M("1 ; 0")), {c2, M("2 1 ; 1 1"), {}});
    ASSERT_EQ(F.dimension(), 1);
    EXPECT_EQ(F.basis(1, 0), -2 * F.basis(0, 0));
}

TEST(TorusMetric, HermitianPairingIsPositiveAndInvariant) {
    const auto A = SkewParamMatrix::numeric(random_skew_matrix(2, 6));
    const auto action = cpn_torus_action(A);
    const auto metric = torus_metric(action);
    EXPECT_TRUE(is_positive_definite(metric));
    EXPECT_TRUE(is_invariant(metric, action));
    // As a plain symmetric matrix it is indefinite; positivity lives on real vectors.
    EXPECT_FALSE(linalg::is_positive_definite(metric.matrix));
}

TEST(GroupActionProperty, AveragedMetricIsInvariantAndPositive) {
    SeededRandom rng(32);
    const Chart c({"a", "b", "c", "d"});
    for (int trial = 0; trial < 8; ++trial) {
        const auto spec = finite(c, random_signed_permutations(rng, 4, 2));
        RationalMatrix seed = RationalMatrix::Identity(4, 4);
        for (Eigen::Index i = 0; i < 4; ++i) seed(i, i) = 1 + static_cast<long>(rng.below(4));
        seed(0, 1) = seed(1, 0) = Rational(1) / 2;
        const auto metric = average_metric(spec, seed);
        EXPECT_TRUE(is_positive_definite(metric));
        for (const auto& g : enumerate_group(spec)) EXPECT_EQ(RationalMatrix(g.transpose() * metric.matrix * g), metric.matrix);
    }
}

TEST(GroupActionProperty, FixedSubspaceMatchesAllElementsAndIsInvariant) {
    SeededRandom rng(33);
    const Chart c({"a", "b", "c", "d", "e"});
    for (int trial = 0; trial < 8; ++trial) {
        auto spec = finite(c, random_signed_permutations(rng, 5, 1 + static_cast<int>(rng.below(2))));
        spec.max_order = 3840;  // order of the full signed permutation group in dimension 5
        const auto N = fixed_subspace(spec);
        const auto elements = enumerate_group(spec);
        // Independent oracle: stack (g − I) over every element, not only generators.
        RationalMatrix stacked(static_cast<Eigen::Index>(5 * elements.size()), 5);
        for (std::size_t k = 0; k < elements.size(); ++k)
            stacked.middleRows(static_cast<Eigen::Index>(5 * k), 5) = elements[k] - RationalMatrix::Identity(5, 5);
        EXPECT_EQ(N.dimension(), 5 - linalg::rank(stacked));
        for (const auto& g : elements) {
            EXPECT_EQ(RationalMatrix(g * N.basis), N.basis);
            EXPECT_EQ(linalg::rank(RationalMatrix(g * N.basis)), N.dimension());
        }
        EXPECT_TRUE(RationalMatrix(N.equations * N.basis).isZero());
        EXPECT_EQ(N.equations.rows() + N.dimension(), 5);
    }
}

TEST(GroupActionProperty, AnnihilatorOfComplementIsInvariant) {
    SeededRandom rng(34);
    const Chart c({"a", "b", "c", "d"});
    for (int trial = 0; trial < 8; ++trial) {
        const auto spec = finite(c, random_signed_permutations(rng, 4, 2));
        const auto metric = average_metric(spec, RationalMatrix::Identity(4, 4));
        const auto N = fixed_subspace(spec);
        const auto E = orthogonal_complement(N, metric);
        const RationalMatrix annihilator = linalg::nullspace(RationalMatrix(E.basis.transpose()));  // columns ξ
        for (const auto& g : enumerate_group(spec)) {
            const RationalMatrix lifted = linalg::inverse(g).transpose() * annihilator;
            EXPECT_EQ(lifted, annihilator);
        }
    }
}

TEST(GroupAverage, ProducesInvariantFunctions) {
    SeededRandom rng(35);
    const Chart c({"a", "b", "c", "d"});
    for (int trial = 0; trial < 5; ++trial) {
        const auto spec = finite(c, random_signed_permutations(rng, 4, 2));
        const auto f = random_polynomial(rng, 4, 3, 5);
        const auto avg = group_average(f, spec);
        for (const auto& g : enumerate_group(spec)) EXPECT_EQ(compose_linear(avg, g, 4), avg);
    }
    const auto A = SkewParamMatrix::numeric(random_skew_matrix(1, 1));
    const auto t = cpn_torus_action(A);
    const Chart& cc = t.chart;
    EXPECT_EQ(group_average(cc.parse("z1*zb1 + z1 + z0*zb1^2 + 3"), t), cc.parse("z1*zb1 + 3"));
}
