#include "poisson/errors.hpp"
#include "poisson/linalg.hpp"
#include "poisson/poisson_structure.hpp"
#include "poisson/simplex_quotient.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace poisson;
using namespace poisson::testing;

namespace {

std::vector<PoissonStructure> verified_fixtures() {
    Chart c4({"a", "b", "c", "d"});
    std::vector<PoissonStructure> out = {symplectic_plane(), symplectic_r4(), so3(),
                                         PoissonStructure::from_entries(c4, {{0, 1, RationalFunction(2)},
                                                                             {0, 2, c4.parse("-1/3")},
                                                                             {1, 3, RationalFunction(5)},
                                                                             {2, 3, c4.parse("7/2")}})};
    out.push_back(cpn_bracket(SkewParamMatrix::numeric(random_skew_matrix(2, 3))));
    out.push_back(simplex_bracket(SkewParamMatrix::numeric(random_skew_matrix(2, 4))));
    return out;
}

RFVector components(std::initializer_list<RationalFunction> fs) {
    RFVector v(static_cast<Eigen::Index>(fs.size()));
    Eigen::Index i = 0;
    for (const auto& f : fs) v(i++) = f;
    return v;
}

}  // namespace

TEST(Chart, Validation) {
    EXPECT_THROW(Chart(std::vector<std::string>{}), InputError);
    EXPECT_THROW(Chart({"x", "x"}), InputError);
    EXPECT_THROW(Chart({"x"}, {"x"}), InputError);
    EXPECT_THROW(Chart({"1x"}), InputError);
    Chart c({"x", "y"}, {"a"});
    EXPECT_EQ(c.dimension(), 2u);
    EXPECT_EQ(c.parameter_count(), 1u);
    EXPECT_EQ(*c.index_of("a"), 2u);
    EXPECT_THROW(c.coordinate_index("a"), InputError);
}

TEST(PoissonStructureType, RejectsNonSkewAndDiagonalEntries) {
    Chart c({"x", "y"});
    RFMatrix m(2, 2);
    m << RationalFunction(), RationalFunction(1), RationalFunction(1), RationalFunction();
    EXPECT_THROW(PoissonStructure(c, m), InputError);
    EXPECT_THROW(PoissonStructure::from_entries(c, {{0, 0, RationalFunction(1)}}), InputError);
    EXPECT_THROW(PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}, {1, 0, RationalFunction(1)}}),
                 InputError);
    EXPECT_NO_THROW(PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}, {1, 0, RationalFunction(-1)}}));
    EXPECT_FALSE(symplectic_plane().is_verified());
    EXPECT_TRUE(symplectic_plane().verify().is_verified());
}

// --- bracket ------------------------------------------------------------------

TEST(Bracket, Examples) {
    const auto plane = symplectic_plane();
    EXPECT_EQ(bracket(plane, plane.chart().parse("q"), plane.chart().parse("p")), RationalFunction(1));

    const auto quad = cpn_bracket(SkewParamMatrix::symbolic(1));
    const Chart& qc = quad.chart();
    EXPECT_EQ(bracket(quad, qc.parse("z0"), qc.parse("z1")), qc.parse("a01*z0*z1"));

    const auto s = so3();
    EXPECT_EQ(bracket(s, s.chart().parse("x^2"), s.chart().parse("y")), s.chart().parse("2*x*z"));
}

TEST(Bracket, RejectsForeignSymbols) {
    const auto plane = symplectic_plane();
    EXPECT_THROW(bracket(plane, RationalFunction::variable(5), plane.chart().parse("q")), InputError);
}

// --- sharp / hamiltonian --------------------------------------------------------

TEST(Sharp, Examples) {
    const auto plane = symplectic_plane();
    const auto dq = differential(plane.chart(), plane.chart().parse("q"));
    EXPECT_EQ(sharp(plane, dq).components, components({RationalFunction(0), RationalFunction(-1)}));

    const auto s = so3();
    const Chart& c = s.chart();
    EXPECT_EQ(sharp(s, differential(c, c.parse("x"))).components, components({0, c.parse("-z"), c.parse("y")}));

    EXPECT_EQ(sharp(s, CovectorExpr{c, RFVector::Zero(3)}).components, RFVector::Zero(3));
    EXPECT_THROW(sharp(s, differential(plane.chart(), plane.chart().parse("q"))), InputError);
}

TEST(HamiltonianVectorField, Examples) {
    const auto plane = symplectic_plane();
    const Chart& c = plane.chart();
    EXPECT_EQ(hamiltonian_vf(plane, c.parse("p^2/2")).components, components({c.parse("p"), 0}));
    EXPECT_EQ(hamiltonian_vf(plane, RationalFunction(3)).components, RFVector::Zero(2));

    const auto quad = cpn_bracket(SkewParamMatrix::symbolic(1));
    const Chart& qc = quad.chart();
    EXPECT_EQ(hamiltonian_vf(quad, qc.parse("z0")).components,
              components({0, qc.parse("-a01*z0*z1"), 0, 0}));

    // X_f(m) = {m,f} on every monomial of degree <= 2 in so(3).
    const auto s = so3();
    const Chart& sc = s.chart();
    const auto f = sc.parse("x*y + z^2");
    const auto X = hamiltonian_vf(s, f);
    for (const char* m : {"1", "x", "y", "z", "x^2", "x*y", "x*z", "y^2", "y*z", "z^2"})
        EXPECT_EQ(apply(X, sc.parse(m)), bracket(s, sc.parse(m), f)) << m;
}

// --- jacobi ---------------------------------------------------------------------

TEST(Jacobi, Examples) {
    for (const auto& P : verified_fixtures()) EXPECT_TRUE(jacobi_failures(P).empty()) << P.chart().symbols()[0];
    Chart c({"x", "y", "z"});
    EXPECT_TRUE(jacobi_failures(PoissonStructure::from_entries(c, {{0, 1, c.parse("x")}})).empty());
    const auto bad = PoissonStructure::from_entries(c, {{0, 1, c.parse("y^2")}, {0, 2, c.parse("z")}, {1, 2, c.parse("x")}});
    const auto defects = jacobi_failures(bad);
    ASSERT_EQ(defects.size(), 1u);
    EXPECT_EQ(defects[0].value, c.parse("-2*x*y - x"));
    EXPECT_FALSE(bad.verify().is_verified());
}

// --- pushforward -----------------------------------------------------------------

TEST(Pushforward, Examples) {
    const auto plane = symplectic_plane();
    EXPECT_EQ(pushforward_linear(plane, RationalMatrix::Identity(2, 2)), plane);
    RationalMatrix t = RationalMatrix::Zero(2, 2);
    t(0, 0) = 2;
    t(1, 1) = Rational(1) / 2;
    EXPECT_EQ(pushforward_linear(plane, t), plane);
    EXPECT_EQ(pushforward_linear(plane, diag({1, -1})).entry(0, 1), RationalFunction(-1));
    EXPECT_THROW(pushforward_linear(plane, RationalMatrix::Zero(2, 2)), MathError);
    EXPECT_THROW(pushforward_linear(plane, RationalMatrix::Identity(3, 3)), InputError);
}

// --- rank_at ---------------------------------------------------------------------

TEST(RankAt, Examples) {
    EXPECT_EQ(rank_at(symplectic_plane(), std::vector<Rational>{3, 4}), 2);
    EXPECT_EQ(rank_at(so3(), std::vector<Rational>{0, 0, 0}), 0);
    EXPECT_EQ(rank_at(so3(), std::vector<Rational>{0, 0, 1}), 2);
    Chart c({"x", "y"});
    EXPECT_THROW(rank_at(PoissonStructure::from_entries(c, {{0, 1, c.parse("1/x")}}), std::vector<Rational>{0, 1}),
                 MathError);
}

// --- properties ---------------------------------------------------------------------

TEST(PoissonCoreProperty, AntisymmetryAndLeibniz) {
    SeededRandom rng(21);
    for (const auto& P : verified_fixtures()) {
        const std::size_t d = P.dimension();
        for (int trial = 0; trial < 5; ++trial) {
            const auto f = random_polynomial(rng, d, 2, 3), g = random_fraction(rng, d), h = random_polynomial(rng, d, 2, 3);
            EXPECT_TRUE((bracket(P, f, g) + bracket(P, g, f)).is_zero());
            EXPECT_EQ(bracket(P, f * g, h), f * bracket(P, g, h) + g * bracket(P, f, h));
        }
    }
}

TEST(PoissonCoreProperty, JacobiatorThroughBracketVanishes) {
    SeededRandom rng(22);
    for (const auto& P : verified_fixtures()) {
        ASSERT_TRUE(jacobi_failures(P).empty());
        const std::size_t d = P.dimension();
        for (int trial = 0; trial < 3; ++trial) {
            const auto f = random_polynomial(rng, d, 2, 2), g = random_polynomial(rng, d, 2, 2),
                       h = random_polynomial(rng, d, 2, 2);
            const auto j = bracket(P, f, bracket(P, g, h)) + bracket(P, g, bracket(P, h, f)) +
                           bracket(P, h, bracket(P, f, g));
            EXPECT_TRUE(j.is_zero());
        }
    }
}

TEST(PoissonCoreProperty, JacobiatorDetectsEveryDefect) {
    // A failing table must also fail the bracket-level Jacobiator on coordinates.
    Chart c({"x", "y", "z"});
    const auto bad = PoissonStructure::from_entries(c, {{0, 1, c.parse("y^2")}, {0, 2, c.parse("z")}, {1, 2, c.parse("x")}});
    const auto x = c.parse("x"), y = c.parse("y"), z = c.parse("z");
    const auto j = bracket(bad, x, bracket(bad, y, z)) + bracket(bad, y, bracket(bad, z, x)) +
                   bracket(bad, z, bracket(bad, x, y));
    EXPECT_EQ(j, jacobi_failures(bad)[0].value);
}

TEST(PoissonCoreProperty, SharpCompatibleWithBracket) {
    SeededRandom rng(23);
    for (const auto& P : verified_fixtures()) {
        const std::size_t d = P.dimension();
        for (int trial = 0; trial < 5; ++trial) {
            const auto f = random_fraction(rng, d), g = random_polynomial(rng, d);
            // X_f = #df, so X_f(g) = {g,f}.
            EXPECT_EQ(apply(hamiltonian_vf(P, f), g), bracket(P, g, f));
        }
    }
}

TEST(PoissonCoreProperty, PushforwardFunctoriality) {
    SeededRandom rng(24);
    auto random_invertible = [&](Eigen::Index d) {
        while (true) {
            RationalMatrix m(d, d);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.rational(3, 2);
            if (!linalg::determinant(m).is_zero()) return m;
        }
    };
    for (const auto& P : {symplectic_r4(), so3()}) {
        const auto d = static_cast<Eigen::Index>(P.dimension());
        for (int trial = 0; trial < 4; ++trial) {
            const RationalMatrix S = random_invertible(d), T = random_invertible(d);
            EXPECT_EQ(pushforward_linear(pushforward_linear(P, S), T), pushforward_linear(P, T * S));
            // {f∘T⁻¹, g∘T⁻¹}' = {f,g} ∘ T⁻¹ on coordinate functions.
            const PoissonStructure Q = pushforward_linear(P, T);
            const RationalMatrix Tinv = linalg::inverse(T);
            for (std::size_t i = 0; i < P.dimension(); ++i)
                for (std::size_t j = 0; j < P.dimension(); ++j) {
                    const auto xi = RationalFunction::variable(i), xj = RationalFunction::variable(j);
                    const auto lhs = bracket(Q, compose_linear(xi, Tinv, P.chart().symbol_count()),
                                             compose_linear(xj, Tinv, P.chart().symbol_count()));
                    const auto rhs = compose_linear(bracket(P, xi, xj), Tinv, P.chart().symbol_count());
                    EXPECT_EQ(lhs, rhs);
                }
        }
    }
}

TEST(PoissonCoreProperty, RankIsEvenAtRandomPoints) {
    SeededRandom rng(25);
    for (const auto& P : verified_fixtures()) {
        int checked = 0;
        while (checked < 100) {
            const auto pt = random_point(rng, P.chart().symbol_count());
            ++checked;
            EXPECT_EQ(rank_at(P, pt) % 2, 0);
        }
    }
}
