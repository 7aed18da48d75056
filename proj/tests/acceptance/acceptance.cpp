// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact (rational arithmetic, tolerance 0).

#include "poisson/cli/app.hpp"
#include "poisson/dirac_reduction.hpp"
#include "poisson/errors.hpp"
#include "poisson/random.hpp"
#include "poisson/simplex_quotient.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace poisson;

namespace {

// Pinned suite parameters.
constexpr std::size_t kMaxN = 3;
constexpr std::uint64_t kSeedsPerN = 5;
constexpr std::size_t kSymbolicMaxN = 2;
constexpr std::size_t kPoints = 100;
constexpr std::size_t kPairs = 20;
constexpr std::size_t kTrials = 20;
constexpr std::uint64_t kSeed = 2024;
constexpr std::size_t kOraclePoints = 20;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::vector<SkewParamMatrix> a_suite(std::size_t n) {
    std::vector<SkewParamMatrix> out;
    for (std::uint64_t s = 1; s <= kSeedsPerN; ++s) out.push_back(SkewParamMatrix::numeric(random_skew_matrix(n, 1000 * n + s)));
    return out;
}

std::string label(std::size_t n, std::size_t k) { return "n=" + std::to_string(n) + " A#" + std::to_string(k + 1); }

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// {μ_i, μ_j} at a point of (z, zb) from u_l = z_l zb_l and {u_i,u_j} = a_ij u_i u_j
// by the quotient rule; does not use the bracket code or the formula.
std::optional<Rational> quotient_rule_oracle(const RationalMatrix& A, std::size_t i, std::size_t j,
                                             const std::vector<Rational>& point) {
    const std::size_t m = static_cast<std::size_t>(A.rows());
    std::vector<Rational> u(m);
    Rational r = 0;
    for (std::size_t l = 0; l < m; ++l) u[l] = point[l] * point[m + l], r += u[l];
    if (r == 0) return std::nullopt;
    Rational ui_r = 0, r_uj = 0;
    for (std::size_t l = 0; l < m; ++l) {
        ui_r += A(i, l) * u[i] * u[l];
        r_uj += A(l, j) * u[l] * u[j];
    }
    return A(i, j) * u[i] * u[j] / (r * r) - u[i] * r_uj / (r * r * r) - u[j] * ui_r / (r * r * r);
}

// --- AC1 ------------------------------------------------------------------------------

Outcome ac1() {
    Outcome o;
    SeededRandom rng(kSeed);
    std::size_t pairs = 0, oracle_values = 0;
    for (std::size_t n = 1; n <= kMaxN; ++n) {
        const auto suite = a_suite(n);
        for (std::size_t k = 0; k < suite.size(); ++k) {
            const auto& A = suite[k];
            SimplexDerivation d;
            try {
                d = derive_simplex_bracket(A);
            } catch (const CertificationError& e) {
                o.require(false, label(n, k) + ": " + e.what());
                continue;
            }
            o.require(d.pass && d.checks.size() == n * (n + 1) / 2, label(n, k) + ": derivation");
            RationalMatrix Araw(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = 0; j <= n; ++j)
                    Araw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A.entry(i, j, 0).constant_value();
            for (const auto& c : d.checks) {
                ++pairs;
                o.require(c.pass && c.direct == c.composed, label(n, k) + " pair " + std::to_string(c.i) + std::to_string(c.j));
                for (std::size_t t = 0; t < kOraclePoints; ++t) {
                    std::vector<Rational> point;
                    for (std::size_t l = 0; l < 2 * (n + 1); ++l) point.push_back(rng.rational(7, 5));
                    const auto expected = quotient_rule_oracle(Araw, c.i, c.j, point);
                    if (!expected) continue;
                    ++oracle_values;
                    o.require(evaluate(c.direct, point) == *expected, label(n, k) + ": quotient-rule oracle");
                }
            }
            if (n == 1) {
                const Chart sc = simplex_chart(A);
                const RationalFunction closed = RationalFunction(Araw(0, 1)) * sc.parse("mu0*mu1*(1 - mu0 - mu1)");
                o.require(d.mu_brackets(0, 1) == closed, label(n, k) + ": n=1 closed form");
            }
        }
    }
    const auto sym = SkewParamMatrix::symbolic(1);
    o.require(simplex_formula(sym, 0, 1) == simplex_chart(sym).parse("a01*mu0*mu1*(1 - mu0 - mu1)"),
              "symbolic n=1 closed form");
    o.require(derive_simplex_bracket(sym).pass, "symbolic n=1 derivation");
    o.detail = std::to_string(pairs) + " pairs certified, " + std::to_string(oracle_values) + " quotient-rule oracle values";
    return o;
}

// --- AC2 ------------------------------------------------------------------------------

Outcome ac2() {
    Outcome o;
    std::size_t structures = 0;
    for (std::size_t n = 1; n <= kMaxN; ++n) {
        const auto suite = a_suite(n);
        for (std::size_t k = 0; k < suite.size(); ++k) {
            const auto S = simplex_bracket(suite[k]);
            ++structures;
            o.require(S.is_verified() && jacobi_failures(S).empty(), label(n, k));
        }
    }
    for (std::size_t n = 1; n <= kSymbolicMaxN; ++n) {
        const auto S = simplex_bracket(SkewParamMatrix::symbolic(n));
        ++structures;
        o.require(S.is_verified() && jacobi_failures(S).empty(), "symbolic n=" + std::to_string(n));
    }
    o.detail = std::to_string(structures) + " structures, Jacobi defect identically 0";
    return o;
}

// --- AC3 ------------------------------------------------------------------------------

Outcome ac3() {
    Outcome o;
    std::size_t checks = 0;
    auto certify = [&](const SkewParamMatrix& A, const std::string& name) {
        const std::size_t n = A.n();
        const auto cert = check_face_stratification(A);
        checks += cert.checks.size();
        o.require(cert.pass, name + ": divisibility");
        o.require(cert.checks.size() == (n + 1) * (n + 1) + (n + 1), name + ": check count");
    };
    for (std::size_t n = 1; n <= kMaxN; ++n) {
        const auto suite = a_suite(n);
        for (std::size_t k = 0; k < suite.size(); ++k) certify(suite[k], label(n, k));
        const auto faces = enumerate_faces(n);
        for (std::size_t d = 0; d <= n; ++d) {
            std::size_t count = 0;
            for (const auto& f : faces) count += f.dimension == d ? 1 : 0;
            o.require(count == binomial(n + 1, n - d), "face count n=" + std::to_string(n) + " d=" + std::to_string(d));
        }
    }
    for (std::size_t n = 1; n <= kSymbolicMaxN; ++n) certify(SkewParamMatrix::symbolic(n), "symbolic n=" + std::to_string(n));
    o.detail = std::to_string(checks) + " divisibility checks, face counts C(n+1, n-d) for n<=" + std::to_string(kMaxN);
    return o;
}

// --- fixture suite for AC4, AC5, AC7 -----------------------------------------------------

struct Fixture {
    std::string name;
    PoissonStructure P;
    ActionSpec action;
};

std::vector<Fixture> fixture_suite() {
    std::vector<Fixture> out;
    {
        Chart c({"q1", "p1", "q2", "p2"});
        auto P = PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}, {2, 3, RationalFunction(1)}});
        RationalMatrix g = RationalMatrix::Identity(4, 4);
        g(2, 2) = g(3, 3) = -1;
        out.push_back({"Z2 on symplectic R4", P, FiniteActionSpec{c, {g}}});
    }
    {
        Chart c({"x", "y", "z"});
        auto P = PoissonStructure::from_entries(c, {{0, 1, c.parse("z")}, {1, 2, c.parse("x")}, {2, 0, c.parse("y")}});
        RationalMatrix g = RationalMatrix::Identity(3, 3);
        g(0, 0) = g(1, 1) = -1;
        out.push_back({"diag(-1,-1,1) on so(3)", P, FiniteActionSpec{c, {g}}});
    }
    for (std::size_t n = 1; n <= kMaxN; ++n) {
        const auto A = SkewParamMatrix::numeric(random_skew_matrix(n, 500 + n));
        out.push_back({"torus on cpn n=" + std::to_string(n), cpn_bracket(A), cpn_torus_action(A)});
    }
    return out;
}

struct Reduced {
    Fixture fixture;
    std::optional<ReductionReport> report;
    std::string error;
};

const std::vector<Reduced>& reductions() {
    static const std::vector<Reduced> cache = [] {
        std::vector<Reduced> out;
        ReductionOptions options;
        options.points = kPoints;
        options.trials = kTrials;
        options.function_pairs = kPairs;
        options.seed = kSeed;
        for (auto& f : fixture_suite()) {
            Reduced r{f, std::nullopt, ""};
            try {
                r.report = reduce_fixed_set(f.P, f.action, options);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            out.push_back(std::move(r));
        }
        return out;
    }();
    return cache;
}

Outcome ac4() {
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& r : reductions()) {
        if (!r.report) {
            o.require(false, r.fixture.name + ": " + r.error);
            continue;
        }
        const auto& rep = *r.report;
        o.require(rep.pass(), r.fixture.name + ": reduce_fixed_set");
        o.require(rep.induced && rep.induced->is_verified() && jacobi_failures(*rep.induced).empty(),
                  r.fixture.name + ": induced Jacobi");
        if (!rep.induced) continue;
        // Recompute the agreement independently of the report.
        const auto metric = invariant_metric(r.fixture.action);
        const auto ctx = make_split_context(r.fixture.P, rep.fixed_set, metric, r.fixture.action);
        SeededRandom rng(kSeed + 7);
        const std::size_t k = ctx.n_chart.dimension();
        for (std::size_t t = 0; t < kPairs; ++t) {
            const RationalFunction f(rng.polynomial(0, k, 3, 4)), g(rng.polynomial(0, k, 3, 4));
            const auto split = bracket(*rep.induced, f, g);
            const auto ext = induced_bracket_via_extensions(ctx, f, g);
            o.require(split == ext, r.fixture.name + ": split vs extension pair " + std::to_string(t));
            ++pairs;
        }
        o.require(rep.agreement_pairs >= kPairs, r.fixture.name + ": report agreement pairs");
    }
    o.detail = std::to_string(reductions().size()) + " fixtures, " + std::to_string(pairs) + " split/extension pairs equal";
    return o;
}

// --- AC5 ------------------------------------------------------------------------------

Outcome ac5() {
    Outcome o;
    std::size_t points = 0;
    for (const auto& r : reductions()) {
        if (!r.report) {
            o.require(false, r.fixture.name + ": " + r.error);
            continue;
        }
        o.require(r.report->eq1_dimensions.size() >= kPoints, r.fixture.name + ": point count");
        o.require(r.report->eq1_pass(), r.fixture.name + ": nonzero intersection");
        points += r.report->eq1_dimensions.size();
    }
    Chart c({"q", "p"});
    const auto plane = PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}});
    RationalMatrix line(2, 1);
    line << 1, 0;
    const auto N = make_subspace(c, line);
    const auto dims = check_eq1(plane, N, sample_points(plane, N, kPoints, kSeed));
    o.require(dims.size() == kPoints, "Lagrangian line: point count");
    for (auto d : dims) o.require(d == 1, "Lagrangian line: dimension " + std::to_string(d));
    o.detail = std::to_string(points) + " points with dimension 0; Lagrangian line dimension 1 at " +
               std::to_string(dims.size()) + " points";
    return o;
}

// --- AC6 ------------------------------------------------------------------------------

Outcome ac6() {
    Outcome o;
    Chart c({"q", "p"});
    const auto plane = PoissonStructure::from_entries(c, {{0, 1, RationalFunction(1)}});
    RationalMatrix flip = RationalMatrix::Identity(2, 2);
    flip(1, 1) = -1;
    const auto cert = is_poisson_action(plane, FiniteActionSpec{c, {flip}});
    o.require(!cert.pass, "anti-Poisson involution accepted");
    o.require(!cert.witnesses.empty(), "anti-Poisson involution has no witness");

    const auto jac = cli::run_command({"jacobi", fixture("jacobi_violation.txt"), "--machine"});
    o.require(jac.code == cli::kFail, "jacobi exit code " + std::to_string(jac.code));
    const bool has_triple = jac.out.find("witness.0=Jacobiator {") != std::string::npos;
    o.require(has_triple, "jacobi witness triple missing");

    const auto red = cli::run_command({"reduce", fixture("anti_poisson_involution.txt"), "--machine"});
    o.require(red.code == cli::kFail, "reduce on anti-Poisson exit code " + std::to_string(red.code));
    o.detail = "anti-Poisson witness: " + (cert.witnesses.empty() ? std::string("none") : cert.witnesses.front()) +
               "; jacobi exit " + std::to_string(jac.code);
    return o;
}

// --- AC7 ------------------------------------------------------------------------------

Outcome ac7() {
    Outcome o;
    std::size_t trials = 0, nontrivial = 0;
    for (const auto& r : reductions()) {
        if (!r.report) {
            o.require(false, r.fixture.name + ": " + r.error);
            continue;
        }
        const auto& ind = r.report->independence;
        o.require(ind.trials >= kTrials, r.fixture.name + ": trial count");
        o.require(ind.pass && ind.counterexamples.empty(), r.fixture.name + ": perturbed bracket differs");
        o.require(ind.nontrivial > 0, r.fixture.name + ": every perturbation was zero");
        trials += ind.trials;
        nontrivial += ind.nontrivial;
    }
    o.detail = std::to_string(trials) + " trials (" + std::to_string(nontrivial) + " nonzero perturbations), 0 mismatches";
    if (!o.pass) o.detail = std::to_string(trials) + " trials";
    return o;
}

// --- AC8 ------------------------------------------------------------------------------

Outcome ac8() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"jacobi", fixture("so3_involution.txt")},
        {"reduce", fixture("symplectic_r4_z2.txt")},
        {"reduce", fixture("cpn2_torus.txt")},
        {"fixed-set", fixture("lagrangian_line.txt")},
        {"simplex", "--n", "3", "--random"},
        {"stratify", fixture("simplex_n2.txt")},
    };
    for (auto args : commands) {
        args.insert(args.end(), {"--seed", std::to_string(kSeed), "--machine"});
        const auto a = cli::run_command(args), b = cli::run_command(args);
        std::string joined;
        for (const auto& s : args) joined += " " + s;
        o.require(a.code == b.code && a.out == b.out && !a.out.empty(), "differs:" + joined);
    }
    o.detail = std::to_string(commands.size()) + " commands run twice, machine blocks byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 simplex formula reproduction", ac1},
        {"AC2 Jacobi identity of the simplex bracket", ac2},
        {"AC3 face stratification", ac3},
        {"AC4 fixed-point reduction", ac4},
        {"AC5 Poisson-Dirac rank condition", ac5},
        {"AC6 negative controls", ac6},
        {"AC7 extension independence", ac7},
        {"AC8 determinism", ac8},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), seconds);
        const std::size_t shown = std::min<std::size_t>(o.failures.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) std::printf("    %s\n", o.failures[i].c_str());
        if (o.failures.size() > shown) std::printf("    ... %zu more\n", o.failures.size() - shown);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed (tolerance: exact)\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
