#include "poisson/dirac_reduction.hpp"

#include "poisson/errors.hpp"
#include "poisson/linalg.hpp"
#include "poisson/random.hpp"

#include <algorithm>
#include <sstream>

namespace poisson {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

RationalFunction linear_form(const RationalVector& coeffs, std::size_t offset = 0) {
    RationalFunction out;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j)
        if (!coeffs(j).is_zero())
            out += RationalFunction(coeffs(j)) * RationalFunction::variable(offset + static_cast<std::size_t>(j));
    return out;
}

Chart chart_on(const PoissonStructure& P, const LinearSubmanifold& N) {
    if (N.dimension() == 0) return Chart();
    const Chart& ambient = P.chart();
    std::vector<std::string> names;
    for (Eigen::Index k = 0; k < N.basis.cols(); ++k) {
        const auto col = N.basis.col(k);
        std::string name;
        for (Eigen::Index v = 0; v < col.size(); ++v) {
            RationalVector unit = RationalVector::Zero(col.size());
            unit(v) = 1;
            if (RationalVector(col) == unit) name = ambient.symbols()[static_cast<std::size_t>(v)];
        }
        if (name.empty()) {
            name = "y" + std::to_string(k);
            while (std::find(ambient.symbols().begin(), ambient.symbols().end(), name) != ambient.symbols().end())
                name += "_";
        }
        names.push_back(std::move(name));
    }
    const auto params = ambient.parameters();
    return Chart(std::move(names), std::vector<std::string>(params.begin(), params.end()));
}

}  // namespace

SplitContext make_split_context(const PoissonStructure& P, const LinearSubmanifold& N, const InvariantMetric& metric,
                                std::optional<ActionSpec> action) {
    if (!(N.chart == P.chart())) throw InputError("submanifold chart does not match the Poisson structure");
    LinearSubmanifold E = orthogonal_complement(N, metric);
    RationalMatrix frame(N.basis.rows(), N.basis.rows());
    frame << N.basis, E.basis;
    RationalMatrix frame_inverse = linalg::inverse(frame);
    Chart n_chart = chart_on(P, N);
    return {P, N, std::move(E), metric, std::move(frame), std::move(frame_inverse), std::move(n_chart), std::move(action)};
}

RationalFunction restrict_to_N(const SplitContext& ctx, const RationalFunction& f) {
    const Chart& ambient = ctx.P.chart();
    const std::size_t k = static_cast<std::size_t>(ctx.N.dimension());
    std::vector<RationalFunction> images;
    images.reserve(ambient.symbol_count());
    for (Eigen::Index i = 0; i < idx(ambient.dimension()); ++i) images.push_back(linear_form(ctx.N.basis.row(i).transpose()));
    for (std::size_t p = 0; p < ambient.parameter_count(); ++p) images.push_back(RationalFunction::variable(k + p));
    return compose(f, images);
}

RationalFunction extend_from_N(const SplitContext& ctx, const RationalFunction& f) {
    const Chart& ambient = ctx.P.chart();
    const auto k = ctx.N.dimension();
    std::vector<RationalFunction> images;
    for (Eigen::Index i = 0; i < k; ++i) images.push_back(linear_form(ctx.frame_inverse.row(i).transpose()));
    for (std::size_t p = 0; p < ambient.parameter_count(); ++p)
        images.push_back(RationalFunction::variable(ambient.dimension() + p));
    return compose(f, images);
}

// ---------------------------------------------------------------------------
// TN ∩ #(TN⁰) = 0 and #(E⁰) ⊂ TN

std::vector<Eigen::Index> check_eq1(const PoissonStructure& P, const LinearSubmanifold& N,
                                    const std::vector<std::vector<Rational>>& points) {
    const auto d = idx(P.dimension());
    std::vector<Eigen::Index> dims;
    dims.reserve(points.size());
    for (const auto& point : points) {
        if (point.size() != P.chart().symbol_count())
            throw InputError("point must give a value for every coordinate and parameter");
        if (!N.contains(point)) throw InputError("point does not lie on the submanifold");
        RationalMatrix pi(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) pi(i, j) = evaluate(P.matrix()(i, j), point);
        if (N.equations.rows() == 0 || N.dimension() == 0) {
            dims.push_back(0);
            continue;
        }
        const RationalMatrix sharp_annihilator = pi * N.equations.transpose();
        dims.push_back(linalg::intersection_dimension(sharp_annihilator, N.basis));
    }
    return dims;
}

SharpCertificate check_sharp_E0(const SplitContext& ctx) {
    SharpCertificate cert;
    const auto d = idx(ctx.P.dimension());
    const auto k = ctx.N.dimension();
    for (Eigen::Index r = 0; r < k; ++r) {
        SharpCheck check;
        check.covector = ctx.frame_inverse.row(r).transpose();
        RFVector sharp_xi(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            RationalFunction s;
            for (Eigen::Index j = 0; j < d; ++j)
                if (!check.covector(j).is_zero() && !ctx.P.matrix()(i, j).is_zero())
                    s += ctx.P.matrix()(i, j) * RationalFunction(check.covector(j));
            sharp_xi(i) = restrict_to_N(ctx, s);
        }
        for (Eigen::Index e = k; e < d; ++e) {
            RationalFunction c;
            for (Eigen::Index j = 0; j < d; ++j)
                if (!ctx.frame_inverse(e, j).is_zero() && !sharp_xi(j).is_zero())
                    c += RationalFunction(ctx.frame_inverse(e, j)) * sharp_xi(j);
            if (!c.is_zero()) check.pass = false;
            check.e_components.push_back(std::move(c));
        }
        cert.pass = cert.pass && check.pass;
        cert.checks.push_back(std::move(check));
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Split and induced structure

SplitBlocks split_bivector(const SplitContext& ctx) {
    const auto d = idx(ctx.P.dimension());
    const auto k = ctx.N.dimension();
    const RFMatrix Finv = ctx.frame_inverse.cast<RationalFunction>();
    const RFMatrix adapted = Finv * ctx.P.matrix() * Finv.transpose();
    RFMatrix restricted(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            restricted(i, j) = adapted(i, j).is_zero() ? RationalFunction() : restrict_to_N(ctx, adapted(i, j));
    SplitBlocks blocks{restricted.topLeftCorner(k, k), restricted.bottomRightCorner(d - k, d - k),
                       restricted.topRightCorner(k, d - k), true};
    for (Eigen::Index i = 0; i < blocks.pi_mixed.rows(); ++i)
        for (Eigen::Index j = 0; j < blocks.pi_mixed.cols(); ++j)
            if (!blocks.pi_mixed(i, j).is_zero()) blocks.valid = false;
    return blocks;
}

PoissonStructure induced_structure(const SplitContext& ctx) {
    if (ctx.N.dimension() == 0) throw MathError("the submanifold is a point; there is no induced chart");
    SplitBlocks blocks = split_bivector(ctx);
    if (!blocks.valid) throw MathError("invalid split: the mixed block of the bivector does not vanish on N");
    return PoissonStructure(ctx.n_chart, std::move(blocks.pi_N)).verify();
}

RationalFunction induced_bracket_via_extensions(const SplitContext& ctx, const PoissonStructure& induced,
                                                const RationalFunction& f, const RationalFunction& g) {
    const RationalFunction via_ext = restrict_to_N(ctx, bracket(ctx.P, extend_from_N(ctx, f), extend_from_N(ctx, g)));
    const RationalFunction via_split = bracket(induced, f, g);
    if (!(via_ext == via_split)) {
        const Chart& c = ctx.n_chart;
        throw CertificationError("extension bracket " + c.format(via_ext) + " differs from split bracket " +
                                 c.format(via_split) + " for f = " + c.format(f) + ", g = " + c.format(g));
    }
    return via_ext;
}

RationalFunction induced_bracket_via_extensions(const SplitContext& ctx, const RationalFunction& f,
                                                const RationalFunction& g) {
    return induced_bracket_via_extensions(ctx, induced_structure(ctx), f, g);
}

// ---------------------------------------------------------------------------
// Extension independence

namespace {

RationalFunction perturbation(const SplitContext& ctx, SeededRandom& rng) {
    const auto m = ctx.N.equations.rows();
    if (m == 0) return {};
    const std::size_t d = ctx.P.dimension();
    auto equation = [&] { return linear_form(ctx.N.equations.row(idx(rng.below(static_cast<std::uint64_t>(m)))).transpose()); };
    for (int attempt = 0; attempt < 32; ++attempt) {
        RationalFunction candidate = RationalFunction(rng.polynomial(0, d, 2, 3) + Polynomial(rng.nonzero_rational())) *
                                     equation();
        if (!ctx.action || rng.coin()) candidate *= equation();
        if (ctx.action) candidate = group_average(candidate, *ctx.action);
        if (!candidate.is_zero()) return candidate;
    }
    return {};
}

}  // namespace

IndependenceCertificate extension_independence_test(const SplitContext& ctx, const RationalFunction& f,
                                                    const RationalFunction& g, std::size_t trials,
                                                    std::uint64_t seed) {
    IndependenceCertificate cert;
    SeededRandom rng(seed);
    const RationalFunction fe = extend_from_N(ctx, f);
    const RationalFunction ge = extend_from_N(ctx, g);
    const RationalFunction canonical = restrict_to_N(ctx, bracket(ctx.P, fe, ge));
    for (std::size_t t = 0; t < trials; ++t) {
        const RationalFunction rf = perturbation(ctx, rng);
        const RationalFunction rg = perturbation(ctx, rng);
        // An admissible perturbation vanishes on N together with its differential.
        for (const auto* rho : {&rf, &rg}) {
            if (!restrict_to_N(ctx, *rho).is_zero())
                throw CertificationError("perturbation does not vanish on N");
            for (std::size_t i = 0; i < ctx.P.dimension(); ++i)
                if (!restrict_to_N(ctx, derivative(*rho, i)).is_zero())
                    throw CertificationError("perturbation differential does not vanish on N");
        }
        ++cert.trials;
        if (!rf.is_zero() || !rg.is_zero()) ++cert.nontrivial;
        const RationalFunction perturbed = restrict_to_N(ctx, bracket(ctx.P, fe + rf, ge + rg));
        if (!(perturbed == canonical)) {
            cert.pass = false;
            cert.counterexamples.push_back("trial " + std::to_string(t) + ": " + ctx.n_chart.format(perturbed) +
                                           " vs " + ctx.n_chart.format(canonical));
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Pipeline

std::vector<std::vector<Rational>> sample_points(const PoissonStructure& P, const LinearSubmanifold& N,
                                                 std::size_t count, std::uint64_t seed) {
    SeededRandom rng(seed);
    const auto d = idx(P.dimension());
    std::vector<std::vector<Rational>> points;
    std::size_t attempts = 0;
    while (points.size() < count) {
        if (++attempts > 50 * count + 50) throw MathError("could not find sample points avoiding the poles of π");
        RationalVector y(N.dimension());
        for (Eigen::Index k = 0; k < y.size(); ++k) y(k) = rng.rational();
        const RationalVector x = N.basis * y;
        std::vector<Rational> point(x.begin(), x.end());
        for (std::size_t p = 0; p < P.chart().parameter_count(); ++p) point.push_back(rng.nonzero_rational());
        bool ok = true;
        for (Eigen::Index i = 0; i < d && ok; ++i)
            for (Eigen::Index j = i + 1; j < d && ok; ++j)
                ok = evaluate(P.matrix()(i, j).denominator(), point) != 0;
        if (ok) points.push_back(std::move(point));
    }
    return points;
}

bool ReductionReport::eq1_pass() const {
    return std::all_of(eq1_dimensions.begin(), eq1_dimensions.end(), [](Eigen::Index d) { return d == 0; });
}

bool ReductionReport::pass() const {
    const bool induced_ok = fixed_set.dimension() == 0 || (induced && induced->is_verified());
    return action.pass && metric_pass && sharp.pass && split_valid && induced_ok && jacobi_failures.empty() &&
           eq1_pass() && independence.pass;
}

ReductionReport reduce_fixed_set(const PoissonStructure& P, const ActionSpec& action, const ReductionOptions& options) {
    ActionCertificate action_cert = is_poisson_action(P, action);
    if (!action_cert.pass) throw ActionNotPoisson(std::move(action_cert));

    InvariantMetric metric = [&] {
        if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
            const auto d = idx(P.dimension());
            return average_metric(*fin, options.seed_metric.value_or(RationalMatrix::Identity(d, d)));
        }
        return torus_metric(std::get<TorusActionSpec>(action));
    }();
    const bool metric_pass = is_positive_definite(metric) && is_invariant(metric, action);

    const LinearSubmanifold N = fixed_subspace(action);
    const SplitContext ctx = make_split_context(P, N, metric, action);

    ReductionReport report;
    report.action = std::move(action_cert);
    report.metric = metric;
    report.fixed_set = N;
    report.complement = ctx.E;
    report.fixed_chart = ctx.n_chart;
    report.metric_pass = metric_pass;
    report.sharp = check_sharp_E0(ctx);
    report.split_valid = split_bivector(ctx).valid;

    if (N.dimension() > 0 && report.split_valid) {
        report.induced = induced_structure(ctx);
        report.jacobi_failures = jacobi_failures(*report.induced);
    }

    report.eq1_dimensions = check_eq1(P, N, sample_points(P, N, options.points, options.seed));

    if (report.induced) {
        SeededRandom rng(options.seed + 1);
        const std::size_t k = report.fixed_chart.dimension();
        for (std::size_t t = 0; t < options.function_pairs; ++t) {
            const RationalFunction f(rng.polynomial(0, k, 3, 4));
            const RationalFunction g(rng.polynomial(0, k, 3, 4));
            induced_bracket_via_extensions(ctx, *report.induced, f, g);
            ++report.agreement_pairs;
        }
        const RationalFunction f(rng.polynomial(0, k, 3, 4));
        const RationalFunction g(rng.polynomial(0, k, 3, 4));
        report.independence = extension_independence_test(ctx, f, g, options.trials, options.seed + 2);
    }
    return report;
}

}  // namespace poisson
