#include "poisson/cli/app.hpp"

#include "poisson/cli/problem_file.hpp"
#include "poisson/cli/report.hpp"
#include "poisson/dirac_reduction.hpp"
#include "poisson/errors.hpp"
#include "poisson/simplex_quotient.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace poisson::cli {

namespace {

constexpr std::size_t kMaxWitnesses = 10;

struct Options {
    std::string command;
    std::string file;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> points;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> pairs;
    std::optional<std::size_t> n;
    bool symbolic = false;
    bool random = false;
    bool machine = false;
};

struct Loaded {
    std::string label;
    std::string digest;
    ProblemFile problem;
};

struct Settings {
    std::uint64_t seed;
    std::size_t points;
    std::size_t trials;
    std::size_t pairs;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Loaded load(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return {path, sha256_hex(text), parse_problem(text)};
    } catch (const FileError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Settings settings(const Options& opt, const TaskParams& params) {
    return {opt.seed.value_or(params.seed.value_or(1)), opt.points.value_or(params.points.value_or(100)),
            opt.trials.value_or(params.trials.value_or(20)), opt.pairs.value_or(params.pairs.value_or(20))};
}

const PoissonStructure& need_structure(const Loaded& in) {
    if (!in.problem.structure) throw InputError(in.label + ": the file has no [chart] section");
    return *in.problem.structure;
}

const ActionSpec& need_action(const Loaded& in) {
    if (!in.problem.action) throw InputError(in.label + ": the file has no [action] or [torus] section");
    return *in.problem.action;
}

std::string vector_string(const RationalVector& v) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v(i));
    return out + ")";
}

std::string point_string(const std::vector<Rational>& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + to_string(p[i]);
    return out + ")";
}

std::string columns_string(const RationalMatrix& m) {
    if (m.cols() == 0) return "none";
    std::string out;
    for (Eigen::Index k = 0; k < m.cols(); ++k) out += (k ? " " : "") + vector_string(m.col(k));
    return out;
}

std::string rows_string(const RationalMatrix& m) {
    if (m.rows() == 0) return "none";
    std::string out;
    for (Eigen::Index k = 0; k < m.rows(); ++k) out += (k ? " " : "") + vector_string(m.row(k).transpose());
    return out;
}

std::string names_string(std::span<const std::string> names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : " ") + n;
    return out;
}

void add_lines(Report& r, const std::string& block, const std::string& indent = "  ") {
    std::istringstream in(block);
    for (std::string l; std::getline(in, l);) r.line(l.empty() ? l : indent + l);
}

// Machine keys for a bracket table: prefix.coordinates, prefix.parameters, prefix.entries, prefix.K.
void add_table(Report& r, const std::string& prefix, const PoissonStructure& P) {
    const Chart& c = P.chart();
    r.set(prefix + ".coordinates", names_string(c.coordinates()));
    r.set(prefix + ".parameters", names_string(c.parameters()));
    const auto entries = upper_entries(P);
    r.set(prefix + ".entries", entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& [i, j, f] = entries[k];
        r.set(prefix + "." + std::to_string(k), "{" + c.symbols()[i] + "," + c.symbols()[j] + "} = " + c.format(f));
    }
}

void add_witnesses(Report& r, const std::vector<std::string>& ws) {
    for (std::size_t i = 0; i < ws.size() && i < kMaxWitnesses; ++i) r.witness(ws[i]);
    if (ws.size() > kMaxWitnesses) r.witness("... " + std::to_string(ws.size() - kMaxWitnesses) + " more");
}

void describe_action(Report& r, const ActionSpec& action) {
    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        const auto group = enumerate_group(*fin);
        r.line("action: finite group of order " + std::to_string(group.size()) + " with " +
               std::to_string(fin->generators.size()) + " generator(s)");
        for (const auto& g : fin->generators) r.line("  generator " + format_matrix(g));
        r.set("action.kind", "finite");
        r.set("action.order", group.size());
    } else {
        const auto& t = std::get<TorusActionSpec>(action);
        r.line("action: torus of rank " + std::to_string(t.weights.rows()) + " on " + std::to_string(t.pairs.size()) +
               " coordinate pair(s)");
        r.set("action.kind", "torus");
        r.set("action.rank", static_cast<std::size_t>(t.weights.rows()));
    }
}

// ---------------------------------------------------------------------------

Report cmd_jacobi(const Loaded& in, const Settings&) {
    Report r("jacobi", in.label, in.digest);
    const PoissonStructure& P = need_structure(in);
    const Chart& c = P.chart();
    const auto defects = jacobi_defect(P);
    std::size_t failures = 0;
    std::vector<std::string> ws;
    for (const auto& d : defects) {
        if (d.value.is_zero()) continue;
        ++failures;
        ws.push_back("Jacobiator {" + c.symbols()[d.i] + "," + c.symbols()[d.j] + "," + c.symbols()[d.k] +
                     "} = " + c.format(d.value));
    }
    r.line("chart: " + names_string(c.coordinates()) +
           (c.parameter_count() ? " ; parameters " + names_string(c.parameters()) : ""));
    r.line("triples checked: " + std::to_string(defects.size()) + ", nonzero: " + std::to_string(failures));
    r.set("triples", defects.size());
    r.set("jacobi_failures", failures);
    add_witnesses(r, ws);
    return r;
}

Report cmd_action_check(const Loaded& in, const Settings&) {
    Report r("action-check", in.label, in.digest);
    const PoissonStructure& P = need_structure(in);
    const ActionSpec& action = need_action(in);
    describe_action(r, action);
    const ActionCertificate cert = is_poisson_action(P, action);
    r.line("checks: " + std::to_string(cert.checks) + ", failing: " + std::to_string(cert.witnesses.size()));
    r.set("action_checks", cert.checks);
    r.flag("poisson_action", cert.pass);
    add_witnesses(r, cert.witnesses);
    if (!cert.pass && cert.witnesses.empty()) r.witness("action check failed");
    return r;
}

Report cmd_fixed_set(const Loaded& in, const Settings& s) {
    Report r("fixed-set", in.label, in.digest);
    const PoissonStructure& P = need_structure(in);
    const Chart& c = P.chart();
    LinearSubmanifold N;
    if (in.problem.submanifold) {
        N = make_subspace(c, *in.problem.submanifold);
        r.line("submanifold: given by [submanifold]");
        r.set("source", "submanifold");
    } else {
        const ActionSpec& action = need_action(in);
        describe_action(r, action);
        N = fixed_subspace(action);
        r.set("source", "action");
    }
    r.line("dimension: " + std::to_string(N.dimension()));
    r.line("basis: " + columns_string(N.basis));
    r.line("equations: " + rows_string(N.equations));
    r.set("dimension", static_cast<std::size_t>(N.dimension()));
    r.set("basis", columns_string(N.basis));
    r.set("equations", rows_string(N.equations));

    if (in.problem.action && !in.problem.submanifold) {
        const InvariantMetric metric = invariant_metric(*in.problem.action);
        const SplitContext ctx = make_split_context(P, N, metric, *in.problem.action);
        const SharpCertificate sharp = check_sharp_E0(ctx);
        r.line("invariant metric: " + format_matrix(metric.matrix));
        r.line("complement E: " + columns_string(ctx.E.basis));
        r.line(std::string("sharp of the annihilator of E lies in TN: ") + (sharp.pass ? "yes" : "no"));
        r.set("metric", format_matrix(metric.matrix));
        r.set("complement", columns_string(ctx.E.basis));
        r.flag("sharp_annihilator_tangent", sharp.pass);
        for (const auto& chk : sharp.checks)
            if (!chk.pass) r.witness("sharp of " + vector_string(chk.covector) + " leaves TN");
    }

    const auto points = sample_points(P, N, s.points, s.seed);
    const auto dims = check_eq1(P, N, points);
    Eigen::Index worst = 0;
    std::size_t bad = 0;
    std::vector<std::string> ws;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        worst = std::max(worst, dims[k]);
        if (dims[k] == 0) continue;
        ++bad;
        ws.push_back("dim(TN ∩ #TN⁰) = " + std::to_string(dims[k]) + " at " + point_string(points[k]));
    }
    r.line("TN ∩ #(TN⁰) at " + std::to_string(dims.size()) + " sample points: max dimension " +
           std::to_string(worst) + ", nonzero at " + std::to_string(bad));
    r.set("points", dims.size());
    r.set("intersection_max_dimension", static_cast<std::size_t>(worst));
    r.set("intersection_nonzero_points", bad);
    add_witnesses(r, ws);
    return r;
}

Report cmd_reduce(const Loaded& in, const Settings& s) {
    Report r("reduce", in.label, in.digest);
    const PoissonStructure& P = need_structure(in);
    const ActionSpec& action = need_action(in);
    describe_action(r, action);
    ReductionOptions options;
    options.points = s.points;
    options.trials = s.trials;
    options.function_pairs = s.pairs;
    options.seed = s.seed;
    ReductionReport rep;
    try {
        rep = reduce_fixed_set(P, action, options);
    } catch (const ActionNotPoisson& e) {
        r.line("the action is not by Poisson maps; no reduction performed");
        r.set("action_checks", e.certificate.checks);
        r.flag("poisson_action", false);
        add_witnesses(r, e.certificate.witnesses);
        if (e.certificate.witnesses.empty()) r.witness("action check failed");
        return r;
    }
    r.set("action_checks", rep.action.checks);
    r.flag("poisson_action", true);
    r.line("invariant metric: " + format_matrix(rep.metric.matrix) + (rep.metric_pass ? "" : "  [NOT invariant/positive]"));
    r.line("fixed set: dimension " + std::to_string(rep.fixed_set.dimension()) + ", basis " +
           columns_string(rep.fixed_set.basis));
    r.line("complement E: " + columns_string(rep.complement.basis));
    r.line(std::string("sharp of the annihilator of E lies in TN: ") + (rep.sharp.pass ? "yes" : "no"));
    r.line(std::string("mixed block vanishes on N: ") + (rep.split_valid ? "yes" : "no"));
    r.set("metric", format_matrix(rep.metric.matrix));
    r.flag("metric_invariant_positive", rep.metric_pass);
    r.set("fixed_dimension", static_cast<std::size_t>(rep.fixed_set.dimension()));
    r.set("fixed_basis", columns_string(rep.fixed_set.basis));
    r.set("complement", columns_string(rep.complement.basis));
    r.flag("sharp_annihilator_tangent", rep.sharp.pass);
    r.flag("split_valid", rep.split_valid);
    if (!rep.metric_pass) r.witness("averaged metric is not invariant and positive definite");
    for (const auto& chk : rep.sharp.checks)
        if (!chk.pass) r.witness("sharp of " + vector_string(chk.covector) + " leaves TN");
    if (!rep.split_valid) r.witness("mixed block of the bivector does not vanish on the fixed set");

    if (rep.induced) {
        const Chart& nc = rep.induced->chart();
        r.blank();
        r.line("induced structure:");
        add_lines(r, format_structure(*rep.induced));
        r.blank();
        r.line("induced Jacobi failures: " + std::to_string(rep.jacobi_failures.size()));
        for (const auto& d : rep.jacobi_failures)
            r.witness("induced Jacobiator {" + nc.symbols()[d.i] + "," + nc.symbols()[d.j] + "," + nc.symbols()[d.k] +
                      "} = " + nc.format(d.value));
        add_table(r, "induced", *rep.induced);
    } else if (rep.fixed_set.dimension() == 0) {
        r.line("fixed set is a point; the induced structure is zero");
    }
    r.set("induced_jacobi_failures", rep.jacobi_failures.size());

    Eigen::Index worst = 0;
    std::size_t bad = 0;
    for (auto d : rep.eq1_dimensions) {
        worst = std::max(worst, d);
        bad += d != 0;
    }
    r.line("TN ∩ #(TN⁰) at " + std::to_string(rep.eq1_dimensions.size()) + " sample points: max dimension " +
           std::to_string(worst));
    r.set("points", rep.eq1_dimensions.size());
    r.set("intersection_max_dimension", static_cast<std::size_t>(worst));
    if (bad) r.witness("TN ∩ #(TN⁰) nonzero at " + std::to_string(bad) + " sample points");

    r.line("split and extension brackets agree on " + std::to_string(rep.agreement_pairs) + " random pairs");
    r.line("perturbed extensions: " + std::to_string(rep.independence.trials) + " trials (" +
           std::to_string(rep.independence.nontrivial) + " nonzero perturbations), " +
           std::to_string(rep.independence.counterexamples.size()) + " mismatches");
    r.set("agreement_pairs", rep.agreement_pairs);
    r.set("independence_trials", rep.independence.trials);
    r.set("independence_nontrivial", rep.independence.nontrivial);
    r.set("independence_mismatches", rep.independence.counterexamples.size());
    add_witnesses(r, rep.independence.counterexamples);
    if (!rep.pass() && r.pass()) r.witness("reduction certificate incomplete");
    return r;
}

// ---------------------------------------------------------------------------
// Simplex tasks

struct SimplexInput {
    std::optional<SkewParamMatrix> A;
    std::string label;
    std::string digest;
    std::string source;
};

SimplexInput simplex_input(const Options& opt, const Settings& s) {
    std::optional<Loaded> file;
    if (!opt.file.empty()) file = load(opt.file);
    const TaskParams params = file ? file->problem.params : TaskParams{};
    if (opt.symbolic && opt.random) throw InputError("--symbolic and --random are exclusive");
    std::optional<std::size_t> n = opt.n ? opt.n : params.n;
    SimplexInput out;
    if (opt.random || opt.symbolic || (params.symbolic && !params.A)) {
        if (!n) throw InputError("give n with --n or in [params]");
        if (*n < 1) throw InputError("n must be at least 1");
        if (opt.random) {
            out.A = SkewParamMatrix::numeric(random_skew_matrix(*n, s.seed));
            out.source = "random";
        } else {
            if (*n > 2) throw InputError("symbolic mode is limited to n <= 2");
            out.A = SkewParamMatrix::symbolic(*n);
            out.source = "symbolic";
        }
    } else if (params.A) {
        if (n && static_cast<Eigen::Index>(*n + 1) != params.A->rows())
            throw InputError("A must be " + std::to_string(*n + 1) + "x" + std::to_string(*n + 1) + " for n = " +
                             std::to_string(*n));
        out.A = SkewParamMatrix::numeric(*params.A);
        out.source = "file";
    } else {
        throw InputError("no matrix A: give [params] A or symbolic = true, --symbolic, or --random");
    }
    if (file) {
        out.label = file->label;
        out.digest = file->digest;
    } else {
        out.label = "n=" + std::to_string(out.A->n()) + ", " + out.source + " A" +
                    (opt.random ? " (seed " + std::to_string(s.seed) + ")" : "");
        out.digest = sha256_hex(out.label);
    }
    return out;
}

std::string a_string(const SkewParamMatrix& A) {
    if (A.is_symbolic()) return "symbolic " + names_string(A.parameters());
    RationalMatrix m(A.entries().rows(), A.entries().cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = A.entries()(i, j).constant_value();
    return format_matrix(m);
}

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

void stratification_lines(Report& r, const PoissonStructure& S, const StratificationCertificate& cert) {
    const Chart& c = S.chart();
    std::size_t a = 0, b = 0, bad = 0;
    for (const auto& chk : cert.checks) {
        (chk.condition == 'a' ? a : b) += 1;
        if (chk.pass) continue;
        ++bad;
        if (chk.condition == 'a')
            r.witness(c.symbols()[chk.l] + " does not divide {" + c.symbols()[chk.i] + "," + c.symbols()[chk.l] +
                      "} = " + to_string(chk.bracket, c.symbols()));
        else
            r.witness("1 - sum(mu) does not divide {" + c.symbols()[chk.i] + ",sum(mu)} = " +
                      to_string(chk.bracket, c.symbols()));
    }
    r.line("face conditions: " + std::to_string(a) + " checks mu_l | {mu_i,mu_l}, " + std::to_string(b) +
           " checks (1 - sum mu) | {mu_i, sum mu}, failing " + std::to_string(bad));
    r.set("divisibility_a", a);
    r.set("divisibility_b", b);
    r.set("divisibility_failures", bad);
}

void face_count_lines(Report& r, std::size_t n, const std::vector<FaceDescriptor>& faces) {
    std::map<std::size_t, std::size_t> by_dim;
    for (const auto& f : faces) ++by_dim[f.dimension];
    std::string summary;
    for (std::size_t d = 0; d <= n; ++d) {
        const std::size_t expected = binomial(n + 1, n - d);
        summary += (d ? ", " : "") + std::string("dim ") + std::to_string(d) + ": " + std::to_string(by_dim[d]);
        r.set("faces.dim" + std::to_string(d), by_dim[d]);
        if (by_dim[d] != expected)
            r.witness("dimension " + std::to_string(d) + " has " + std::to_string(by_dim[d]) + " faces, expected " +
                      std::to_string(expected));
    }
    r.line("faces: " + std::to_string(faces.size()) + " (" + summary + ")");
    r.set("faces", faces.size());
}

std::string factored(const PoissonStructure& S, std::size_t i, std::size_t j) {
    const Chart& c = S.chart();
    const RationalFunction& f = S.entry(i, j);
    if (f.is_zero()) return "0";
    const RationalFunction rest = f / (RationalFunction::variable(i) * RationalFunction::variable(j));
    return "(" + c.format(rest) + ")*" + c.symbols()[i] + "*" + c.symbols()[j];
}

Report cmd_simplex(const Options& opt, const Settings& s) {
    const SimplexInput in = simplex_input(opt, s);
    const SkewParamMatrix& A = *in.A;
    const std::size_t n = A.n();
    Report r("simplex", in.label, in.digest);
    r.line("n = " + std::to_string(n) + ", A = " + a_string(A));
    r.set("n", n);
    r.set("A", a_string(A));
    r.set("A.source", in.source);

    const SimplexDerivation derivation = derive_simplex_bracket(A);
    r.line("derived {mu_i,mu_j} from the quadratic bracket for " + std::to_string(derivation.checks.size()) +
           " pairs; all equal the closed formula composed with mu");
    r.set("pairs_certified", derivation.checks.size());

    const PoissonStructure S = simplex_bracket(A);
    r.blank();
    r.line("simplex bracket:");
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            r.line("  {" + S.chart().symbols()[i] + "," + S.chart().symbols()[j] + "} = " + factored(S, i, j));
    r.blank();
    r.line("as a problem file:");
    add_lines(r, format_structure(S));
    r.blank();
    add_table(r, "simplex", S);

    const auto failures = jacobi_failures(S);
    r.line("Jacobi failures: " + std::to_string(failures.size()));
    r.set("jacobi_failures", failures.size());
    for (const auto& d : failures)
        r.witness("Jacobiator {mu" + std::to_string(d.i) + ",mu" + std::to_string(d.j) + ",mu" + std::to_string(d.k) +
                  "} = " + S.chart().format(d.value));

    stratification_lines(r, S, check_face_stratification(S));
    face_count_lines(r, n, enumerate_faces(n));

    const ConventionComparison conv = compare_conjugate_convention(A);
    std::string verdict;
    if (conv.factor) verdict = "every bracket is " + to_string(*conv.factor) + " times the formula";
    else if (conv.consistent) verdict = "both sides vanish identically after composing with mu";
    else verdict = "no uniform factor";
    r.line("conjugate-symmetric convention ({zb_i,zb_j} = a_ij zb_i zb_j): " + verdict);
    r.set("conjugate_factor", conv.factor ? to_string(*conv.factor) : (conv.consistent ? "undefined" : "none"));
    return r;
}

Report cmd_stratify(const Options& opt, const Settings& s) {
    const SimplexInput in = simplex_input(opt, s);
    const SkewParamMatrix& A = *in.A;
    const std::size_t n = A.n();
    Report r("stratify", in.label, in.digest);
    r.line("n = " + std::to_string(n) + ", A = " + a_string(A));
    r.set("n", n);
    r.set("A", a_string(A));
    const PoissonStructure S = simplex_bracket(A);
    if (!S.is_verified()) r.witness("the simplex bracket fails Jacobi");
    stratification_lines(r, S, check_face_stratification(S));
    const auto faces = enumerate_faces(n);
    face_count_lines(r, n, faces);
    r.blank();
    for (std::size_t k = 0; k < faces.size(); ++k) {
        const auto& face = faces[k];
        const PoissonStructure F = face_bracket(S, face);
        std::string zeros;
        for (auto l : face.vanishing_set) zeros += (zeros.empty() ? "" : ",") + S.chart().symbols()[l];
        const std::string name = "face " + std::to_string(k) + " (dim " + std::to_string(face.dimension) +
                                 (zeros.empty() ? ", interior" : ", " + zeros + " = 0") + ")";
        const auto entries = upper_entries(F);
        r.line(name + ": " + (entries.empty() ? "zero bracket" : std::to_string(entries.size()) + " bracket(s)"));
        for (const auto& [i, j, f] : entries)
            r.line("  {" + F.chart().symbols()[i] + "," + F.chart().symbols()[j] + "} = " + F.chart().format(f));
        r.set("face." + std::to_string(k), "dim " + std::to_string(face.dimension) + " zero " +
                                               (zeros.empty() ? "-" : zeros) + " entries " +
                                               std::to_string(entries.size()));
        if (!F.is_verified()) r.witness(name + " bracket fails Jacobi");
    }
    return r;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"Exact Poisson reduction workbench", "poissonfp"};
    app.require_subcommand(1);
    app.add_option("--seed", opt.seed, "RNG seed (default 1)");
    app.add_option("--points", opt.points, "sample points for the rank condition (default 100)");
    app.add_option("--trials", opt.trials, "perturbed-extension trials (default 20)");
    app.add_option("--pairs", opt.pairs, "random function pairs for bracket agreement (default 20)");
    app.add_flag("--machine", opt.machine, "print only the key=value block");

    const std::vector<std::pair<std::string, std::string>> file_commands = {
        {"jacobi", "check the Jacobi identity of a bracket table"},
        {"action-check", "check that the action is by Poisson maps"},
        {"fixed-set", "fixed subspace (or [submanifold]) and the rank condition"},
        {"reduce", "induced Poisson structure on the fixed set"},
    };
    for (const auto& [name, help] : file_commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("file", opt.file, "problem file")->required();
    }
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"simplex", "derive and verify the bracket on the simplex"},
             {"stratify", "faces of the simplex and their brackets"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("file", opt.file, "problem file with [params] n and A");
        sub->add_option("--n", opt.n, "simplex dimension");
        sub->add_flag("--symbolic", opt.symbolic, "formal entries a_ij (n <= 2)");
        sub->add_flag("--random", opt.random, "seeded random rational A");
    }

    CommandResult result;
    std::ostringstream out, err;
    std::vector<std::string> argv_store{"poissonfp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {code == 0 ? kPass : kInputError, out.str(), err.str()};
    }
    for (const auto* sub : app.get_subcommands()) opt.command = sub->get_name();

    const auto start = std::chrono::steady_clock::now();
    try {
        std::optional<Report> report;
        if (opt.command == "simplex" || opt.command == "stratify") {
            TaskParams params;
            if (!opt.file.empty()) params = load(opt.file).problem.params;
            const Settings s = settings(opt, params);
            report = opt.command == "simplex" ? cmd_simplex(opt, s) : cmd_stratify(opt, s);
        } else {
            const Loaded in = load(opt.file);
            const Settings s = settings(opt, in.problem.params);
            if (opt.command == "jacobi") report = cmd_jacobi(in, s);
            else if (opt.command == "action-check") report = cmd_action_check(in, s);
            else if (opt.command == "fixed-set") report = cmd_fixed_set(in, s);
            else report = cmd_reduce(in, s);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (opt.machine) out << report->machine();
        else out << report->human(seconds) << "\n--- machine ---\n" << report->machine();
        result.code = report->pass() ? kPass : kFail;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        result.code = kInputError;
    } catch (const MathError& e) {
        err << "error: " << e.what() << '\n';
        result.code = kInputError;
    } catch (const CertificationError& e) {
        err << "internal: " << e.what() << '\n';
        result.code = kInternal;
    } catch (const std::exception& e) {
        err << "internal: " << e.what() << '\n';
        result.code = kInternal;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace poisson::cli
