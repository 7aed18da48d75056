#include "poisson/group_action.hpp"

#include "poisson/errors.hpp"
#include "poisson/linalg.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace poisson {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool same(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

// Weight of every term must agree; returns nullopt otherwise.
std::optional<long> homogeneous_weight(const Polynomial& p, const MatrixX<long>& weights, Eigen::Index factor) {
    std::optional<long> w;
    for (const auto& t : p.terms()) {
        long tw = 0;
        for (std::size_t v = 0; v < t.monomial.size(); ++v)
            if (idx(v) < weights.cols()) tw += weights(factor, idx(v)) * t.monomial[v];
        if (w && *w != tw) return std::nullopt;
        w = tw;
    }
    return w.value_or(0);
}

}  // namespace

void validate(const FiniteActionSpec& spec) {
    const auto d = idx(spec.chart.dimension());
    if (spec.max_order == 0) throw InputError("max_order must be positive");
    for (const auto& g : spec.generators) {
        if (g.rows() != d || g.cols() != d) throw InputError("generator does not match the chart dimension");
        if (linalg::determinant(g).is_zero()) throw InputError("generator is singular");
    }
}

void validate(const TorusActionSpec& spec) {
    std::set<std::size_t> used;
    for (const auto& [z, zb] : spec.pairs) {
        if (z >= spec.chart.dimension() || zb >= spec.chart.dimension())
            throw InputError("torus pair refers to a non-coordinate");
        if (z == zb || !used.insert(z).second || !used.insert(zb).second)
            throw InputError("a coordinate belongs to more than one torus pair");
    }
    if (spec.weights.cols() != idx(spec.pairs.size())) throw InputError("weight matrix needs one column per pair");
}

const Chart& chart_of(const ActionSpec& action) {
    return std::visit([](const auto& a) -> const Chart& { return a.chart; }, action);
}

MatrixX<long> coordinate_weights(const TorusActionSpec& spec) {
    MatrixX<long> w = MatrixX<long>::Zero(spec.weights.rows(), idx(spec.chart.dimension()));
    for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
        w.col(idx(spec.pairs[p].first)) = spec.weights.col(idx(p));
        w.col(idx(spec.pairs[p].second)) = -spec.weights.col(idx(p));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Metrics

bool is_positive_definite(const InvariantMetric& metric) {
    const RationalMatrix& M = metric.matrix;
    const auto d = M.rows();
    if (M.cols() != d || !linalg::is_symmetric(M)) return false;
    if (metric.conjugate_pairs.empty()) return linalg::is_positive_definite(M);

    // Real coordinates: unpaired x_v, and z = x + i y, z̄ = x − i y per pair.
    // C = Cr + i Ci maps real coordinates to chart coordinates.
    RationalMatrix Cr = RationalMatrix::Zero(d, d);
    RationalMatrix Ci = RationalMatrix::Zero(d, d);
    std::vector<bool> paired(static_cast<std::size_t>(d), false);
    for (const auto& [z, zb] : metric.conjugate_pairs) {
        paired[z] = paired[zb] = true;
        Cr(idx(z), idx(z)) = 1;
        Cr(idx(zb), idx(z)) = 1;
        Ci(idx(z), idx(zb)) = 1;
        Ci(idx(zb), idx(zb)) = -1;
    }
    for (Eigen::Index v = 0; v < d; ++v)
        if (!paired[static_cast<std::size_t>(v)]) Cr(v, v) = 1;
    const RationalMatrix real = Cr.transpose() * M * Cr - Ci.transpose() * M * Ci;
    const RationalMatrix imag = Cr.transpose() * M * Ci + Ci.transpose() * M * Cr;
    return imag.isZero(0) && linalg::is_positive_definite(real);
}

bool is_invariant(const InvariantMetric& metric, const ActionSpec& action) {
    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        for (const auto& g : enumerate_group(*fin))
            if (!same(RationalMatrix(g.transpose() * metric.matrix * g), metric.matrix)) return false;
        return true;
    }
    const auto w = coordinate_weights(std::get<TorusActionSpec>(action));
    for (Eigen::Index u = 0; u < metric.matrix.rows(); ++u)
        for (Eigen::Index v = 0; v < metric.matrix.cols(); ++v)
            if (!metric.matrix(u, v).is_zero() && !(w.col(u) + w.col(v)).isZero()) return false;
    return true;
}

InvariantMetric average_metric(const FiniteActionSpec& spec, const RationalMatrix& seed) {
    const auto d = idx(spec.chart.dimension());
    if (seed.rows() != d || seed.cols() != d) throw InputError("seed metric does not match the chart dimension");
    if (!linalg::is_positive_definite(seed)) throw InputError("seed metric is not symmetric positive definite");
    const auto group = enumerate_group(spec);
    RationalMatrix sum = RationalMatrix::Zero(d, d);
    for (const auto& g : group) sum += g.transpose() * seed * g;
    sum /= Rational(static_cast<long>(group.size()));
    return {spec.chart, std::move(sum), {}};
}

InvariantMetric torus_metric(const TorusActionSpec& spec) {
    const auto d = idx(spec.chart.dimension());
    RationalMatrix M = RationalMatrix::Identity(d, d);
    for (const auto& [z, zb] : spec.pairs) {
        M(idx(z), idx(z)) = 0;
        M(idx(zb), idx(zb)) = 0;
        M(idx(z), idx(zb)) = Rational(1, 2);
        M(idx(zb), idx(z)) = Rational(1, 2);
    }
    return {spec.chart, std::move(M), spec.pairs};
}

InvariantMetric invariant_metric(const ActionSpec& action) {
    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        const auto d = idx(fin->chart.dimension());
        return average_metric(*fin, RationalMatrix::Identity(d, d));
    }
    return torus_metric(std::get<TorusActionSpec>(action));
}

// ---------------------------------------------------------------------------
// Subspaces

bool LinearSubmanifold::contains(std::span<const Rational> point) const {
    if (point.size() < chart.dimension()) return false;
    RationalVector x(idx(chart.dimension()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = point[static_cast<std::size_t>(i)];
    return RationalVector(equations * x).isZero(0);
}

LinearSubmanifold make_subspace(const Chart& chart, const RationalMatrix& basis) {
    const auto d = idx(chart.dimension());
    if (basis.rows() != d) throw InputError("subspace basis does not match the chart dimension");
    if (linalg::rank(basis) != basis.cols()) throw InputError("subspace basis is not linearly independent");
    RationalMatrix equations = linalg::nullspace(RationalMatrix(basis.transpose())).transpose();
    return {chart, basis, std::move(equations)};
}

std::vector<RationalMatrix> enumerate_group(const FiniteActionSpec& spec) {
    validate(spec);
    const auto d = idx(spec.chart.dimension());
    std::vector<RationalMatrix> elements{RationalMatrix::Identity(d, d)};
    std::deque<std::size_t> frontier{0};
    auto known = [&](const RationalMatrix& m) {
        for (const auto& e : elements)
            if (same(e, m)) return true;
        return false;
    };
    while (!frontier.empty()) {
        const RationalMatrix current = elements[frontier.front()];
        frontier.pop_front();
        for (const auto& g : spec.generators) {
            RationalMatrix next = g * current;
            if (known(next)) continue;
            if (elements.size() >= spec.max_order)
                throw MathError("group closure not reached within " + std::to_string(spec.max_order) + " elements");
            elements.push_back(std::move(next));
            frontier.push_back(elements.size() - 1);
        }
    }
    // Closed under products by generators and finite, hence closed under inverses.
    return elements;
}

ActionCertificate is_poisson_action(const PoissonStructure& P, const ActionSpec& action) {
    if (!(chart_of(action) == P.chart())) throw InputError("action chart does not match the Poisson structure");
    ActionCertificate cert;
    const Chart& chart = P.chart();

    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        const auto group = enumerate_group(*fin);
        for (std::size_t k = 0; k < group.size(); ++k) {
            ++cert.checks;
            const PoissonStructure pushed = pushforward_linear(P, group[k]);
            if (pushed == P) continue;
            cert.pass = false;
            for (std::size_t i = 0; i < P.dimension(); ++i)
                for (std::size_t j = i + 1; j < P.dimension(); ++j)
                    if (!(pushed.entry(i, j) == P.entry(i, j))) {
                        std::ostringstream os;
                        os << "element " << k << " [" << format_matrix(group[k]) << "]: {" << chart.symbols()[i] << ","
                           << chart.symbols()[j] << "} becomes " << chart.format(pushed.entry(i, j)) << ", expected "
                           << chart.format(P.entry(i, j));
                        cert.witnesses.push_back(os.str());
                    }
        }
        return cert;
    }

    const auto& torus = std::get<TorusActionSpec>(action);
    validate(torus);
    const auto w = coordinate_weights(torus);
    for (std::size_t i = 0; i < P.dimension(); ++i)
        for (std::size_t j = i + 1; j < P.dimension(); ++j) {
            const auto& e = P.entry(i, j);
            if (e.is_zero()) continue;
            for (Eigen::Index k = 0; k < w.rows(); ++k) {
                ++cert.checks;
                const long expected = w(k, idx(i)) + w(k, idx(j));
                const auto wn = homogeneous_weight(e.numerator(), w, k);
                const auto wd = homogeneous_weight(e.denominator(), w, k);
                if (wn && wd && *wn - *wd == expected) continue;
                cert.pass = false;
                std::ostringstream os;
                os << "torus factor " << k << ": {" << chart.symbols()[i] << "," << chart.symbols()[j]
                   << "} = " << chart.format(e) << " is not of weight " << expected;
                cert.witnesses.push_back(os.str());
            }
        }
    return cert;
}

LinearSubmanifold fixed_subspace(const ActionSpec& action) {
    const Chart& chart = chart_of(action);
    const auto d = idx(chart.dimension());
    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        validate(*fin);
        if (fin->generators.empty()) return make_subspace(chart, RationalMatrix::Identity(d, d));
        RationalMatrix stacked(d * idx(fin->generators.size()), d);
        for (std::size_t k = 0; k < fin->generators.size(); ++k)
            stacked.middleRows(idx(k) * d, d) = fin->generators[k] - RationalMatrix::Identity(d, d);
        return make_subspace(chart, linalg::nullspace(stacked));
    }
    const auto& torus = std::get<TorusActionSpec>(action);
    validate(torus);
    const auto w = coordinate_weights(torus);
    std::vector<Eigen::Index> fixed;
    for (Eigen::Index v = 0; v < d; ++v)
        if (w.col(v).isZero()) fixed.push_back(v);
    RationalMatrix basis = RationalMatrix::Zero(d, idx(fixed.size()));
    for (std::size_t k = 0; k < fixed.size(); ++k) basis(fixed[k], idx(k)) = 1;
    return make_subspace(chart, basis);
}

LinearSubmanifold orthogonal_complement(const LinearSubmanifold& N, const InvariantMetric& metric) {
    if (!(N.chart == metric.chart)) throw InputError("metric chart does not match the subspace");
    const RationalMatrix E = linalg::nullspace(RationalMatrix(N.basis.transpose() * metric.matrix));
    RationalMatrix joined(N.basis.rows(), N.basis.cols() + E.cols());
    joined << N.basis, E;
    if (linalg::rank(joined) != joined.rows()) throw MathError("degenerate metric: N and its complement do not span");
    return make_subspace(N.chart, E);
}

// ---------------------------------------------------------------------------
// Functions

RationalFunction compose_linear(const RationalFunction& f, const RationalMatrix& M, std::size_t symbol_count) {
    std::vector<RationalFunction> images;
    images.reserve(symbol_count);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        RationalFunction xi;
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (!M(i, j).is_zero()) xi += RationalFunction(M(i, j)) * RationalFunction::variable(static_cast<std::size_t>(j));
        images.push_back(std::move(xi));
    }
    return compose(f, images);
}

RationalFunction group_average(const RationalFunction& f, const ActionSpec& action) {
    const Chart& chart = chart_of(action);
    if (const auto* fin = std::get_if<FiniteActionSpec>(&action)) {
        const auto group = enumerate_group(*fin);
        RationalFunction sum;
        for (const auto& g : group) sum += compose_linear(f, g, chart.symbol_count());
        return sum * RationalFunction(Rational(1, static_cast<long>(group.size())));
    }
    if (!f.is_polynomial()) throw InputError("torus averaging needs a polynomial");
    const auto w = coordinate_weights(std::get<TorusActionSpec>(action));
    std::vector<Term> kept;
    for (const auto& t : f.numerator().terms()) {
        bool zero_weight = true;
        for (Eigen::Index k = 0; k < w.rows() && zero_weight; ++k) {
            long tw = 0;
            for (std::size_t v = 0; v < t.monomial.size(); ++v)
                if (idx(v) < w.cols()) tw += w(k, idx(v)) * t.monomial[v];
            zero_weight = tw == 0;
        }
        if (zero_weight) kept.push_back(t);
    }
    return RationalFunction(Polynomial::from_terms(std::move(kept)));
}

}  // namespace poisson
