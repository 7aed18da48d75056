#include "poisson/poisson_structure.hpp"

#include "poisson/errors.hpp"
#include "poisson/expr_parser.hpp"
#include "poisson/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace poisson {

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::vector<std::string> coordinates, std::vector<std::string> parameters)
    : dimension_(coordinates.size()) {
    if (coordinates.empty()) throw InputError("a chart needs at least one coordinate");
    symbols_ = std::move(coordinates);
    symbols_.insert(symbols_.end(), parameters.begin(), parameters.end());
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (!valid_identifier(s)) throw InputError("invalid symbol name '" + s + "'");
        if (!seen.insert(s).second) throw InputError("duplicate symbol name '" + s + "'");
    }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
    const auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
}

std::size_t Chart::coordinate_index(std::string_view name) const {
    const auto i = index_of(name);
    if (!i || *i >= dimension_) throw InputError("'" + std::string(name) + "' is not a coordinate of the chart");
    return *i;
}

RationalFunction Chart::parse(std::string_view text) const {
    return parse_expr(text, symbols_);
}

// ---------------------------------------------------------------------------
// PoissonStructure

PoissonStructure::PoissonStructure(Chart chart, RFMatrix pi) : chart_(std::move(chart)), pi_(std::move(pi)) {
    const auto d = idx(chart_.dimension());
    if (pi_.rows() != d || pi_.cols() != d) throw InputError("bivector matrix does not match the chart dimension");
    for (Eigen::Index i = 0; i < d; ++i) {
        if (!pi_(i, i).is_zero()) throw InputError("bivector has a nonzero diagonal entry");
        for (Eigen::Index j = i + 1; j < d; ++j) {
            if (!(pi_(i, j) == -pi_(j, i))) throw InputError("bivector matrix is not skew-symmetric");
            if (!chart_.owns(pi_(i, j))) throw InputError("bivector entry uses symbols outside the chart");
        }
    }
}

PoissonStructure PoissonStructure::zero(Chart chart) {
    const auto d = idx(chart.dimension());
    return PoissonStructure(std::move(chart), RFMatrix::Constant(d, d, RationalFunction()));
}

PoissonStructure PoissonStructure::from_entries(
    Chart chart, const std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>>& entries) {
    const auto d = idx(chart.dimension());
    RFMatrix pi = RFMatrix::Constant(d, d, RationalFunction());
    std::vector<std::vector<bool>> set(chart.dimension(), std::vector<bool>(chart.dimension(), false));
    for (const auto& [i, j, value] : entries) {
        if (i >= chart.dimension() || j >= chart.dimension()) throw InputError("bracket entry outside the chart");
        if (i == j) throw InputError("diagonal bracket entry {" + chart.symbols()[i] + "," + chart.symbols()[i] + "}");
        const auto [a, b] = std::minmax(i, j);
        const RationalFunction v = i < j ? value : -value;
        if (set[a][b]) {
            if (!(pi(idx(a), idx(b)) == v))
                throw InputError("conflicting entries for {" + chart.symbols()[a] + "," + chart.symbols()[b] + "}");
            continue;
        }
        set[a][b] = true;
        pi(idx(a), idx(b)) = v;
        pi(idx(b), idx(a)) = -v;
    }
    return PoissonStructure(std::move(chart), std::move(pi));
}

PoissonStructure PoissonStructure::verify() const {
    PoissonStructure out = *this;
    out.verified_ = jacobi_failures(*this).empty();
    return out;
}

// ---------------------------------------------------------------------------
// Brackets and fields

namespace {

RFVector gradient(const Chart& chart, const RationalFunction& f) {
    RFVector g(idx(chart.dimension()));
    for (std::size_t i = 0; i < chart.dimension(); ++i) g(idx(i)) = derivative(f, i);
    return g;
}

}  // namespace

RationalFunction bracket(const PoissonStructure& P, const RationalFunction& f, const RationalFunction& g) {
    const Chart& chart = P.chart();
    if (!chart.owns(f) || !chart.owns(g)) throw InputError("bracket argument uses symbols outside the chart");
    const RFVector df = gradient(chart, f);
    const RFVector dg = gradient(chart, g);
    RationalFunction sum;
    const auto d = idx(chart.dimension());
    for (Eigen::Index i = 0; i < d; ++i) {
        if (df(i).is_zero()) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i == j || dg(j).is_zero() || P.matrix()(i, j).is_zero()) continue;
            sum += P.matrix()(i, j) * df(i) * dg(j);
        }
    }
    return sum;
}

CovectorExpr differential(const Chart& chart, const RationalFunction& f) {
    if (!chart.owns(f)) throw InputError("function uses symbols outside the chart");
    return {chart, gradient(chart, f)};
}

VectorFieldExpr sharp(const PoissonStructure& P, const CovectorExpr& xi) {
    if (!(xi.chart == P.chart())) throw InputError("covector chart does not match the Poisson structure");
    if (xi.components.size() != idx(P.dimension())) throw InputError("covector has the wrong number of components");
    RFVector out(xi.components.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        RationalFunction s;
        for (Eigen::Index j = 0; j < out.size(); ++j)
            if (!xi.components(j).is_zero() && !P.matrix()(i, j).is_zero()) s += P.matrix()(i, j) * xi.components(j);
        out(i) = std::move(s);
    }
    return {P.chart(), std::move(out)};
}

VectorFieldExpr hamiltonian_vf(const PoissonStructure& P, const RationalFunction& f) {
    return sharp(P, differential(P.chart(), f));
}

RationalFunction apply(const VectorFieldExpr& X, const RationalFunction& g) {
    RationalFunction s;
    for (Eigen::Index i = 0; i < X.components.size(); ++i)
        if (!X.components(i).is_zero()) s += X.components(i) * derivative(g, static_cast<std::size_t>(i));
    return s;
}

// ---------------------------------------------------------------------------
// Jacobi

std::vector<JacobiDefect> jacobi_defect(const PoissonStructure& P) {
    const std::size_t d = P.dimension();
    // dpi[l](a,b) = ∂_l π^{ab}
    std::vector<RFMatrix> dpi(d, RFMatrix::Constant(idx(d), idx(d), RationalFunction()));
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) {
                RationalFunction v = derivative(P.entry(a, b), l);
                dpi[l](idx(b), idx(a)) = -v;
                dpi[l](idx(a), idx(b)) = std::move(v);
            }

    auto cyclic_term = [&](std::size_t i, std::size_t j, std::size_t k) {
        RationalFunction s;
        for (std::size_t l = 0; l < d; ++l) {
            const auto& p = P.entry(i, l);
            const auto& q = dpi[l](idx(j), idx(k));
            if (!p.is_zero() && !q.is_zero()) s += p * q;
        }
        return s;
    };

    std::vector<JacobiDefect> out;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k)
                out.push_back({i, j, k, cyclic_term(i, j, k) + cyclic_term(j, k, i) + cyclic_term(k, i, j)});
    return out;
}

std::vector<JacobiDefect> jacobi_failures(const PoissonStructure& P) {
    auto all = jacobi_defect(P);
    std::erase_if(all, [](const JacobiDefect& d) { return d.value.is_zero(); });
    return all;
}

// ---------------------------------------------------------------------------
// Linear maps

PoissonStructure pushforward_linear(const PoissonStructure& P, const RationalMatrix& T) {
    const auto d = idx(P.dimension());
    if (T.rows() != d || T.cols() != d) throw InputError("linear map does not match the chart dimension");
    const RationalMatrix Tinv = linalg::inverse(T);

    std::vector<RationalFunction> images;
    images.reserve(P.chart().symbol_count());
    for (Eigen::Index i = 0; i < d; ++i) {
        RationalFunction xi;
        for (Eigen::Index j = 0; j < d; ++j)
            if (!Tinv(i, j).is_zero()) xi += RationalFunction(Tinv(i, j)) * RationalFunction::variable(static_cast<std::size_t>(j));
        images.push_back(std::move(xi));
    }
    RFMatrix composed(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            composed(i, j) = P.matrix()(i, j).is_zero() ? RationalFunction() : compose(P.matrix()(i, j), images);

    const RFMatrix Tf = T.cast<RationalFunction>();
    RFMatrix out = Tf * composed * Tf.transpose();
    return PoissonStructure(P.chart(), std::move(out));
}

Eigen::Index rank_at(const PoissonStructure& P, std::span<const Rational> point) {
    if (point.size() != P.chart().symbol_count())
        throw InputError("point must give a value for every coordinate and parameter");
    const auto d = idx(P.dimension());
    RationalMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = evaluate(P.matrix()(i, j), point);
    return linalg::rank(m);
}

std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> upper_entries(const PoissonStructure& P) {
    std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> out;
    for (std::size_t i = 0; i < P.dimension(); ++i)
        for (std::size_t j = i + 1; j < P.dimension(); ++j)
            if (!P.entry(i, j).is_zero()) out.emplace_back(i, j, P.entry(i, j));
    return out;
}

}  // namespace poisson
