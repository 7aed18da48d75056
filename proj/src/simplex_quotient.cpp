#include "poisson/simplex_quotient.hpp"

#include "poisson/errors.hpp"
#include "poisson/random.hpp"

#include <map>

namespace poisson {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string parameter_name(std::size_t i, std::size_t j, std::size_t n) {
    if (n < 10) return "a" + std::to_string(i) + std::to_string(j);
    return "a" + std::to_string(i) + "_" + std::to_string(j);
}

std::vector<std::string> numbered(const std::string& stem, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

PoissonStructure quadratic_bracket(const SkewParamMatrix& A, bool conjugate_too) {
    const Chart chart = cpn_chart(A);
    const std::size_t m = A.n() + 1;
    const std::size_t offset = 2 * m;
    std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> entries;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const RationalFunction a = A.entry(i, j, offset);
            if (a.is_zero()) continue;
            entries.emplace_back(i, j, a * RationalFunction::variable(i) * RationalFunction::variable(j));
            if (conjugate_too)
                entries.emplace_back(m + i, m + j,
                                     a * RationalFunction::variable(m + i) * RationalFunction::variable(m + j));
        }
    return PoissonStructure::from_entries(chart, entries).verify();
}

// μ images for composing simplex-chart functions onto the cpn chart.
std::vector<RationalFunction> mu_images(const SkewParamMatrix& A) {
    std::vector<RationalFunction> images = moment_components(A);
    const std::size_t offset = 2 * (A.n() + 1);
    for (std::size_t p = 0; p < A.parameters().size(); ++p) images.push_back(RationalFunction::variable(offset + p));
    return images;
}

}  // namespace

SkewParamMatrix SkewParamMatrix::numeric(const RationalMatrix& A) {
    if (A.rows() != A.cols() || A.rows() < 2) throw InputError("A must be square of size at least 2");
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (!A(i, i).is_zero())
            throw InputError("A must have zero diagonal, found a" + std::to_string(i) + std::to_string(i) + " = " +
                             to_string(A(i, i)));
        for (Eigen::Index j = i + 1; j < A.cols(); ++j)
            if (A(i, j) != -A(j, i))
                throw InputError("A is not skew at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return SkewParamMatrix(A.cast<RationalFunction>(), {});
}

SkewParamMatrix SkewParamMatrix::symbolic(std::size_t n) {
    if (n < 1) throw InputError("n must be at least 1");
    const std::size_t m = n + 1;
    RFMatrix entries = RFMatrix::Zero(idx(m), idx(m));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto a = RationalFunction::variable(names.size());
            entries(idx(i), idx(j)) = a;
            entries(idx(j), idx(i)) = -a;
            names.push_back(parameter_name(i, j, n));
        }
    return SkewParamMatrix(std::move(entries), std::move(names));
}

RationalFunction SkewParamMatrix::entry(std::size_t i, std::size_t j, std::size_t offset) const {
    const RationalFunction& a = entries_(idx(i), idx(j));
    if (a.is_constant() || offset == 0) return a;
    std::vector<RationalFunction> images;
    for (std::size_t p = 0; p < parameters_.size(); ++p) images.push_back(RationalFunction::variable(offset + p));
    return compose(a, images);
}

RationalMatrix random_skew_matrix(std::size_t n, std::uint64_t seed) {
    SeededRandom rng(seed);
    const std::size_t m = n + 1;
    RationalMatrix A = RationalMatrix::Zero(idx(m), idx(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            A(idx(i), idx(j)) = rng.nonzero_rational(7, 4);
            A(idx(j), idx(i)) = -A(idx(i), idx(j));
        }
    return A;
}

Chart cpn_chart(const SkewParamMatrix& A) {
    auto coords = numbered("z", A.n() + 1);
    for (auto& name : numbered("zb", A.n() + 1)) coords.push_back(name);
    return Chart(std::move(coords), A.parameters());
}

Chart simplex_chart(const SkewParamMatrix& A) { return Chart(numbered("mu", A.n() + 1), A.parameters()); }

PoissonStructure cpn_bracket(const SkewParamMatrix& A) { return quadratic_bracket(A, false); }

PoissonStructure cpn_bracket_conjugate_symmetric(const SkewParamMatrix& A) { return quadratic_bracket(A, true); }

TorusActionSpec cpn_torus_action(const SkewParamMatrix& A) {
    const std::size_t n = A.n();
    TorusActionSpec spec{cpn_chart(A), {}, MatrixX<long>::Zero(idx(n), idx(n))};
    for (std::size_t k = 1; k <= n; ++k) {
        spec.pairs.emplace_back(k, n + 1 + k);
        spec.weights(idx(k - 1), idx(k - 1)) = 1;
    }
    validate(spec);
    return spec;
}

std::vector<RationalFunction> moment_components(const SkewParamMatrix& A) {
    const std::size_t m = A.n() + 1;
    Polynomial total;
    std::vector<Polynomial> squares;
    for (std::size_t i = 0; i < m; ++i) {
        squares.push_back(Polynomial::variable(i) * Polynomial::variable(m + i));
        total += squares.back();
    }
    std::vector<RationalFunction> mu;
    for (auto& s : squares) mu.emplace_back(std::move(s), total);
    return mu;
}

RationalFunction simplex_formula(const SkewParamMatrix& A, std::size_t i, std::size_t j) {
    const std::size_t m = A.n() + 1;
    if (i == j) return {};
    RationalFunction factor = A.entry(i, j, m);
    for (std::size_t l = 0; l < m; ++l) {
        const RationalFunction c = A.entry(i, l, m) + A.entry(l, j, m);
        if (!c.is_zero()) factor -= c * RationalFunction::variable(l);
    }
    return factor * RationalFunction::variable(i) * RationalFunction::variable(j);
}

SimplexDerivation derive_simplex_bracket(const SkewParamMatrix& A) {
    const std::size_t m = A.n() + 1;
    const PoissonStructure P = cpn_bracket(A);
    const auto mu = moment_components(A);
    const auto images = mu_images(A);
    const Chart cpn = P.chart();

    SimplexDerivation out;
    out.mu_brackets = RFMatrix::Zero(idx(m), idx(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const RationalFunction formula = simplex_formula(A, i, j);
            out.mu_brackets(idx(i), idx(j)) = formula;
            out.mu_brackets(idx(j), idx(i)) = -formula;
            PairCheck check{i, j, bracket(P, mu[i], mu[j]), compose(formula, images), false};
            check.pass = check.direct == check.composed;
            if (!check.pass)
                throw CertificationError("{mu" + std::to_string(i) + ",mu" + std::to_string(j) +
                                         "} differs from the simplex formula; residual " +
                                         cpn.format(check.direct - check.composed));
            out.checks.push_back(std::move(check));
        }
    return out;
}

PoissonStructure simplex_bracket(const SkewParamMatrix& A) {
    const std::size_t m = A.n() + 1;
    std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> entries;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            RationalFunction f = simplex_formula(A, i, j);
            if (!f.is_zero()) entries.emplace_back(i, j, std::move(f));
        }
    return PoissonStructure::from_entries(simplex_chart(A), entries).verify();
}

StratificationCertificate check_face_stratification(const PoissonStructure& S) {
    const std::size_t m = S.dimension();
    StratificationCertificate cert;
    auto polynomial_entry = [&](std::size_t i, std::size_t l) {
        const RationalFunction& f = S.entry(i, l);
        if (!f.is_polynomial()) throw InputError("stratification check needs polynomial brackets");
        return f.numerator();
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l) {
            Polynomial b = polynomial_entry(i, l);
            const bool ok = divides(Polynomial::variable(l), b);
            cert.pass = cert.pass && ok;
            cert.checks.push_back({'a', i, l, std::move(b), ok});
        }
    Polynomial boundary(1);
    for (std::size_t l = 0; l < m; ++l) boundary -= Polynomial::variable(l);
    for (std::size_t i = 0; i < m; ++i) {
        Polynomial b;
        for (std::size_t l = 0; l < m; ++l) b += polynomial_entry(i, l);
        const bool ok = divides(boundary, b);
        cert.pass = cert.pass && ok;
        cert.checks.push_back({'b', i, 0, std::move(b), ok});
    }
    return cert;
}

StratificationCertificate check_face_stratification(const SkewParamMatrix& A) {
    return check_face_stratification(simplex_bracket(A));
}

std::vector<FaceDescriptor> enumerate_faces(std::size_t n) {
    const std::size_t m = n + 1;
    if (m >= 8 * sizeof(std::uint64_t) - 1) throw InputError("too many faces to enumerate");
    std::vector<FaceDescriptor> faces;
    for (std::size_t d = 0; d <= n; ++d) {
        // Subsets of size n − d in lexicographic order via an increasing index vector.
        const std::size_t k = n - d;
        std::vector<std::size_t> set(k);
        for (std::size_t t = 0; t < k; ++t) set[t] = t;
        while (true) {
            faces.push_back({set, d});
            std::size_t t = k;
            while (t > 0 && set[t - 1] == m - k + t - 1) --t;
            if (t == 0) break;
            ++set[t - 1];
            for (std::size_t u = t; u < k; ++u) set[u] = set[u - 1] + 1;
        }
    }
    return faces;
}

PoissonStructure face_bracket(const PoissonStructure& S, const FaceDescriptor& face) {
    const Chart& chart = S.chart();
    const std::size_t m = S.dimension();
    std::vector<bool> vanishing(m, false);
    for (std::size_t l : face.vanishing_set) {
        if (l >= m) throw InputError("face index out of range");
        vanishing[l] = true;
    }
    std::vector<std::string> coords;
    std::vector<std::size_t> kept;
    std::vector<RationalFunction> images;
    for (std::size_t l = 0; l < m; ++l) {
        if (vanishing[l]) {
            images.emplace_back();
        } else {
            images.push_back(RationalFunction::variable(kept.size()));
            kept.push_back(l);
            coords.push_back(chart.symbols()[l]);
        }
    }
    const auto params = chart.parameters();
    for (std::size_t p = 0; p < params.size(); ++p) images.push_back(RationalFunction::variable(kept.size() + p));
    Chart face_chart(std::move(coords), std::vector<std::string>(params.begin(), params.end()));
    std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> entries;
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = a + 1; b < kept.size(); ++b) {
            RationalFunction f = compose(S.entry(kept[a], kept[b]), images);
            if (!f.is_zero()) entries.emplace_back(a, b, std::move(f));
        }
    return PoissonStructure::from_entries(std::move(face_chart), entries).verify();
}

ConventionComparison compare_conjugate_convention(const SkewParamMatrix& A) {
    const std::size_t m = A.n() + 1;
    const PoissonStructure P = cpn_bracket_conjugate_symmetric(A);
    const auto mu = moment_components(A);
    const auto images = mu_images(A);
    ConventionComparison out;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const RationalFunction direct = bracket(P, mu[i], mu[j]);
            const RationalFunction composed = compose(simplex_formula(A, i, j), images);
            if (composed.is_zero()) {
                out.ratios.emplace_back();
                if (!direct.is_zero()) out.consistent = false;
                continue;
            }
            RationalFunction ratio = direct / composed;
            if (!ratio.is_constant()) {
                out.consistent = false;
            } else if (!out.factor) {
                out.factor = ratio.constant_value();
            } else if (*out.factor != ratio.constant_value()) {
                out.consistent = false;
            }
            out.ratios.emplace_back(std::move(ratio));
        }
    if (!out.consistent) out.factor.reset();
    return out;
}

}  // namespace poisson
