#include "poisson/cli/problem_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace poisson::cli {

namespace {

struct Line {
    std::size_t number;
    std::size_t column;  // 1-based column of text[0]
    std::string text;
};

struct Entry {
    std::size_t number;
    std::size_t key_column;
    std::size_t value_column;
    std::string key;
    std::string value;
};

const std::set<std::string> kSections = {"chart", "bracket", "action", "torus", "submanifold", "params"};

bool blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Trims in place and returns how many leading characters were removed.
std::size_t trim(std::string& s) {
    const auto first = std::find_if_not(s.begin(), s.end(), blank);
    const auto lead = static_cast<std::size_t>(first - s.begin());
    s.erase(s.begin(), first);
    while (!s.empty() && blank(s.back())) s.pop_back();
    return lead;
}

std::string strip_column_suffix(const std::string& message) {
    const auto at = message.rfind(" at column ");
    return at == std::string::npos ? message : message.substr(0, at);
}

Entry key_value(const Line& line) {
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) throw FileError("expected 'key = value'", line.number, line.column);
    std::string key = line.text.substr(0, eq);
    trim(key);
    std::string value = line.text.substr(eq + 1);
    const std::size_t lead = trim(value);
    if (key.empty()) throw FileError("missing key before '='", line.number, line.column);
    return {line.number, line.column, line.column + eq + 1 + lead, std::move(key), std::move(value)};
}

std::vector<std::string> words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(std::move(w));
    return out;
}

RationalMatrix matrix_value(const Entry& e) {
    try {
        return parse_matrix(e.value);
    } catch (const InputError& err) {
        throw FileError(err.what(), e.number, e.value_column);
    }
}

std::uint64_t unsigned_value(const Entry& e) {
    std::uint64_t v = 0;
    const char* end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end || e.value.empty())
        throw FileError("'" + e.key + "' needs a nonnegative integer", e.number, e.value_column);
    return v;
}

RationalFunction expression_value(const Chart& chart, const std::string& text, std::size_t number, std::size_t column) {
    try {
        return chart.parse(text);
    } catch (const ParseError& err) {
        throw FileError(strip_column_suffix(err.what()), number, column + err.column());
    } catch (const MathError& err) {
        throw FileError(strip_column_suffix(err.what()), number, column);
    }
}

std::size_t coordinate_at(const Chart& chart, const std::string& name, std::size_t number, std::size_t column) {
    const auto i = chart.index_of(name);
    if (!i || *i >= chart.dimension()) throw FileError("'" + name + "' is not a chart coordinate", number, column);
    return *i;
}

class Parser {
public:
    explicit Parser(std::string_view text) { split(text); }

    ProblemFile run() {
        ProblemFile out;
        std::optional<Chart> chart = parse_chart();
        for (const auto& [name, first] : headers_)
            if (name != "chart" && name != "params" && !chart)
                throw FileError("[" + name + "] needs a [chart] section", first, 1);
        if (chart) {
            out.structure = parse_bracket(*chart);
            out.action = parse_action(*chart);
            out.submanifold = parse_submanifold(*chart);
        }
        out.params = parse_params();
        return out;
    }

private:
    void split(std::string_view text) {
        std::string current;
        std::size_t number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string raw(text.substr(start, end - start));
            start = end + 1;
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::string body = raw;
            const std::size_t lead = trim(body);
            if (body.empty()) {
                if (end == text.size()) break;
                continue;
            }
            if (body.front() == '[') {
                if (body.back() != ']') throw FileError("unterminated section header", number, lead + 1);
                std::string name = body.substr(1, body.size() - 2);
                trim(name);
                if (!kSections.count(name)) throw FileError("unknown section [" + name + "]", number, lead + 1);
                if (sections_.count(name)) throw FileError("section [" + name + "] appears twice", number, lead + 1);
                sections_[name];
                headers_.emplace_back(name, number);
                current = name;
            } else {
                if (current.empty()) throw FileError("content before the first section header", number, lead + 1);
                sections_[current].push_back({number, lead + 1, std::move(body)});
            }
            if (end == text.size()) break;
        }
    }

    const std::vector<Line>* section(const std::string& name) const {
        const auto it = sections_.find(name);
        return it == sections_.end() ? nullptr : &it->second;
    }

    static void unknown_key(const Entry& e, const std::string& section) {
        throw FileError("unknown key '" + e.key + "' in [" + section + "]", e.number, e.key_column);
    }

    std::optional<Chart> parse_chart() const {
        const auto* lines = section("chart");
        if (!lines) return std::nullopt;
        std::optional<std::vector<std::string>> coords;
        std::vector<std::string> params;
        std::size_t header = 1;
        for (const auto& [name, number] : headers_)
            if (name == "chart") header = number;
        bool have_params = false;
        std::size_t where = header, column = 1;
        for (const auto& line : *lines) {
            const Entry e = key_value(line);
            if (e.key == "coordinates") {
                if (coords) throw FileError("coordinates given twice", e.number, e.key_column);
                coords = words(e.value);
                where = e.number;
                column = e.value_column;
            } else if (e.key == "parameters") {
                if (have_params) throw FileError("parameters given twice", e.number, e.key_column);
                have_params = true;
                params = words(e.value);
            } else {
                unknown_key(e, "chart");
            }
        }
        if (!coords) throw FileError("[chart] needs a coordinates line", header, 1);
        try {
            return Chart(*coords, params);
        } catch (const InputError& err) {
            throw FileError(err.what(), where, column);
        }
    }

    std::optional<PoissonStructure> parse_bracket(const Chart& chart) const {
        std::vector<std::tuple<std::size_t, std::size_t, RationalFunction>> entries;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
        if (const auto* lines = section("bracket")) {
            for (const auto& line : *lines) {
                const std::string& t = line.text;
                const auto fail = [&](const std::string& what, std::size_t offset) {
                    throw FileError(what, line.number, line.column + offset);
                };
                if (t.front() != '{') fail("expected '{a,b} = expression'", 0);
                const auto comma = t.find(',');
                const auto close = t.find('}');
                if (comma == std::string::npos || close == std::string::npos || close < comma)
                    fail("expected '{a,b}'", 0);
                std::string a = t.substr(1, comma - 1);
                const std::size_t a_lead = trim(a);
                std::string b = t.substr(comma + 1, close - comma - 1);
                const std::size_t b_lead = trim(b);
                const std::size_t i = coordinate_at(chart, a, line.number, line.column + 1 + a_lead);
                const std::size_t j = coordinate_at(chart, b, line.number, line.column + comma + 1 + b_lead);
                if (i == j) fail("a coordinate has zero bracket with itself", 0);
                auto eq = close + 1;
                while (eq < t.size() && blank(t[eq])) ++eq;
                if (eq >= t.size() || t[eq] != '=') fail("expected '=' after '}'", eq);
                std::string expr = t.substr(eq + 1);
                const std::size_t lead = trim(expr);
                if (expr.empty()) fail("missing expression", eq + 1);
                const auto key = std::minmax(i, j);
                if (const auto it = seen.find(key); it != seen.end())
                    fail("{" + a + "," + b + "} already given on line " + std::to_string(it->second), 0);
                seen[key] = line.number;
                entries.emplace_back(i, j, expression_value(chart, expr, line.number, line.column + eq + 1 + lead));
            }
        }
        return PoissonStructure::from_entries(chart, entries);
    }

    std::optional<ActionSpec> parse_action(const Chart& chart) const {
        const auto* finite = section("action");
        const auto* torus = section("torus");
        if (finite && torus) {
            std::size_t number = 1;
            for (const auto& [name, n] : headers_)
                if (name == "torus") number = n;
            throw FileError("give either [action] or [torus], not both", number, 1);
        }
        if (finite) {
            FiniteActionSpec spec{chart, {}};
            for (const auto& line : *finite) {
                const Entry e = key_value(line);
                if (e.key == "generator") {
                    spec.generators.push_back(matrix_value(e));
                    const auto& g = spec.generators.back();
                    if (g.rows() != static_cast<Eigen::Index>(chart.dimension()) || g.cols() != g.rows())
                        throw FileError("generator must be " + std::to_string(chart.dimension()) + "x" +
                                            std::to_string(chart.dimension()),
                                        e.number, e.value_column);
                } else if (e.key == "order") {
                    spec.max_order = unsigned_value(e);
                } else {
                    unknown_key(e, "action");
                }
            }
            try {
                validate(spec);
            } catch (const InputError& err) {
                throw FileError(err.what(), finite->empty() ? 1 : finite->front().number, 1);
            }
            return spec;
        }
        if (torus) {
            TorusActionSpec spec{chart, {}, {}};
            std::vector<std::vector<long>> columns;
            for (const auto& line : *torus) {
                const Entry e = key_value(line);
                if (e.key != "pair") unknown_key(e, "torus");
                const auto colon = e.value.find(':');
                if (colon == std::string::npos) throw FileError("expected 'pair = z zb : weights'", e.number, e.value_column);
                const auto names = words(e.value.substr(0, colon));
                if (names.size() != 2) throw FileError("a pair names exactly two coordinates", e.number, e.value_column);
                spec.pairs.emplace_back(coordinate_at(chart, names[0], e.number, e.value_column),
                                        coordinate_at(chart, names[1], e.number, e.value_column));
                std::vector<long> weights;
                for (const auto& w : words(e.value.substr(colon + 1))) {
                    long v = 0;
                    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
                    if (ec != std::errc() || ptr != w.data() + w.size())
                        throw FileError("malformed weight '" + w + "'", e.number, e.value_column + colon + 1);
                    weights.push_back(v);
                }
                if (weights.empty()) throw FileError("a pair needs at least one weight", e.number, e.value_column + colon + 1);
                if (!columns.empty() && weights.size() != columns.front().size())
                    throw FileError("every pair needs the same number of weights", e.number, e.value_column + colon + 1);
                columns.push_back(std::move(weights));
            }
            if (columns.empty()) throw FileError("[torus] needs at least one pair", 1, 1);
            spec.weights.resize(static_cast<Eigen::Index>(columns.front().size()), static_cast<Eigen::Index>(columns.size()));
            for (std::size_t p = 0; p < columns.size(); ++p)
                for (std::size_t k = 0; k < columns[p].size(); ++k)
                    spec.weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p)) = columns[p][k];
            try {
                validate(spec);
            } catch (const InputError& err) {
                throw FileError(err.what(), torus->front().number, 1);
            }
            return spec;
        }
        return std::nullopt;
    }

    std::optional<RationalMatrix> parse_submanifold(const Chart& chart) const {
        const auto* lines = section("submanifold");
        if (!lines) return std::nullopt;
        std::vector<RationalMatrix> vectors;
        for (const auto& line : *lines) {
            const Entry e = key_value(line);
            if (e.key != "vector") unknown_key(e, "submanifold");
            RationalMatrix v = matrix_value(e);
            if (v.rows() != 1 || v.cols() != static_cast<Eigen::Index>(chart.dimension()))
                throw FileError("a vector needs " + std::to_string(chart.dimension()) + " entries on one row", e.number,
                                e.value_column);
            vectors.push_back(std::move(v));
        }
        RationalMatrix basis(static_cast<Eigen::Index>(chart.dimension()), static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t k = 0; k < vectors.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = vectors[k].row(0).transpose();
        return basis;
    }

    TaskParams parse_params() const {
        TaskParams p;
        const auto* lines = section("params");
        if (!lines) return p;
        std::set<std::string> seen;
        for (const auto& line : *lines) {
            const Entry e = key_value(line);
            if (!seen.insert(e.key).second) throw FileError("'" + e.key + "' given twice", e.number, e.key_column);
            if (e.key == "seed") p.seed = unsigned_value(e);
            else if (e.key == "points") p.points = unsigned_value(e);
            else if (e.key == "trials") p.trials = unsigned_value(e);
            else if (e.key == "pairs") p.pairs = unsigned_value(e);
            else if (e.key == "n") p.n = unsigned_value(e);
            else if (e.key == "A") p.A = matrix_value(e);
            else if (e.key == "symbolic") {
                if (e.value != "true" && e.value != "false")
                    throw FileError("symbolic must be true or false", e.number, e.value_column);
                p.symbolic = e.value == "true";
            } else {
                unknown_key(e, "params");
            }
        }
        return p;
    }

    std::map<std::string, std::vector<Line>> sections_;
    std::vector<std::pair<std::string, std::size_t>> headers_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) { return Parser(text).run(); }

std::string format_structure(const PoissonStructure& P) {
    const Chart& chart = P.chart();
    std::ostringstream out;
    out << "[chart]\ncoordinates =";
    for (const auto& name : chart.coordinates()) out << ' ' << name;
    out << '\n';
    if (chart.parameter_count() > 0) {
        out << "parameters =";
        for (const auto& name : chart.parameters()) out << ' ' << name;
        out << '\n';
    }
    out << "\n[bracket]\n";
    for (const auto& [i, j, f] : upper_entries(P))
        out << '{' << chart.symbols()[i] << ',' << chart.symbols()[j] << "} = " << chart.format(f) << '\n';
    return out.str();
}

}  // namespace poisson::cli
