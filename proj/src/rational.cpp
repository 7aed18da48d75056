#include "poisson/rational.hpp"

#include "poisson/errors.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace poisson {

Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_int(num, true)) throw InputError("malformed rational '" + std::string(text) + "'");
    std::string digits(num.front() == '+' ? num.substr(1) : num);
    Rational value{Integer(digits)};
    if (slash != std::string_view::npos) {
        const std::string_view den = text.substr(slash + 1);
        if (!is_int(den, false)) throw InputError("malformed rational '" + std::string(text) + "'");
        const Integer d(std::string{den});
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        value /= Rational(d);
    }
    return value;
}

std::string to_string(const Rational& value) {
    return value.str();
}

RationalMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<Rational>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        std::istringstream row{std::string(text.substr(start, end - start))};
        std::vector<Rational> entries;
        for (std::string tok; row >> tok;) entries.push_back(parse_rational(tok));
        if (!entries.empty()) rows.push_back(std::move(entries));
        start = end + 1;
    }
    if (rows.empty()) throw InputError("empty matrix");
    const auto cols = rows.front().size();
    RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

std::string format_matrix(const RationalMatrix& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) os << " ; ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << to_string(m(i, j));
        }
    }
    return os.str();
}

}  // namespace poisson
