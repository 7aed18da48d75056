#include "poisson/expr_parser.hpp"

#include "poisson/errors.hpp"

#include <algorithm>
#include <cctype>

namespace poisson {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> symbols) : text_(text), symbols_(symbols) {}

    RationalFunction parse() {
        RationalFunction value = expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return value;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr() {
        RationalFunction value = term();
        while (true) {
            if (accept('+')) value += term();
            else if (accept('-')) value -= term();
            else return value;
        }
    }

    RationalFunction term() {
        RationalFunction value = factor();
        while (true) {
            if (accept('*')) {
                value *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                RationalFunction d = factor();
                if (d.is_zero()) throw MathError("division by the zero polynomial at column " + std::to_string(at + 1));
                value /= d;
            } else {
                return value;
            }
        }
    }

    RationalFunction factor() {
        skip_space();
        if (accept('-')) return -factor();
        RationalFunction value = base();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected a nonnegative integer exponent", start);
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 4) throw ParseError("exponent too large", start);
            value = pow(value, std::stoi(digits));
        }
        return value;
    }

    RationalFunction base() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction value = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return value;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    RationalFunction rational_literal() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        // int '/' uint is one literal only when digits follow the slash directly.
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            digits();
        }
        const std::string_view lit = text_.substr(start, pos_ - start);
        const auto slash = lit.find('/');
        if (slash != std::string_view::npos && lit.find_first_not_of('0', slash + 1) == std::string_view::npos)
            throw MathError("division by the zero polynomial at column " + std::to_string(start + slash + 2));
        try {
            return RationalFunction(parse_rational(lit));
        } catch (const InputError& e) {
            throw ParseError(e.what(), start);
        }
    }

    RationalFunction identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        const auto it = std::find(symbols_.begin(), symbols_.end(), name);
        if (it == symbols_.end())
            throw ParseError("unknown variable '" + name + "'", start);
        return RationalFunction::variable(static_cast<std::size_t>(it - symbols_.begin()));
    }

    std::string_view text_;
    std::span<const std::string> symbols_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expr(std::string_view text, std::span<const std::string> symbols) {
    return Parser(text, symbols).parse();
}

}  // namespace poisson
