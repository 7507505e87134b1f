#include "superp1/laurent.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "superp1/errors.hpp"

namespace superp1 {

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw PreconditionError("min_exponent of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw PreconditionError("max_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

void LaurentPoly::add_term(int n, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [n, c] : terms_) r.terms_.emplace(n, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [n, c] : o.terms_) add_term(n, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [n, c] : o.terms_) add_term(n, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [n, c] : a.terms_)
        for (const auto& [m, d] : b.terms_) r.add_term(n + m, c * d);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    LaurentPoly r;
    if (c.is_zero()) return r;
    for (const auto& [n, a] : terms_) r.terms_.emplace(n, a * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(int s) const {
    LaurentPoly r;
    for (const auto& [n, a] : terms_) r.terms_.emplace(n + s, a);
    return r;
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly r;
    for (const auto& [n, a] : terms_)
        if (n != 0) r.terms_.emplace(n - 1, a * Rational(n));
    return r;
}

Rational LaurentPoly::evaluate(const Rational& x) const {
    if (x.is_zero()) throw PreconditionError("Laurent evaluation at zero");
    Rational acc;
    for (const auto& [n, a] : terms_) {
        Rational p(1);
        Rational base = n >= 0 ? x : x.inverse();
        for (int i = 0; i < (n >= 0 ? n : -n); ++i) p *= base;
        acc += a * p;
    }
    return acc;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : terms_) {
        if (first) {
            os << c.to_string();
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ") << c.abs().to_string();
        }
        os << "*x^" << n;
    }
    return os.str();
}

namespace {

struct LaurentLexer {
    const std::string& s;
    char var;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    long read_integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        std::size_t d = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == d) throw ParseError("expected integer", start);
        return std::stol(s.substr(start, i - start));
    }

    Rational read_rational() {
        skip_ws();
        std::size_t start = i;
        long num = read_integer();
        if (peek() == '/') {
            std::size_t save = i;
            ++i;
            skip_ws();
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                long den = read_integer();
                if (den == 0) throw ParseError("zero denominator", start);
                return Rational(num, den);
            }
            i = save;
        }
        return Rational(num);
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text, char var) {
    LaurentLexer lx{text, var};
    LaurentPoly result;
    bool expect_term = true;
    int term_sign = 1;
    while (!lx.eof()) {
        if (!expect_term) {
            char c = lx.peek();
            if (c == '+' || c == '-') {
                term_sign = (c == '-') ? -1 : 1;
                ++lx.i;
                expect_term = true;
                continue;
            }
            throw ParseError("expected '+' or '-'", lx.i);
        }
        // one term: ['-'|'+'] [rational] ['*'] [var '^' int]  (at least one part)
        char sign_ch = lx.peek();
        if (sign_ch == '-' || sign_ch == '+') {
            if (sign_ch == '-') term_sign = -term_sign;
            ++lx.i;
        }
        Rational c(term_sign);
        bool have_coeff = false;
        char ch = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            c = c * lx.read_rational();
            have_coeff = true;
            if (lx.peek() == '*') ++lx.i;
        }
        int exp = 0;
        if (lx.peek() == var) {
            ++lx.i;
            if (lx.peek() != '^') {
                exp = 1;
            } else {
                ++lx.i;
                exp = static_cast<int>(lx.read_integer());
            }
        } else if (!have_coeff) {
            throw ParseError(std::string("expected coefficient or '") + var + "'", lx.i);
        }
        result.add_term(exp, c);
        expect_term = false;
        term_sign = 1;
    }
    if (expect_term && !text.empty()) {
        // a trailing '+'/'-' or an entirely blank string
        bool blank = true;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) throw ParseError("dangling sign", text.size());
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace superp1
