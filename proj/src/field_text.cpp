#include "superp1/field_text.hpp"

#include <cctype>
#include <sstream>

#include "superp1/errors.hpp"

namespace superp1 {

namespace {

struct FieldLexer {
    const std::string& s;
    Chart chart;
    int m;
    std::size_t i = 0;

    const char* even_var() const { return chart == Chart::U0 ? "x" : "y"; }
    const char* odd_var() const { return chart == Chart::U0 ? "xi" : "eta"; }

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
    bool lookahead(const std::string& word) {
        skip_ws();
        return s.compare(i, word.size(), word) == 0;
    }
    void expect(const std::string& word) {
        if (!lookahead(word)) throw ParseError("expected '" + word + "'", i);
        i += word.size();
    }

    long read_unsigned_integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer", start);
        return std::stol(s.substr(start, i - start));
    }

    long read_integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = s[i] == '-';
            ++i;
        }
        long v = read_unsigned_integer();
        return neg ? -v : v;
    }

    Rational read_rational() {
        long num = read_integer();
        skip_ws();
        if (i < s.size() && s[i] == '/') {
            std::size_t slash = i;
            ++i;
            long den = read_unsigned_integer();
            if (den == 0) throw ParseError("zero denominator", slash);
            return Rational(num, den);
        }
        return Rational(num);
    }

    // true when the upcoming token is the even variable raised to a power
    // ("x^" but not "xi")
    bool at_even_power() {
        skip_ws();
        std::string v = even_var();
        if (s.compare(i, v.size(), v) != 0) return false;
        std::size_t j = i + v.size();
        while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        return j < s.size() && s[j] == '^';
    }

    bool at_odd_var() {
        skip_ws();
        std::string v = odd_var();
        if (s.compare(i, v.size(), v) != 0) return false;
        return i + v.size() < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[i + v.size()]));
    }

    int read_odd_index() {
        std::size_t pos = i;
        long idx = read_unsigned_integer();
        if (idx < 1 || idx > m)
            throw ParseError("odd index " + std::to_string(idx) + " out of 1.." +
                                 std::to_string(m),
                             pos);
        return static_cast<int>(idx);
    }
};

}  // namespace

SuperField parse_field(const std::string& text, Chart chart, int m) {
    FieldLexer lx{text, chart, m};
    SuperField out(chart, m);

    // the zero field is written "0"
    lx.skip_ws();
    if (lx.s.compare(lx.i, 1, "0") == 0) {
        std::size_t j = lx.i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j >= text.size()) return out;
    }

    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++lx.i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", lx.i);
        }
        first = false;

        // coefficient: [rational] ['*'] [x^int], possibly absent entirely
        Rational coeff(sign);
        int exponent = 0;
        char p = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(p))) {
            coeff = coeff * lx.read_rational();
            if (lx.peek() == '*') ++lx.i;
        }
        if (lx.at_even_power()) {
            lx.expect(lx.even_var());
            lx.expect("^");
            exponent = static_cast<int>(lx.read_integer());
            if (lx.peek() == '*') ++lx.i;
        }

        // odd factors, canonicalized with the Koszul sign
        OddMonomial odd;
        int odd_sign = 1;
        while (lx.at_odd_var()) {
            std::size_t pos = lx.i;
            lx.expect(lx.odd_var());
            int idx = lx.read_odd_index();
            if (odd.contains(idx))
                throw ParseError("repeated odd index " + std::to_string(idx), pos);
            odd_sign *= OddMonomial::mul_sign(odd, OddMonomial({idx}));
            odd = odd.with(idx);
            if (lx.peek() == '*') ++lx.i;
        }
        if (odd_sign < 0) coeff = -coeff;

        // derivation
        int target;
        if (lx.lookahead(std::string("d/d") + lx.odd_var())) {
            lx.expect(std::string("d/d") + lx.odd_var());
            target = lx.read_odd_index();
        } else if (lx.lookahead(std::string("d/d") + lx.even_var())) {
            lx.expect(std::string("d/d") + lx.even_var());
            target = 0;
        } else {
            throw ParseError(std::string("expected derivation 'd/d") + lx.even_var() +
                                 "' or 'd/d" + lx.odd_var() + "N'",
                             lx.i);
        }

        out.add(odd, target, LaurentPoly::term(coeff, exponent));
    }
    if (first) throw ParseError("empty field expression", 0);
    return out;
}

namespace {

std::string render_coeff(const Rational& c_abs, int n, bool leading_space) {
    std::string out;
    if (n == 0) {
        if (!c_abs.is_one()) out = c_abs.to_string();
    } else {
        if (c_abs.is_one())
            out = "x^" + std::to_string(n);
        else
            out = c_abs.to_string() + "*x^" + std::to_string(n);
    }
    if (!out.empty() && leading_space) out += " ";
    return out;
}

std::string render_odd(OddMonomial odd, const char* var) {
    std::string out;
    bool first = true;
    for (int i : odd.indices()) {
        if (!first) out += "*";
        out += var;
        out += std::to_string(i);
        first = false;
    }
    return out;
}

}  // namespace

std::string render_field(const SuperField& v) {
    if (v.is_zero()) return "0";
    const char* evar = v.chart() == Chart::U0 ? "x" : "y";
    const char* ovar = v.chart() == Chart::U0 ? "xi" : "eta";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, poly] : v.terms()) {
        for (const auto& [n, c] : poly.terms()) {
            if (first)
                os << (c.sign() < 0 ? "-" : "");
            else
                os << (c.sign() < 0 ? " - " : " + ");
            first = false;
            std::string coeff = render_coeff(c.abs(), n, true);
            // the renderer always writes x^n; patch in the chart variable
            if (v.chart() == Chart::U1 && coeff.find("x^") != std::string::npos)
                coeff.replace(coeff.find("x^"), 1, evar);
            os << coeff;
            std::string odd = render_odd(key.odd, ovar);
            if (!odd.empty()) os << odd << " ";
            if (key.target == 0)
                os << "d/d" << evar;
            else
                os << "d/d" << ovar << key.target;
        }
    }
    return os.str();
}

std::string render_function(const SuperFunction& f) {
    if (f.is_zero()) return "0";
    const char* evar = f.chart() == Chart::U0 ? "x" : "y";
    const char* ovar = f.chart() == Chart::U0 ? "xi" : "eta";
    std::ostringstream os;
    bool first = true;
    for (const auto& [odd, poly] : f.terms()) {
        for (const auto& [n, c] : poly.terms()) {
            if (first)
                os << (c.sign() < 0 ? "-" : "");
            else
                os << (c.sign() < 0 ? " - " : " + ");
            first = false;
            std::string odd_str = render_odd(odd, ovar);
            std::string coeff = render_coeff(c.abs(), n, !odd_str.empty());
            if (f.chart() == Chart::U1 && coeff.find("x^") != std::string::npos)
                coeff.replace(coeff.find("x^"), 1, evar);
            if (coeff.empty() && odd_str.empty()) coeff = c.abs().to_string();
            os << coeff << odd_str;
        }
    }
    return os.str();
}

Chart detect_chart(const std::string& text) {
    if (text.find('y') != std::string::npos || text.find("eta") != std::string::npos)
        return Chart::U1;
    return Chart::U0;
}

}  // namespace superp1
