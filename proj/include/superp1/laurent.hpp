#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "superp1/rational.hpp"

namespace superp1 {

// Sparse Laurent polynomial in one variable over the rationals.  The zero
// polynomial is the empty map; stored coefficients are never zero.
class LaurentPoly {
public:
    LaurentPoly() = default;

    // c * x^n
    static LaurentPoly term(Rational c, int n) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_[n] = std::move(c);
        return p;
    }

    static LaurentPoly constant(Rational c) { return term(std::move(c), 0); }
    static LaurentPoly one() { return constant(Rational(1)); }

    bool is_zero() const { return terms_.empty(); }

    // true when no exponent is negative (the zero polynomial qualifies)
    bool is_polynomial() const { return terms_.empty() || terms_.begin()->first >= 0; }

    int min_exponent() const;  // precondition: nonzero
    int max_exponent() const;  // precondition: nonzero

    Rational coeff(int n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? Rational() : it->second;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Rational& c) const;

    // multiplies by x^n
    LaurentPoly shifted(int n) const;

    // termwise d/dx
    LaurentPoly derivative() const;

    // exact evaluation at a nonzero rational point
    Rational evaluate(const Rational& x) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Serialization: sum of "c*x^n" in ascending exponent order, "0" when zero,
    // e.g. "-2*x^-3 + 1/2*x^0".
    std::string to_string() const;

    // Accepts the serialized form plus the obvious shorthands ("x^2", "-x",
    // "3", "1/2 x^-1").  The variable letter must be `var`.
    static LaurentPoly parse(const std::string& text, char var = 'x');

private:
    void add_term(int n, const Rational& c);

    std::map<int, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace superp1
