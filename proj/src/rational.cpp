#include "superp1/rational.hpp"

#include <cctype>
#include <ostream>

#include "superp1/errors.hpp"

namespace superp1 {

Rational::Rational(long num, long den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, den, 1);
    mpq_div(q_, q_, d);
    mpq_clear(d);
}

Rational Rational::parse(const std::string& text) {
    // strict shape check: optional sign, digits, optional "/digits"
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t end_num = digits(i);
    if (end_num == i) throw ParseError("expected rational number", 0);
    i = end_num;
    if (i < text.size()) {
        if (text[i] != '/') throw ParseError("malformed rational '" + text + "'", i);
        std::size_t end_den = digits(i + 1);
        if (end_den == i + 1 || end_den != text.size())
            throw ParseError("malformed rational '" + text + "'", i);
    }
    Rational r;
    if (mpq_set_str(r.q_, text.c_str(), 10) != 0)
        throw ParseError("malformed rational '" + text + "'", 0);
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw ParseError("rational with zero denominator '" + text + "'", 0);
    mpq_canonicalize(r.q_);
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::string Rational::numerator_string() const {
    char* s = mpz_get_str(nullptr, 10, mpq_numref(q_));
    std::string out(s);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::string Rational::denominator_string() const {
    char* s = mpz_get_str(nullptr, 10, mpq_denref(q_));
    std::string out(s);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

std::size_t Rational::bit_size() const {
    return mpz_sizeinbase(mpq_numref(q_), 2) + mpz_sizeinbase(mpq_denref(q_), 2);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace superp1
