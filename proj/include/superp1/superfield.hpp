#pragma once

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "superp1/laurent.hpp"

namespace superp1 {

// The two standard charts on the projective line: U0 with coordinates
// (x, xi_1..xi_m) and U1 with (y, eta_1..eta_m), glued by y = x^-1,
// eta_i = x^-k_i xi_i.
enum class Chart { U0, U1 };

inline Chart other_chart(Chart c) { return c == Chart::U0 ? Chart::U1 : Chart::U0; }

using GradingVector = std::vector<int>;

// Square-free monomial in the odd coordinates; bit i-1 set means xi_i is a
// factor.  Factors are always taken in increasing index order.
class OddMonomial {
public:
    OddMonomial() : mask_(0) {}
    explicit OddMonomial(unsigned mask) : mask_(mask) {}
    OddMonomial(std::initializer_list<int> indices) : mask_(0) {
        for (int i : indices) mask_ |= 1u << (i - 1);
    }

    unsigned mask() const { return mask_; }
    bool empty() const { return mask_ == 0; }
    int size() const { return __builtin_popcount(mask_); }
    bool contains(int l) const { return (mask_ >> (l - 1)) & 1u; }
    int max_index() const;  // 0 when empty

    std::vector<int> indices() const;

    OddMonomial with(int l) const { return OddMonomial(mask_ | (1u << (l - 1))); }
    OddMonomial without(int l) const { return OddMonomial(mask_ & ~(1u << (l - 1))); }

    // Koszul sign of xi_A * xi_B written in that order; 0 when they share an
    // index.
    static int mul_sign(OddMonomial a, OddMonomial b);
    static OddMonomial mul(OddMonomial a, OddMonomial b) {
        return OddMonomial(a.mask_ | b.mask_);
    }

    // Sign acquired by the left derivative d/dxi_l passing the factors that
    // precede xi_l; precondition contains(l).
    int derivative_sign(int l) const;

    // Lexicographic order on the increasing index sequences, so e.g.
    // {} < {1} < {1,2} < {1,2,3} < {1,3} < {2}.
    static bool lex_less(OddMonomial a, OddMonomial b);

    friend bool operator==(OddMonomial a, OddMonomial b) { return a.mask_ == b.mask_; }
    friend bool operator!=(OddMonomial a, OddMonomial b) { return a.mask_ != b.mask_; }

private:
    unsigned mask_;
};

struct OddMonomialLess {
    bool operator()(OddMonomial a, OddMonomial b) const { return OddMonomial::lex_less(a, b); }
};

// Element of the structure sheaf over one chart: finite sum of Laurent
// coefficients times odd monomials.
class SuperFunction {
public:
    SuperFunction() : chart_(Chart::U0), m_(0) {}
    SuperFunction(Chart chart, int m) : chart_(chart), m_(m) {}

    static SuperFunction monomial(Chart chart, int m, LaurentPoly coeff, OddMonomial odd);
    // the even coordinate of the chart, x or y
    static SuperFunction coordinate(Chart chart, int m);
    // the l-th odd coordinate of the chart
    static SuperFunction odd_coordinate(Chart chart, int m, int l);

    Chart chart() const { return chart_; }
    int m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<OddMonomial, LaurentPoly, OddMonomialLess>& terms() const { return terms_; }

    LaurentPoly coeff(OddMonomial odd) const {
        auto it = terms_.find(odd);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add(OddMonomial odd, const LaurentPoly& c);

    SuperFunction operator-() const;
    SuperFunction& operator+=(const SuperFunction& o);
    SuperFunction& operator-=(const SuperFunction& o);
    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);

    SuperFunction scaled(const Rational& c) const;
    SuperFunction scaled(const LaurentPoly& c) const;

    // partial derivative in the even coordinate
    SuperFunction deriv_even() const;
    // left partial derivative in the l-th odd coordinate
    SuperFunction deriv_odd(int l) const;

    // the same function written in the other chart's coordinates
    SuperFunction to_other_chart(const GradingVector& k) const;

    // part of odd degree d
    SuperFunction degree_part(int d) const;
    int max_odd_degree() const;

    // Multiplicative inverse; requires the odd-degree-0 part to be a single
    // Laurent term (the nilpotent remainder is inverted by a finite series).
    SuperFunction inverse() const;
    SuperFunction pow(int e) const;

    friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
        return a.chart_ == b.chart_ && a.m_ == b.m_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

private:
    Chart chart_;
    int m_;
    std::map<OddMonomial, LaurentPoly, OddMonomialLess> terms_;
};

// Derivation target: d/dx (or d/dy) when l == 0, d/dxi_l (d/deta_l) when
// l >= 1.
struct FieldKey {
    OddMonomial odd;
    int target;

    friend bool operator==(const FieldKey& a, const FieldKey& b) {
        return a.odd == b.odd && a.target == b.target;
    }
};

struct FieldKeyLess {
    bool operator()(const FieldKey& a, const FieldKey& b) const {
        if (a.odd != b.odd) return OddMonomial::lex_less(a.odd, b.odd);
        return a.target < b.target;
    }
};

// Super vector field over one chart: canonical sorted sum of terms
// coeff * xi_I * d/d(target) with merged Laurent coefficients.
class SuperField {
public:
    SuperField() : chart_(Chart::U0), m_(0) {}
    SuperField(Chart chart, int m) : chart_(chart), m_(m) {}

    static SuperField term(Chart chart, int m, LaurentPoly coeff, OddMonomial odd, int target);

    Chart chart() const { return chart_; }
    int m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FieldKey, LaurentPoly, FieldKeyLess>& terms() const { return terms_; }

    LaurentPoly coeff(OddMonomial odd, int target) const {
        auto it = terms_.find({odd, target});
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add(OddMonomial odd, int target, const LaurentPoly& c);

    SuperField operator-() const;
    SuperField& operator+=(const SuperField& o);
    SuperField& operator-=(const SuperField& o);
    friend SuperField operator+(SuperField a, const SuperField& b) { return a += b; }
    friend SuperField operator-(SuperField a, const SuperField& b) { return a -= b; }

    SuperField scaled(const Rational& c) const;
    SuperField scaled(const LaurentPoly& c) const;

    // grading degree of one term: |odd| for the even target, |odd| - 1 for an
    // odd target
    static int term_degree(const FieldKey& k) {
        return k.target == 0 ? k.odd.size() : k.odd.size() - 1;
    }
    static int term_parity(const FieldKey& k) { return ((term_degree(k) % 2) + 2) % 2; }

    bool is_homogeneous(int degree) const;
    // nullopt-style: returns true and sets degree when all terms share one
    bool homogeneous_degree(int* degree) const;

    // v(f) by the graded Leibniz rule
    SuperFunction apply(const SuperFunction& f) const;

    friend bool operator==(const SuperField& a, const SuperField& b) {
        return a.chart_ == b.chart_ && a.m_ == b.m_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SuperField& a, const SuperField& b) { return !(a == b); }

private:
    Chart chart_;
    int m_;
    std::map<FieldKey, LaurentPoly, FieldKeyLess> terms_;
};

// [v,w] = v∘w - (-1)^{|v||w|} w∘v; mixed-parity inputs are split into
// parity-homogeneous parts and recombined.
SuperField super_bracket(const SuperField& v, const SuperField& w);

// The same derivation written in the other chart, via y = x^-1 and
// eta_i = x^-k_i xi_i (an involution).
SuperField change_chart(const SuperField& v, const GradingVector& k);

// Partition of terms by grading degree; absent degrees are omitted.
std::map<int, SuperField> grading_decompose(const SuperField& v);

// Parity-homogeneous parts (even, odd).
std::pair<SuperField, SuperField> parity_decompose(const SuperField& v);

struct HolomorphicSplit {
    SuperField u0_part;      // exponents >= 0 in every coefficient
    SuperField u1_part;      // transported to U1 it has exponents >= 0
    SuperField obstruction;  // remainder under the greedy split
};

// Greedy split of a field over the overlap; v = u0_part + u1_part +
// obstruction, with nonnegative-exponent terms claimed by u0_part first.
HolomorphicSplit holomorphic_split(const SuperField& v, const GradingVector& k);

}  // namespace superp1
