#include "superp1/superfield.hpp"

#include <algorithm>

#include "superp1/errors.hpp"

namespace superp1 {

int OddMonomial::max_index() const {
    if (mask_ == 0) return 0;
    return 32 - __builtin_clz(mask_);
}

std::vector<int> OddMonomial::indices() const {
    std::vector<int> out;
    for (int i = 1; i <= 32; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

int OddMonomial::mul_sign(OddMonomial a, OddMonomial b) {
    if (a.mask_ & b.mask_) return 0;
    // inversions: pairs (i in a, j in b) with i > j
    int inv = 0;
    unsigned bm = b.mask_;
    while (bm) {
        unsigned low = bm & (~bm + 1);
        // bits of a strictly above this factor of b
        inv += __builtin_popcount(a.mask_ & ~((low << 1) - 1));
        bm ^= low;
    }
    return (inv % 2 == 0) ? 1 : -1;
}

int OddMonomial::derivative_sign(int l) const {
    int before = __builtin_popcount(mask_ & ((1u << (l - 1)) - 1));
    return (before % 2 == 0) ? 1 : -1;
}

bool OddMonomial::lex_less(OddMonomial a, OddMonomial b) {
    if (a.mask_ == b.mask_) return false;
    unsigned diff = a.mask_ ^ b.mask_;
    unsigned low = diff & (~diff + 1);  // first index where membership differs
    if (a.mask_ & low) {
        // a's next factor is smaller unless b has already ended (is a prefix)
        return (b.mask_ & ~(low - 1)) != 0;
    }
    return (a.mask_ & ~(low - 1)) == 0;
}

// ---------------------------------------------------------------------------
// SuperFunction

SuperFunction SuperFunction::monomial(Chart chart, int m, LaurentPoly coeff, OddMonomial odd) {
    SuperFunction f(chart, m);
    f.add(odd, coeff);
    return f;
}

SuperFunction SuperFunction::coordinate(Chart chart, int m) {
    return monomial(chart, m, LaurentPoly::term(Rational(1), 1), OddMonomial());
}

SuperFunction SuperFunction::odd_coordinate(Chart chart, int m, int l) {
    return monomial(chart, m, LaurentPoly::one(), OddMonomial({l}));
}

void SuperFunction::add(OddMonomial odd, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(odd, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperFunction SuperFunction::operator-() const {
    SuperFunction r(chart_, m_);
    for (const auto& [odd, c] : terms_) r.terms_.emplace(odd, -c);
    return r;
}

namespace {

void require_same_ring(Chart ca, int ma, Chart cb, int mb, const char* what) {
    if (ca != cb) throw PreconditionError(std::string(what) + ": chart mismatch");
    if (ma != mb) throw PreconditionError(std::string(what) + ": odd dimension mismatch");
}

}  // namespace

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
    if (is_zero() && terms_.empty() && m_ == 0) {
        *this = SuperFunction(o.chart_, o.m_);
    }
    require_same_ring(chart_, m_, o.chart_, o.m_, "superfunction sum");
    for (const auto& [odd, c] : o.terms_) add(odd, c);
    return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) {
    require_same_ring(chart_, m_, o.chart_, o.m_, "superfunction difference");
    for (const auto& [odd, c] : o.terms_) add(odd, -c);
    return *this;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
    require_same_ring(a.chart_, a.m_, b.chart_, b.m_, "superfunction product");
    SuperFunction r(a.chart_, a.m_);
    for (const auto& [ia, ca] : a.terms_)
        for (const auto& [ib, cb] : b.terms_) {
            int sign = OddMonomial::mul_sign(ia, ib);
            if (sign == 0) continue;
            LaurentPoly c = ca * cb;
            if (sign < 0) c = -c;
            r.add(OddMonomial::mul(ia, ib), c);
        }
    return r;
}

SuperFunction SuperFunction::scaled(const Rational& c) const {
    SuperFunction r(chart_, m_);
    if (c.is_zero()) return r;
    for (const auto& [odd, a] : terms_) r.terms_.emplace(odd, a.scaled(c));
    return r;
}

SuperFunction SuperFunction::scaled(const LaurentPoly& c) const {
    SuperFunction r(chart_, m_);
    for (const auto& [odd, a] : terms_) r.add(odd, a * c);
    return r;
}

SuperFunction SuperFunction::deriv_even() const {
    SuperFunction r(chart_, m_);
    for (const auto& [odd, a] : terms_) r.add(odd, a.derivative());
    return r;
}

SuperFunction SuperFunction::deriv_odd(int l) const {
    SuperFunction r(chart_, m_);
    for (const auto& [odd, a] : terms_) {
        if (!odd.contains(l)) continue;
        LaurentPoly c = a;
        if (odd.derivative_sign(l) < 0) c = -c;
        r.add(odd.without(l), c);
    }
    return r;
}

SuperFunction SuperFunction::to_other_chart(const GradingVector& k) const {
    if (static_cast<int>(k.size()) != m_)
        throw PreconditionError("grading vector length does not match odd dimension");
    SuperFunction r(other_chart(chart_), m_);
    for (const auto& [odd, a] : terms_) {
        int shift = 0;
        for (int i : odd.indices()) shift += k[static_cast<std::size_t>(i - 1)];
        // c x^n xi_I = c y^{-n-sum(k_I)} eta_I (and symmetrically back)
        LaurentPoly moved;
        for (const auto& [n, c] : a.terms()) moved += LaurentPoly::term(c, -n - shift);
        r.add(odd, moved);
    }
    return r;
}

SuperFunction SuperFunction::degree_part(int d) const {
    SuperFunction r(chart_, m_);
    for (const auto& [odd, a] : terms_)
        if (odd.size() == d) r.terms_.emplace(odd, a);
    return r;
}

int SuperFunction::max_odd_degree() const {
    int d = 0;
    for (const auto& [odd, a] : terms_) d = std::max(d, odd.size());
    return d;
}

SuperFunction SuperFunction::inverse() const {
    SuperFunction body = degree_part(0);
    if (body.is_zero() || body.terms().begin()->second.terms().size() != 1)
        throw PreconditionError("superfunction inverse requires a monomial body");
    const auto& [exp, c] = *body.terms().begin()->second.terms().begin();
    LaurentPoly body_inv = LaurentPoly::term(c.inverse(), -exp);
    // f = b (1 + w) with w nilpotent of odd degree >= 1
    SuperFunction w = (*this - body).scaled(body_inv);
    SuperFunction acc = monomial(chart_, m_, LaurentPoly::one(), OddMonomial());
    SuperFunction power = acc;
    for (int d = 1; d <= m_; ++d) {
        power = power * w;
        if (power.is_zero()) break;
        if (d % 2 == 0)
            acc += power;
        else
            acc -= power;
    }
    return acc.scaled(body_inv);
}

SuperFunction SuperFunction::pow(int e) const {
    SuperFunction base = e >= 0 ? *this : inverse();
    int n = e >= 0 ? e : -e;
    SuperFunction acc = monomial(chart_, m_, LaurentPoly::one(), OddMonomial());
    for (int i = 0; i < n; ++i) acc = acc * base;
    return acc;
}

// ---------------------------------------------------------------------------
// SuperField

SuperField SuperField::term(Chart chart, int m, LaurentPoly coeff, OddMonomial odd, int target) {
    SuperField f(chart, m);
    f.add(odd, target, coeff);
    return f;
}

void SuperField::add(OddMonomial odd, int target, const LaurentPoly& c) {
    if (c.is_zero()) return;
    if (target < 0 || target > m_) throw PreconditionError("derivation target out of range");
    if (odd.max_index() > m_) throw PreconditionError("odd index out of range");
    FieldKey key{odd, target};
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperField SuperField::operator-() const {
    SuperField r(chart_, m_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

SuperField& SuperField::operator+=(const SuperField& o) {
    require_same_ring(chart_, m_, o.chart_, o.m_, "field sum");
    for (const auto& [key, c] : o.terms_) add(key.odd, key.target, c);
    return *this;
}

SuperField& SuperField::operator-=(const SuperField& o) {
    require_same_ring(chart_, m_, o.chart_, o.m_, "field difference");
    for (const auto& [key, c] : o.terms_) add(key.odd, key.target, -c);
    return *this;
}

SuperField SuperField::scaled(const Rational& c) const {
    SuperField r(chart_, m_);
    if (c.is_zero()) return r;
    for (const auto& [key, a] : terms_) r.terms_.emplace(key, a.scaled(c));
    return r;
}

SuperField SuperField::scaled(const LaurentPoly& c) const {
    SuperField r(chart_, m_);
    for (const auto& [key, a] : terms_) r.add(key.odd, key.target, a * c);
    return r;
}

bool SuperField::is_homogeneous(int degree) const {
    for (const auto& [key, c] : terms_)
        if (term_degree(key) != degree) return false;
    return true;
}

bool SuperField::homogeneous_degree(int* degree) const {
    if (terms_.empty()) return false;
    int d = term_degree(terms_.begin()->first);
    if (!is_homogeneous(d)) return false;
    *degree = d;
    return true;
}

SuperFunction SuperField::apply(const SuperFunction& f) const {
    require_same_ring(chart_, m_, f.chart(), f.m(), "apply_derivation");
    SuperFunction out(chart_, m_);
    for (const auto& [key, c] : terms_) {
        SuperFunction df = key.target == 0 ? f.deriv_even() : f.deriv_odd(key.target);
        if (df.is_zero()) continue;
        out += SuperFunction::monomial(chart_, m_, c, key.odd) * df;
    }
    return out;
}

std::map<int, SuperField> grading_decompose(const SuperField& v) {
    std::map<int, SuperField> out;
    for (const auto& [key, c] : v.terms()) {
        int d = SuperField::term_degree(key);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, SuperField(v.chart(), v.m())).first;
        it->second.add(key.odd, key.target, c);
    }
    return out;
}

std::pair<SuperField, SuperField> parity_decompose(const SuperField& v) {
    SuperField even(v.chart(), v.m()), odd(v.chart(), v.m());
    for (const auto& [key, c] : v.terms()) {
        if (SuperField::term_parity(key) == 0)
            even.add(key.odd, key.target, c);
        else
            odd.add(key.odd, key.target, c);
    }
    return {even, odd};
}

namespace {

// Reassembles a derivation from its values on the chart coordinates:
// D = D(z0) d/dz0 + sum_l D(xi_l) d/dxi_l.
SuperField field_from_generator_values(Chart chart, int m, const SuperFunction& on_even,
                                       const std::vector<SuperFunction>& on_odd) {
    SuperField out(chart, m);
    for (const auto& [odd, c] : on_even.terms()) out.add(odd, 0, c);
    for (int l = 1; l <= m; ++l)
        for (const auto& [odd, c] : on_odd[static_cast<std::size_t>(l - 1)].terms())
            out.add(odd, l, c);
    return out;
}

SuperField bracket_homogeneous(const SuperField& v, const SuperField& w, int pv, int pw) {
    Chart chart = v.chart();
    int m = v.m();
    bool minus = (pv * pw) % 2 != 0;
    auto commutator = [&](const SuperFunction& z) {
        SuperFunction a = v.apply(w.apply(z));
        SuperFunction b = w.apply(v.apply(z));
        return minus ? a + b : a - b;
    };
    SuperFunction on_even = commutator(SuperFunction::coordinate(chart, m));
    std::vector<SuperFunction> on_odd;
    on_odd.reserve(static_cast<std::size_t>(m));
    for (int l = 1; l <= m; ++l)
        on_odd.push_back(commutator(SuperFunction::odd_coordinate(chart, m, l)));
    return field_from_generator_values(chart, m, on_even, on_odd);
}

}  // namespace

SuperField super_bracket(const SuperField& v, const SuperField& w) {
    require_same_ring(v.chart(), v.m(), w.chart(), w.m(), "super_bracket");
    auto [v0, v1] = parity_decompose(v);
    auto [w0, w1] = parity_decompose(w);
    SuperField out(v.chart(), v.m());
    const SuperField* vs[2] = {&v0, &v1};
    const SuperField* ws[2] = {&w0, &w1};
    for (int pv = 0; pv < 2; ++pv)
        for (int pw = 0; pw < 2; ++pw) {
            if (vs[pv]->is_zero() || ws[pw]->is_zero()) continue;
            out += bracket_homogeneous(*vs[pv], *ws[pw], pv, pw);
        }
    return out;
}

SuperField change_chart(const SuperField& v, const GradingVector& k) {
    if (static_cast<int>(k.size()) != v.m())
        throw PreconditionError("grading vector length does not match odd dimension");
    Chart src = v.chart();
    int m = v.m();
    // the other chart's coordinates expressed over this chart:
    // z' = x^-1, xi'_l = x^-k_l xi_l (the gluing is symmetric in both
    // directions)
    SuperFunction even_coord =
        SuperFunction::monomial(src, m, LaurentPoly::term(Rational(1), -1), OddMonomial());
    SuperFunction on_even = v.apply(even_coord).to_other_chart(k);
    std::vector<SuperFunction> on_odd;
    on_odd.reserve(static_cast<std::size_t>(m));
    for (int l = 1; l <= m; ++l) {
        SuperFunction coord = SuperFunction::monomial(
            src, m, LaurentPoly::term(Rational(1), -k[static_cast<std::size_t>(l - 1)]),
            OddMonomial({l}));
        on_odd.push_back(v.apply(coord).to_other_chart(k));
    }
    return field_from_generator_values(other_chart(src), m, on_even, on_odd);
}

namespace {

LaurentPoly nonneg_part(const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [n, c] : p.terms())
        if (n >= 0) out += LaurentPoly::term(c, n);
    return out;
}

SuperField nonneg_field_part(const SuperField& v) {
    SuperField out(v.chart(), v.m());
    for (const auto& [key, c] : v.terms()) out.add(key.odd, key.target, nonneg_part(c));
    return out;
}

}  // namespace

HolomorphicSplit holomorphic_split(const SuperField& v, const GradingVector& k) {
    if (v.chart() != Chart::U0)
        throw PreconditionError("holomorphic_split expects a field on chart U0");
    HolomorphicSplit out;
    out.u0_part = nonneg_field_part(v);
    SuperField rest = v - out.u0_part;
    SuperField transported = change_chart(rest, k);
    out.u1_part = change_chart(nonneg_field_part(transported), k);
    out.obstruction = rest - out.u1_part;
    return out;
}

}  // namespace superp1
