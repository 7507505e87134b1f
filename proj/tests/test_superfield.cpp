#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superp1/errors.hpp"
#include "superp1/field_text.hpp"
#include "superp1/superfield.hpp"

using namespace superp1;

namespace {

SuperField f0(int m) { return SuperField(Chart::U0, m); }

SuperField parse0(const std::string& s, int m) { return parse_field(s, Chart::U0, m); }
SuperField parse1(const std::string& s, int m) { return parse_field(s, Chart::U1, m); }

SuperFunction fn0(int m, const LaurentPoly& c, OddMonomial odd) {
    return SuperFunction::monomial(Chart::U0, m, c, odd);
}

struct FieldGen {
    std::mt19937 rng;
    explicit FieldGen(unsigned seed) : rng(seed) {}

    Rational rational() {
        std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
        long n = num(rng);
        if (n == 0) n = 1;
        return Rational(n, den(rng));
    }

    SuperField field(int m, int max_terms = 3) {
        std::uniform_int_distribution<int> nterms(1, max_terms), expo(-6, 6), tgt(0, m);
        std::uniform_int_distribution<unsigned> mask(0, (1u << m) - 1);
        SuperField v(Chart::U0, m);
        int n = nterms(rng);
        for (int i = 0; i < n; ++i)
            v.add(OddMonomial(mask(rng)), tgt(rng), LaurentPoly::term(rational(), expo(rng)));
        return v;
    }

    SuperField homogeneous_parity(int m, int parity) {
        SuperField v = field(m, 4);
        auto [even, odd] = parity_decompose(v);
        SuperField out = parity == 0 ? even : odd;
        if (out.is_zero())
            out.add(parity == 0 ? OddMonomial() : OddMonomial({1}), 0, LaurentPoly::one());
        return out;
    }

    GradingVector grading(int m) {
        std::uniform_int_distribution<int> ki(-4, 6);
        GradingVector k;
        for (int i = 0; i < m; ++i) k.push_back(ki(rng));
        return k;
    }
};

}  // namespace

TEST_CASE("odd monomial order and signs") {
    using OM = OddMonomial;
    CHECK(OM::lex_less(OM(), OM({1})));
    CHECK(OM::lex_less(OM({1, 2}), OM({1, 2, 3})));
    CHECK(OM::lex_less(OM({1, 2, 3}), OM({1, 3})));
    CHECK(OM::lex_less(OM({1, 3}), OM({2})));
    CHECK(!OM::lex_less(OM({2}), OM({1, 3})));

    CHECK(OM::mul_sign(OM({1}), OM({1})) == 0);
    CHECK(OM::mul_sign(OM({2}), OM({1})) == -1);
    CHECK(OM::mul_sign(OM({2, 3}), OM({1})) == 1);
    CHECK(OM({1, 2, 3}).derivative_sign(2) == -1);
    CHECK(OM({1, 2, 3}).derivative_sign(1) == 1);
}

TEST_CASE("apply_derivation examples") {
    // (xi1 xi2 d/dx)(x) = xi1 xi2
    SuperField v = parse0("xi1*xi2 d/dx", 2);
    SuperFunction x = SuperFunction::coordinate(Chart::U0, 2);
    CHECK(v.apply(x) == fn0(2, LaurentPoly::one(), OddMonomial({1, 2})));

    // (d/dxi2)(xi1 xi2) = -xi1
    SuperField d2 = parse0("d/dxi2", 2);
    SuperFunction f = fn0(2, LaurentPoly::one(), OddMonomial({1, 2}));
    CHECK(d2.apply(f) == fn0(2, LaurentPoly::constant(Rational(-1)), OddMonomial({1})));

    // ((1/x) xi1 xi2 d/dx)(x^-1) = -x^-3 xi1 xi2
    SuperField w = parse0("x^-1 xi1*xi2 d/dx", 2);
    SuperFunction xinv = fn0(2, LaurentPoly::term(Rational(1), -1), OddMonomial());
    CHECK(w.apply(xinv) == fn0(2, LaurentPoly::term(Rational(-1), -3), OddMonomial({1, 2})));

    SuperFunction wrong_chart(Chart::U1, 2);
    wrong_chart.add(OddMonomial(), LaurentPoly::one());
    CHECK_THROWS_AS(v.apply(wrong_chart), PreconditionError);
}

TEST_CASE("graded Leibniz rule for apply_derivation") {
    FieldGen gen(555);
    for (int trial = 0; trial < 120; ++trial) {
        int m = 3;
        SuperField v = gen.homogeneous_parity(m, trial % 2);
        int pv = trial % 2;
        std::uniform_int_distribution<unsigned> mask(0, (1u << m) - 1);
        std::uniform_int_distribution<int> expo(-4, 4);
        OddMonomial om(mask(gen.rng));
        SuperFunction f = fn0(m, LaurentPoly::term(gen.rational(), expo(gen.rng)), om);
        SuperFunction g =
            fn0(m, LaurentPoly::term(gen.rational(), expo(gen.rng)), OddMonomial(mask(gen.rng)));
        SuperFunction lhs = v.apply(f * g);
        int sign = (pv * om.size()) % 2 ? -1 : 1;
        SuperFunction rhs = v.apply(f) * g + (sign < 0 ? -(f * v.apply(g)) : f * v.apply(g));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("super bracket examples") {
    // [d/dx, x d/dx] = d/dx
    SuperField ddx = parse0("d/dx", 1);
    SuperField xddx = parse0("x^1 d/dx", 1);
    CHECK(super_bracket(ddx, xddx) == ddx);

    // with k = (k1,k2,k3): f = change_chart(d/dy) = -x^2 d/dx - sum k_i x xi_i d/dxi_i
    GradingVector k{2, 1, -3};
    SuperField f = change_chart(parse1("d/dy", 3), k);
    SuperField expect = f0(3);
    expect.add(OddMonomial(), 0, LaurentPoly::term(Rational(-1), 2));
    for (int i = 1; i <= 3; ++i)
        expect.add(OddMonomial({i}), i,
                   LaurentPoly::term(Rational(-k[static_cast<std::size_t>(i - 1)]), 1));
    CHECK(f == expect);

    // h = [e,f] = -2x d/dx - sum k_i xi_i d/dxi_i
    SuperField e = parse0("d/dx", 3);
    SuperField h = super_bracket(e, f);
    SuperField hexpect = f0(3);
    hexpect.add(OddMonomial(), 0, LaurentPoly::term(Rational(-2), 1));
    for (int i = 1; i <= 3; ++i)
        hexpect.add(OddMonomial({i}), i,
                    LaurentPoly::constant(Rational(-k[static_cast<std::size_t>(i - 1)])));
    CHECK(h == hexpect);

    // [h, e] = 2e
    CHECK(super_bracket(h, e) == e.scaled(Rational(2)));
    // [h, f] = -2f
    CHECK(super_bracket(h, f) == f.scaled(Rational(-2)));
}

TEST_CASE("change_chart matches the published transition formulas") {
    GradingVector k{2, 1, -3};
    // xi_i xi_j d/dx -> -y^{2-k_i-k_j} eta_i eta_j d/dy
    //                   - k_l y^{1-k_i-k_j} eta_i eta_j eta_l d/deta_l
    for (auto [i, j, l] : {std::tuple{1, 2, 3}, std::tuple{1, 3, 2}, std::tuple{2, 3, 1}}) {
        SuperField v = f0(3);
        v.add(OddMonomial({i, j}), 0, LaurentPoly::one());
        int K = k[static_cast<std::size_t>(i - 1)] + k[static_cast<std::size_t>(j - 1)];
        int kl = k[static_cast<std::size_t>(l - 1)];
        SuperField expect(Chart::U1, 3);
        expect.add(OddMonomial({i, j}), 0, LaurentPoly::term(Rational(-1), 2 - K));
        int sign = OddMonomial::mul_sign(OddMonomial({i, j}), OddMonomial({l}));
        expect.add(OddMonomial({1, 2, 3}), l, LaurentPoly::term(Rational(-kl * sign), 1 - K));
        CHECK(change_chart(v, k) == expect);
    }

    // xi_i xi_j xi_l d/dxi_l -> y^{-k_i-k_j} eta_i eta_j eta_l d/deta_l
    {
        SuperField v = f0(3);
        v.add(OddMonomial({1, 2, 3}), 3, LaurentPoly::one());
        SuperField expect(Chart::U1, 3);
        expect.add(OddMonomial({1, 2, 3}), 3, LaurentPoly::term(Rational(1), -(k[0] + k[1])));
        CHECK(change_chart(v, k) == expect);
    }

    // d/dxi_l -> y^{k_l} d/deta_l
    for (int l = 1; l <= 3; ++l) {
        SuperField v = f0(3);
        v.add(OddMonomial(), l, LaurentPoly::one());
        SuperField expect(Chart::U1, 3);
        expect.add(OddMonomial(), l,
                   LaurentPoly::term(Rational(1), k[static_cast<std::size_t>(l - 1)]));
        CHECK(change_chart(v, k) == expect);
    }
}

TEST_CASE("change_chart is an involution") {
    FieldGen gen(777);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + trial % 3;
        GradingVector k = gen.grading(m);
        SuperField v = gen.field(m);
        CHECK(change_chart(change_chart(v, k), k) == v);
    }
}

TEST_CASE("bracket is graded antisymmetric and satisfies Jacobi") {
    FieldGen gen(901);
    for (int trial = 0; trial < 170; ++trial) {
        int m = 1 + trial % 3;
        int pu = trial % 2, pv = (trial / 2) % 2, pw = (trial / 4) % 2;
        SuperField u = gen.homogeneous_parity(m, pu);
        SuperField v = gen.homogeneous_parity(m, pv);
        SuperField w = gen.homogeneous_parity(m, pw);

        SuperField anti = super_bracket(v, w);
        SuperField flipped = super_bracket(w, v);
        if ((pv * pw) % 2 == 0) flipped = -flipped;
        CHECK(anti == flipped);

        // [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]]
        SuperField lhs = super_bracket(u, super_bracket(v, w));
        SuperField rhs = super_bracket(super_bracket(u, v), w);
        SuperField second = super_bracket(v, super_bracket(u, w));
        if ((pu * pv) % 2 == 1) second = -second;
        rhs += second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("change_chart commutes with the bracket and respects degree") {
    FieldGen gen(313);
    for (int trial = 0; trial < 120; ++trial) {
        int m = 1 + trial % 3;
        GradingVector k = gen.grading(m);
        SuperField v = gen.field(m);
        SuperField w = gen.field(m);
        CHECK(change_chart(super_bracket(v, w), k) ==
              super_bracket(change_chart(v, k), change_chart(w, k)));
    }
    for (int trial = 0; trial < 100; ++trial) {
        int m = 3;
        SuperField v = gen.field(m, 1);
        SuperField w = gen.field(m, 1);
        int dv, dw;
        REQUIRE(v.homogeneous_degree(&dv));
        REQUIRE(w.homogeneous_degree(&dw));
        SuperField b = super_bracket(v, w);
        if (!b.is_zero()) CHECK(b.is_homogeneous(dv + dw));
    }
}

TEST_CASE("grading decomposition") {
    SuperField v = parse0("xi1*xi2 d/dx + d/dxi1", 2);
    auto parts = grading_decompose(v);
    REQUIRE(parts.size() == 2);
    CHECK(parts.count(2) == 1);
    CHECK(parts.count(-1) == 1);
    CHECK(parts[2] == parse0("xi1*xi2 d/dx", 2));
    CHECK(parts[-1] == parse0("d/dxi1", 2));

    CHECK(grading_decompose(f0(2)).empty());

    SuperField e2 = parse0("d/dx + xi2 d/dxi1 + xi3 d/dxi2", 3);
    auto p2 = grading_decompose(e2);
    REQUIRE(p2.size() == 1);
    CHECK(p2.count(0) == 1);
    CHECK(p2[0] == e2);
}

TEST_CASE("holomorphic split") {
    // polynomial coefficients stay in u0_part
    GradingVector k{2, 2, 0};
    SuperField v = parse0("x^3 xi1*xi2 d/dx", 3);
    HolomorphicSplit s = holomorphic_split(v, k);
    CHECK(s.u0_part == v);
    CHECK(s.u1_part.is_zero());
    CHECK(s.obstruction.is_zero());

    // k1+k2 = 4: x^-3 xi1 xi2 xi3 d/dxi3 transports to exponent -1, so it is
    // an obstruction ...
    SuperField o = parse0("x^-3 xi1*xi2*xi3 d/dxi3", 3);
    s = holomorphic_split(o, k);
    CHECK(s.u0_part.is_zero());
    CHECK(s.u1_part.is_zero());
    CHECK(s.obstruction == o);

    // ... while x^-4 transports to exponent 0 and is U1-holomorphic
    SuperField u = parse0("x^-4 xi1*xi2*xi3 d/dxi3", 3);
    s = holomorphic_split(u, k);
    CHECK(s.u0_part.is_zero());
    CHECK(s.u1_part == u);
    CHECK(s.obstruction.is_zero());

    // recombination and chart-side holomorphy on random fields
    FieldGen gen(4242);
    for (int trial = 0; trial < 80; ++trial) {
        int m = 1 + trial % 3;
        GradingVector kk = gen.grading(m);
        SuperField w = gen.field(m);
        HolomorphicSplit sp = holomorphic_split(w, kk);
        CHECK(sp.u0_part + sp.u1_part + sp.obstruction == w);
        for (const auto& [key, c] : sp.u0_part.terms()) CHECK(c.is_polynomial());
        SuperField back = change_chart(sp.u1_part, kk);
        for (const auto& [key, c] : back.terms()) CHECK(c.is_polynomial());
    }
}

TEST_CASE("field text round trip and examples") {
    CHECK(render_field(parse0("x^-1 xi1*xi2 d/dx", 2)) == "x^-1 xi1*xi2 d/dx");
    CHECK(render_field(f0(2)) == "0");
    CHECK(parse0("0", 3).is_zero());

    // canonical order: odd monomial lex, even target first, odd targets
    // ascending
    SuperField eq10 = parse0(
        "x^-3 xi1*xi2*xi3 d/dxi3 - 1/2*x^-2 xi1*xi2*xi3 d/dxi2 + 1/2*x^-1 xi1*xi2*xi3 d/dxi1",
        3);
    CHECK(render_field(eq10) ==
          "1/2*x^-1 xi1*xi2*xi3 d/dxi1 - 1/2*x^-2 xi1*xi2*xi3 d/dxi2 + x^-3 xi1*xi2*xi3 d/dxi3");
    CHECK(parse_field(render_field(eq10), Chart::U0, 3) == eq10);

    // unordered factors pick up the Koszul sign
    CHECK(parse0("xi2*xi1 d/dx", 2) == parse0("xi1*xi2 d/dx", 2).scaled(Rational(-1)));

    CHECK_THROWS_AS(parse0("xi1*xi1 d/dx", 2), ParseError);
    CHECK_THROWS_AS(parse0("xi5 d/dx", 3), ParseError);
    CHECK_THROWS_AS(parse0("x^-1 xi1", 2), ParseError);
    CHECK_THROWS_AS(parse0("", 2), ParseError);

    // U1 grammar; canonical order puts the shorter monomial first
    SuperField u1 = parse1("y^-2 eta1*eta2 d/dy - eta1 d/deta2", 2);
    CHECK(render_field(u1) == "-eta1 d/deta2 + y^-2 eta1*eta2 d/dy");
    CHECK(parse_field(render_field(u1), Chart::U1, 2) == u1);

    FieldGen gen(90125);
    for (int trial = 0; trial < 150; ++trial) {
        int m = 1 + trial % 3;
        SuperField v = gen.field(m, 4);
        CHECK(parse_field(render_field(v), Chart::U0, m) == v);
    }
}
