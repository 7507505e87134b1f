#include "superp1/sl2.hpp"

#include <algorithm>

#include "superp1/errors.hpp"

namespace superp1 {

std::string kind_name(Sl2Kind kind) {
    switch (kind) {
        case Sl2Kind::S: return "s";
        case Sl2Kind::SPrime: return "s-prime";
        case Sl2Kind::SDoublePrime: return "s-double-prime";
    }
    return "?";
}

std::optional<Sl2Kind> kind_from_name(const std::string& name) {
    if (name == "s") return Sl2Kind::S;
    if (name == "s-prime") return Sl2Kind::SPrime;
    if (name == "s-double-prime") return Sl2Kind::SDoublePrime;
    return std::nullopt;
}

bool is_constructible(Sl2Kind kind, const GradingVector& k) {
    switch (kind) {
        case Sl2Kind::S: return true;
        case Sl2Kind::SPrime: return k.size() >= 2 && k[0] == k[1];
        case Sl2Kind::SDoublePrime: return k.size() == 3 && k[0] == k[1] && k[1] == k[2];
    }
    return false;
}

Sl2Triple make_algebra(Sl2Kind kind, const GradingVector& k) {
    int m = static_cast<int>(k.size());
    Sl2Triple t;
    t.kind = kind;
    t.k = k;
    SuperField e(Chart::U0, m), f_u1(Chart::U1, m);
    e.add(OddMonomial(), 0, LaurentPoly::one());     // d/dx
    f_u1.add(OddMonomial(), 0, LaurentPoly::one());  // d/dy
    switch (kind) {
        case Sl2Kind::S:
            break;
        case Sl2Kind::SPrime:
            if (m < 2) throw PreconditionError("s-prime requires m >= 2");
            if (k[0] != k[1]) throw PreconditionError("s-prime requires k1=k2");
            e.add(OddMonomial({2}), 1, LaurentPoly::one());     // xi2 d/dxi1
            f_u1.add(OddMonomial({1}), 2, LaurentPoly::one());  // eta1 d/deta2
            break;
        case Sl2Kind::SDoublePrime:
            if (m != 3) throw PreconditionError("s-double-prime requires m = 3");
            if (k[0] != k[1] || k[1] != k[2])
                throw PreconditionError("s-double-prime requires k1=k2=k3");
            e.add(OddMonomial({2}), 1, LaurentPoly::one());
            e.add(OddMonomial({3}), 2, LaurentPoly::one());
            f_u1.add(OddMonomial({1}), 2, LaurentPoly::constant(Rational(2)));
            f_u1.add(OddMonomial({2}), 3, LaurentPoly::constant(Rational(2)));
            break;
    }
    t.e = e;
    t.f = change_chart(f_u1, k);
    t.h = super_bracket(t.e, t.f);
    return t;
}

RationalMatrix ad_matrix(const Sl2Triple& a, char generator, const H1ContextPtr& ctx) {
    if (ctx->k() != a.k) throw PreconditionError("context/algebra grading mismatch");
    const SuperField* g = nullptr;
    switch (generator) {
        case 'e': g = &a.e; break;
        case 'f': g = &a.f; break;
        case 'h': g = &a.h; break;
        default: throw PreconditionError("generator must be one of e, f, h");
    }
    std::size_t n = ctx->dim();
    RationalMatrix mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        CohClass img = ctx->reduce(super_bracket(*g, ctx->basis()[j]));
        for (std::size_t i = 0; i < n; ++i) mat.at(i, j) = img.coords[i];
    }
    return mat;
}

namespace {

// builds sum of c * x^exp * xi_(odd) d/d(target) terms on U0
SuperField u0_field(int m,
                    std::initializer_list<std::tuple<Rational, int, OddMonomial, int>> parts) {
    SuperField out(Chart::U0, m);
    for (const auto& [c, exp, odd, target] : parts)
        out.add(odd, target, LaurentPoly::term(c, exp));
    return out;
}

// xi_i xi_j xi_l written in that order equals sign * xi_{1,2,3}
int triple_sign(int i, int j, int l) {
    return OddMonomial::mul_sign(OddMonomial({i, j}), OddMonomial({l}));
}

}  // namespace

std::vector<SuperField> published_invariants(Sl2Kind kind, const GradingVector& k) {
    int m = static_cast<int>(k.size());
    std::vector<SuperField> out;
    const OddMonomial all3({1, 2, 3});

    if (kind == Sl2Kind::S) {
        if (m != 2 && m != 3) return out;
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) {
                int K = k[static_cast<std::size_t>(i - 1)] + k[static_cast<std::size_t>(j - 1)];
                int l = 0;
                if (m == 3)
                    for (int c = 1; c <= 3; ++c)
                        if (c != i && c != j) l = c;
                if (K == 4) {
                    SuperField v(Chart::U0, m);
                    v.add(OddMonomial({i, j}), 0, LaurentPoly::term(Rational(1), -1));
                    if (m == 3) {
                        Rational c(k[static_cast<std::size_t>(l - 1)], 2);
                        c = c * Rational(triple_sign(i, j, l));
                        v.add(all3, l, LaurentPoly::term(c, -2));
                    }
                    out.push_back(v);
                } else if (m == 3 && K == 2 && k[static_cast<std::size_t>(l - 1)] == 0) {
                    SuperField v(Chart::U0, m);
                    v.add(all3, l, LaurentPoly::term(Rational(triple_sign(i, j, l)), -1));
                    out.push_back(v);
                }
            }
        return out;
    }

    if (kind == Sl2Kind::SPrime) {
        if (m != 3 || k[0] != k[1]) return out;
        int t = k[0], k3 = k[2];
        if (t == 2 && k3 == 1) {
            out.push_back(u0_field(3, {{Rational(1), -1, OddMonomial({1, 2}), 0},
                                       {Rational(1, 2), -2, all3, 3}}));
            out.push_back(u0_field(3, {{Rational(1), -2, all3, 2}, {Rational(-1), -1, all3, 1}}));
        } else if (t == 2 && k3 == 3) {
            out.push_back(u0_field(3, {{Rational(1), -1, OddMonomial({1, 2}), 0},
                                       {Rational(3, 2), -2, all3, 3}}));
            out.push_back(u0_field(3, {{Rational(1), -1, OddMonomial({2, 3}), 0},
                                       {Rational(1), -2, OddMonomial({1, 3}), 0},
                                       {Rational(2, 3), -2, all3, 1},
                                       {Rational(-4, 3), -3, all3, 2}}));
        } else if (t == 2) {
            out.push_back(u0_field(3, {{Rational(1), -1, OddMonomial({1, 2}), 0},
                                       {Rational(k3, 2), -2, all3, 3}}));
        } else if (k3 == 3 - t) {
            out.push_back(u0_field(3, {{Rational(1), -2, all3, 2}, {Rational(-1), -1, all3, 1}}));
        } else if (k3 == 5 - t) {
            out.push_back(u0_field(3, {{Rational(1), -1, OddMonomial({2, 3}), 0},
                                       {Rational(1), -2, OddMonomial({1, 3}), 0},
                                       {Rational(t, 3), -2, all3, 1},
                                       {Rational(-2 * t, 3), -3, all3, 2}}));
        } else if (t == 1 && k3 == 0) {
            out.push_back(u0_field(3, {{Rational(1), -1, all3, 3}}));
        }
        return out;
    }

    // SDoublePrime
    if (m != 3 || k[0] != k[1] || k[1] != k[2]) return out;
    if (k[0] == 2) {
        out.push_back(u0_field(3, {{Rational(1), -3, all3, 3},
                                   {Rational(-1, 2), -2, all3, 2},
                                   {Rational(1, 2), -1, all3, 1}}));
    } else if (k[0] == 3) {
        out.push_back(u0_field(3, {{Rational(1), -3, OddMonomial({1, 2}), 0},
                                   {Rational(1, 2), -2, OddMonomial({1, 3}), 0},
                                   {Rational(1, 2), -1, OddMonomial({2, 3}), 0},
                                   {Rational(3, 8), -2, all3, 1},
                                   {Rational(-3, 4), -3, all3, 2},
                                   {Rational(9, 4), -4, all3, 3}}));
    }
    return out;
}

std::size_t expected_invariant_dimension(Sl2Kind kind, const GradingVector& k) {
    int m = static_cast<int>(k.size());
    if (m == 1) return 0;
    if (kind == Sl2Kind::S) {
        std::size_t dim = 0;
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) {
                int K = k[static_cast<std::size_t>(i - 1)] + k[static_cast<std::size_t>(j - 1)];
                if (K == 4) {
                    ++dim;
                } else if (m == 3 && K == 2) {
                    int l = 6 - i - j;
                    if (k[static_cast<std::size_t>(l - 1)] == 0) ++dim;
                }
            }
        return dim;
    }
    if (kind == Sl2Kind::SPrime) {
        if (k.size() >= 2 && k[0] != k[1]) return 0;
        if (m == 2) return k[0] == 2 ? 1 : 0;
        int t = k[0], k3 = k[2];
        if (t == 2 && (k3 == 1 || k3 == 3)) return 2;
        if (t == 2) return 1;
        if (k3 == 3 - t || k3 == 5 - t) return 1;
        if (t == 1 && k3 == 0) return 1;
        return 0;
    }
    // SDoublePrime
    if (m != 3 || k[0] != k[1] || k[1] != k[2]) return 0;
    return (k[0] == 2 || k[0] == 3) ? 1 : 0;
}

std::vector<CohClass> invariant_subspace(Sl2Kind kind, const H1ContextPtr& ctx) {
    Sl2Triple a = make_algebra(kind, ctx->k());
    std::size_t n = ctx->dim();

    // chained kernels: restrict to ker(ad h), then ker(ad e), then ker(ad f)
    std::vector<std::vector<Rational>> space;
    space.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> unit(n);
        unit[i] = Rational(1);
        space.push_back(std::move(unit));
    }
    for (const SuperField* gen : {&a.h, &a.e, &a.f}) {
        if (space.empty()) break;
        RationalMatrix mat(n, space.size());
        for (std::size_t j = 0; j < space.size(); ++j) {
            SuperField rep = ctx->class_from_coords(space[j]).representative;
            CohClass img = ctx->reduce(super_bracket(*gen, rep));
            for (std::size_t i = 0; i < n; ++i) mat.at(i, j) = img.coords[i];
        }
        auto ker = kernel_basis(mat);
        std::vector<std::vector<Rational>> next;
        next.reserve(ker.size());
        for (const auto& kv : ker) {
            std::vector<Rational> v(n);
            for (std::size_t j = 0; j < space.size(); ++j)
                if (!kv[j].is_zero())
                    for (std::size_t i = 0; i < n; ++i) v[i] += kv[j] * space[j][i];
            next.push_back(std::move(v));
        }
        space = std::move(next);
    }

    // prefer the published representatives when they span the computed space
    std::vector<SuperField> published = published_invariants(kind, ctx->k());
    if (!published.empty() && published.size() == space.size()) {
        RationalMatrix span(n, space.size());
        for (std::size_t j = 0; j < space.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) span.at(i, j) = space[j][i];
        std::vector<CohClass> classes;
        bool ok = true;
        for (const auto& p : published) {
            CohClass cls = ctx->reduce(p);
            if (!solve(span, cls.coords)) {
                ok = false;
                break;
            }
            classes.push_back(std::move(cls));
        }
        if (ok) return classes;
    }

    // deterministic fallback: echelonized kernel vectors
    if (!space.empty()) {
        RationalMatrix rows(space.size(), n);
        for (std::size_t j = 0; j < space.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) rows.at(j, i) = space[j][i];
        RrefResult r = rref(rows);
        std::vector<CohClass> classes;
        for (std::size_t j = 0; j < r.rank; ++j) {
            std::vector<Rational> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = r.reduced.at(j, i);
            classes.push_back(ctx->class_from_coords(std::move(v)));
        }
        return classes;
    }
    return {};
}

std::vector<CohClass> invariant_subspace(Sl2Kind kind, const GradingVector& k) {
    return invariant_subspace(kind, H1Context::build(k, 2));
}

std::vector<Sl2Kind> homogeneity_certificate(const GradingVector& k, const CohClass& z) {
    if (!z.context) throw PreconditionError("class without context");
    if (z.context->k() != k) throw PreconditionError("class was built on a different grading");
    std::vector<Sl2Kind> out;
    for (Sl2Kind kind : {Sl2Kind::S, Sl2Kind::SPrime, Sl2Kind::SDoublePrime}) {
        if (!is_constructible(kind, k)) continue;
        Sl2Triple a = make_algebra(kind, k);
        bool annihilates = true;
        for (const SuperField* gen : {&a.e, &a.f, &a.h}) {
            if (!z.context->reduce(super_bracket(*gen, z.representative)).is_zero()) {
                annihilates = false;
                break;
            }
        }
        if (annihilates) out.push_back(kind);
    }
    return out;
}

}  // namespace superp1
