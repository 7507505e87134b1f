#include "superp1/autbundle.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "superp1/errors.hpp"

namespace superp1 {

BundleAutomorphism BundleAutomorphism::identity(const GradingVector& k) {
    BundleAutomorphism a;
    a.k = k;
    std::size_t m = k.size();
    a.entries.assign(m, std::vector<LaurentPoly>(m));
    for (std::size_t i = 0; i < m; ++i) a.entries[i][i] = LaurentPoly::one();
    return a;
}

BundleAutomorphism BundleAutomorphism::diagonal(const GradingVector& k,
                                                const std::vector<Rational>& d) {
    if (d.size() != k.size()) throw PreconditionError("diagonal length mismatch");
    BundleAutomorphism a = identity(k);
    for (std::size_t i = 0; i < d.size(); ++i)
        a.entries[i][i] = LaurentPoly::constant(d[i]);
    return a;
}

namespace {

LaurentPoly det_recursive(const std::vector<std::vector<LaurentPoly>>& e,
                          std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.size() == 1) return e[rows[0]][cols[0]];
    LaurentPoly acc;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const LaurentPoly& pivot = e[rows[0]][cols[j]];
        if (pivot.is_zero()) continue;
        std::vector<std::size_t> sub_cols;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        LaurentPoly minor = det_recursive(e, sub_rows, sub_cols);
        LaurentPoly term = pivot * minor;
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

LaurentPoly BundleAutomorphism::determinant() const {
    std::size_t n = k.size();
    if (n == 0) return LaurentPoly::one();
    return det_recursive(entries, iota_vec(n), iota_vec(n));
}

BundleAutomorphism BundleAutomorphism::inverse() const {
    std::size_t n = k.size();
    LaurentPoly det = determinant();
    if (det.is_zero()) throw PreconditionError("automorphism is singular");
    if (det.min_exponent() != 0 || det.max_exponent() != 0)
        throw PreconditionError("determinant is not constant; matrix is not invertible over "
                                "polynomial entries");
    Rational det_inv = det.coeff(0).inverse();
    BundleAutomorphism b;
    b.k = k;
    b.entries.assign(n, std::vector<LaurentPoly>(n));
    if (n == 1) {
        b.entries[0][0] = LaurentPoly::constant(det_inv);
        return b;
    }
    std::vector<std::size_t> all = iota_vec(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t t = 0; t < n; ++t) {
                if (t != j) rows.push_back(t);
                if (t != i) cols.push_back(t);
            }
            LaurentPoly minor = det_recursive(entries, rows, cols);
            if ((i + j) % 2 == 1) minor = -minor;
            b.entries[i][j] = minor.scaled(det_inv);
        }
    return b;
}

BundleAutomorphism BundleAutomorphism::operator*(const BundleAutomorphism& o) const {
    if (k != o.k) throw PreconditionError("automorphism product grading mismatch");
    std::size_t n = k.size();
    BundleAutomorphism c;
    c.k = k;
    c.entries.assign(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < n; ++s)
                c.entries[i][j] += entries[i][s] * o.entries[s][j];
    return c;
}

ValidationResult validate(const BundleAutomorphism& a) {
    ValidationResult res;
    std::size_t n = a.k.size();
    if (a.entries.size() != n) {
        res.ok = false;
        res.violations.push_back("entry grid does not match grading length");
        return res;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (a.entries[i].size() != n) {
            res.ok = false;
            res.violations.push_back("row " + std::to_string(i + 1) + " has wrong length");
            return res;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const LaurentPoly& p = a.entries[i][j];
            if (p.is_zero()) continue;
            int bound = a.k[j] - a.k[i];
            std::string name = "a[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
            if (p.min_exponent() < 0) {
                res.ok = false;
                res.violations.push_back(name + " has a negative exponent");
            }
            if (bound < 0) {
                res.ok = false;
                res.violations.push_back(name + " must vanish: k" + std::to_string(j + 1) +
                                         "-k" + std::to_string(i + 1) + " = " +
                                         std::to_string(bound) + " < 0");
            } else if (p.max_exponent() > bound) {
                res.ok = false;
                res.violations.push_back(name + " has degree " +
                                         std::to_string(p.max_exponent()) + " > " +
                                         std::to_string(bound));
            }
        }
    }
    LaurentPoly det = a.determinant();
    if (det.is_zero()) {
        res.ok = false;
        res.violations.push_back("determinant is zero");
    } else if (det.min_exponent() != 0 || det.max_exponent() != 0) {
        res.ok = false;
        res.violations.push_back("determinant is not constant");
    }
    return res;
}

namespace {

// the image of the odd frame under the matrix: column j as a superfunction
SuperFunction frame_image(const BundleAutomorphism& a, int j, int m) {
    SuperFunction out(Chart::U0, m);
    for (int i = 1; i <= m; ++i)
        out.add(OddMonomial({i}),
                a.entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    return out;
}

// substitution xi_j -> sum_i a_ij xi_i applied to a superfunction
SuperFunction substitute(const BundleAutomorphism& a, const SuperFunction& f) {
    int m = f.m();
    SuperFunction out(f.chart(), m);
    for (const auto& [odd, c] : f.terms()) {
        SuperFunction acc =
            SuperFunction::monomial(f.chart(), m, c, OddMonomial());
        for (int i : odd.indices()) acc = acc * frame_image(a, i, m);
        out += acc;
    }
    return out;
}

CohClass int_action_impl(const BundleAutomorphism& a, const CohClass& z) {
    if (!z.context) throw PreconditionError("class without context");
    if (z.context->k() != a.k)
        throw PreconditionError("class context and automorphism grading differ");
    int m = a.m();
    BundleAutomorphism b = a.inverse();
    const SuperField& v = z.representative;

    // w = A v A^-1 as a derivation, assembled from its values on coordinates
    SuperFunction on_even = substitute(a, v.apply(SuperFunction::coordinate(Chart::U0, m)));
    SuperField w(Chart::U0, m);
    for (const auto& [odd, c] : on_even.terms()) w.add(odd, 0, c);
    for (int l = 1; l <= m; ++l) {
        SuperFunction pulled = frame_image(b, l, m);  // A^-1(xi_l)
        SuperFunction on_l = substitute(a, v.apply(pulled));
        for (const auto& [odd, c] : on_l.terms()) w.add(odd, l, c);
    }
    return z.context->reduce(w);
}

}  // namespace

CohClass int_action(const BundleAutomorphism& a, const CohClass& z) {
    ValidationResult res = validate(a);
    if (!res.ok) {
        std::string msg = "invalid automorphism";
        for (const auto& s : res.violations) msg += "; " + s;
        throw PreconditionError(msg);
    }
    return int_action_impl(a, z);
}

CohClass int_action_unvalidated(const BundleAutomorphism& a, const CohClass& z) {
    return int_action_impl(a, z);
}

SuperField closed_form_action(const BundleAutomorphism& a, const SuperField& term) {
    if (a.m() != 3 || term.m() != 3)
        throw PreconditionError("closed form is stated for m = 3");
    if (term.chart() != Chart::U0) throw PreconditionError("term must live on chart U0");
    if (term.terms().size() != 1)
        throw PreconditionError("closed form applies to a single generator-shaped term");
    const auto& [key, coeff] = *term.terms().begin();
    BundleAutomorphism b = a.inverse();
    Rational det = a.determinant().coeff(0);
    SuperField out(Chart::U0, 3);
    const OddMonomial all3({1, 2, 3});

    if (key.target >= 1 && key.odd == all3) {
        // A(c xi1 xi2 xi3 d/dxi_k) A^-1 = det(A) sum_s b_ks c xi1 xi2 xi3 d/dxi_s
        int kk = key.target;
        for (int s = 1; s <= 3; ++s) {
            LaurentPoly c =
                coeff * b.entries[static_cast<std::size_t>(kk - 1)][static_cast<std::size_t>(s - 1)];
            out.add(all3, s, c.scaled(det));
        }
        return out;
    }

    if (key.target == 0 && key.odd.size() == 2) {
        auto ij = key.odd.indices();
        int i = ij[0], j = ij[1];
        int l = 6 - i - j;
        // even part: det(A) (-1)^{l+r} b_lr c xi_p xi_q d/dx over pairs p<q,
        // r the complement of {p,q}
        for (int p = 1; p <= 3; ++p)
            for (int q = p + 1; q <= 3; ++q) {
                int r = 6 - p - q;
                LaurentPoly c =
                    coeff *
                    b.entries[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(r - 1)];
                if ((l + r) % 2 == 1) c = -c;
                out.add(OddMonomial({p, q}), 0, c.scaled(det));
            }
        // odd part: det(A) b'_ls c xi_i xi_j xi_l d/dxi_s
        int sign = OddMonomial::mul_sign(key.odd, OddMonomial({l}));
        for (int s = 1; s <= 3; ++s) {
            LaurentPoly bp =
                b.entries[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(s - 1)]
                    .derivative();
            LaurentPoly c = coeff * bp;
            if (sign < 0) c = -c;
            out.add(all3, s, c.scaled(det));
        }
        return out;
    }

    throw PreconditionError("unsupported term shape for the closed form");
}

std::optional<Rational> scalar_equivalent(const CohClass& z1, const CohClass& z2) {
    if (!z1.context || !z2.context) throw PreconditionError("class without context");
    if (z1.context->k() != z2.context->k() || z1.context->q() != z2.context->q())
        throw PreconditionError("classes from different contexts");
    if (z1.is_zero() && z2.is_zero()) return Rational(1);
    if (z1.is_zero() || z2.is_zero()) return std::nullopt;
    std::size_t i = 0;
    while (i < z1.coords.size() && z1.coords[i].is_zero()) ++i;
    if (i == z1.coords.size()) return std::nullopt;
    Rational c = z2.coords[i] / z1.coords[i];
    for (std::size_t t = 0; t < z1.coords.size(); ++t)
        if (z2.coords[t] != z1.coords[t] * c) return std::nullopt;
    return c;
}

bool orbit_witness_check(const BundleAutomorphism& a, const CohClass& z1, const CohClass& z2,
                         bool up_to_scalar, bool unvalidated) {
    CohClass img = unvalidated ? int_action_unvalidated(a, z1) : int_action(a, z1);
    if (up_to_scalar) return scalar_equivalent(img, z2).has_value();
    return img == z2;
}

BundleAutomorphism parse_automorphism(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad automorphism JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("k") || !doc.contains("entries"))
        throw ParseError("automorphism JSON needs \"k\" and \"entries\"", 0);
    BundleAutomorphism a;
    try {
        a.k = doc.at("k").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("\"k\" must be an array of integers", 0);
    }
    const auto& rows = doc.at("entries");
    if (!rows.is_array() || rows.size() != a.k.size())
        throw ParseError("\"entries\" must be an m x m array of Laurent strings", 0);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != a.k.size())
            throw ParseError("\"entries\" must be an m x m array of Laurent strings", 0);
        std::vector<LaurentPoly> out_row;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw ParseError("matrix entries must be Laurent strings like \"-2*x^1\"", 0);
            out_row.push_back(LaurentPoly::parse(cell.get<std::string>()));
        }
        a.entries.push_back(std::move(out_row));
    }
    return a;
}

BundleAutomorphism load_automorphism(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open automorphism file '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_automorphism(ss.str());
}

}  // namespace superp1
