#include "superp1/cohomology.hpp"

#include <algorithm>

#include "superp1/errors.hpp"

namespace superp1 {

CohClass CohClass::scaled(const Rational& c) const {
    CohClass out;
    out.context = context;
    out.coords.reserve(coords.size());
    for (const auto& a : coords) out.coords.push_back(a * c);
    out.representative = representative.scaled(c);
    return out;
}

bool operator==(const CohClass& a, const CohClass& b) {
    if (!a.context || !b.context) throw PreconditionError("class without context");
    if (a.context->k() != b.context->k() || a.context->q() != b.context->q())
        throw PreconditionError("classes from different contexts");
    return a.coords == b.coords;
}

// ---------------------------------------------------------------------------
// sparse row echelon machinery (RREF-maintained, pivot = smallest column)

struct H1Context::SparseRow {
    std::map<int, Rational> v;
};

struct H1Context::Echelon {
    std::map<int, std::map<int, Rational>> rows;  // pivot col -> reduced row

    static void axpy(std::map<int, Rational>& v, const Rational& c,
                     const std::map<int, Rational>& row) {
        for (const auto& [col, val] : row) {
            auto it = v.find(col);
            if (it == v.end()) {
                Rational r = c * val;
                if (!r.is_zero()) v.emplace(col, std::move(r));
            } else {
                it->second += c * val;
                if (it->second.is_zero()) v.erase(it);
            }
        }
    }

    std::map<int, Rational> reduce(std::map<int, Rational> v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto p = rows.find(it->first);
            if (p == rows.end()) {
                ++it;
                continue;
            }
            Rational c = -it->second;
            axpy(v, c, p->second);
            it = v.upper_bound(p->first);
        }
        return v;
    }

    bool insert(std::map<int, Rational> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int pivot = v.begin()->first;
        Rational inv = v.begin()->second.inverse();
        if (!inv.is_one())
            for (auto& [col, val] : v) val *= inv;
        for (auto& [p, row] : rows) {
            auto it = row.find(pivot);
            if (it == row.end()) continue;
            Rational c = -it->second;
            axpy(row, c, v);
        }
        rows.emplace(pivot, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows.size(); }
};

struct H1Context::Block {
    std::vector<int> cols;            // global monomial ids, ascending
    Echelon coboundaries;             // span of the coboundary generators
    std::vector<int> basis_cols;      // chosen basis monomials (global ids)
    std::vector<int> basis_global;    // positions in the context-wide basis
    std::vector<int> nonpivot_cols;   // quotient coordinates, ascending
    RationalMatrix h_inv;             // basis coords from quotient coordinates
};

// ---------------------------------------------------------------------------

H1ContextPtr H1Context::build(const GradingVector& k, int q) {
    int s = 0;
    for (int ki : k) s += ki >= 0 ? ki : -ki;
    return build_windowed(k, q, -(s + 4), s + 4);
}

H1ContextPtr H1Context::build_windowed(const GradingVector& k, int q, int lo, int hi) {
    auto ctx = std::shared_ptr<H1Context>(new H1Context());
    ctx->construct(k, q, lo, hi);
    return ctx;
}

namespace {

struct TypeKey {
    OddMonomial odd;
    int target;
};

// all (odd monomial, target) combinations of grading degree q
std::vector<TypeKey> types_of_degree(int m, int q) {
    std::vector<TypeKey> types;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        OddMonomial odd(mask);
        if (odd.size() == q) types.push_back({odd, 0});
        if (odd.size() == q + 1)
            for (int l = 1; l <= m; ++l) types.push_back({odd, l});
    }
    std::sort(types.begin(), types.end(), [](const TypeKey& a, const TypeKey& b) {
        if (a.odd != b.odd) return OddMonomial::lex_less(a.odd, b.odd);
        return a.target < b.target;
    });
    return types;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void H1Context::construct(const GradingVector& k, int q, int lo, int hi) {
    if (k.size() > 28) throw PreconditionError("odd dimension too large");
    k_ = k;
    q_ = q;
    m_ = static_cast<int>(k.size());
    lo_ = lo;
    hi_ = hi;

    std::vector<TypeKey> types = types_of_degree(m_, q);
    int width = hi - lo + 1;

    // global monomial ids, type-major
    std::map<std::pair<unsigned, int>, int> type_index;
    for (std::size_t t = 0; t < types.size(); ++t) {
        type_index[{types[t].odd.mask(), types[t].target}] = static_cast<int>(t);
        auto& by_exp = monomial_index_[{types[t].odd.mask(), types[t].target}];
        for (int e = lo; e <= hi; ++e) {
            by_exp[e] = static_cast<int>(monomials_.size());
            monomials_.push_back({e, types[t].odd, types[t].target});
        }
    }

    // chart transport couples a type only with the types appearing in the
    // transport of its monomials; group types into connected components
    DisjointSet dsu(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) {
        if (types[t].target != 0) continue;
        for (int l = 1; l <= m_; ++l) {
            if (types[t].odd.contains(l)) continue;
            auto it = type_index.find({types[t].odd.with(l).mask(), l});
            if (it != type_index.end()) dsu.unite(static_cast<int>(t), it->second);
        }
    }
    std::map<int, std::shared_ptr<Block>> block_of_root;
    std::vector<std::shared_ptr<Block>> block_of_type(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) {
        int root = dsu.find(static_cast<int>(t));
        auto it = block_of_root.find(root);
        if (it == block_of_root.end()) {
            auto blk = std::make_shared<Block>();
            it = block_of_root.emplace(root, blk).first;
            blocks_.push_back(blk);
        }
        block_of_type[t] = it->second;
        int base = static_cast<int>(t) * width;
        for (int e = 0; e < width; ++e) it->second->cols.push_back(base + e);
    }
    for (auto& blk : blocks_) std::sort(blk->cols.begin(), blk->cols.end());
    // canonical block order: by the smallest even-target type when present
    // (pair order for q = 2), otherwise by the smallest type
    auto block_key = [&](const std::shared_ptr<Block>& blk) {
        int best_even = static_cast<int>(types.size());
        int best_any = static_cast<int>(types.size());
        for (int col : blk->cols) {
            int t = col / width;
            best_any = std::min(best_any, t);
            if (types[static_cast<std::size_t>(t)].target == 0) best_even = std::min(best_even, t);
        }
        return best_even < static_cast<int>(types.size()) ? std::pair(0, best_even)
                                                          : std::pair(1, best_any);
    };
    std::sort(blocks_.begin(), blocks_.end(),
              [&](const std::shared_ptr<Block>& a, const std::shared_ptr<Block>& b) {
                  return block_key(a) < block_key(b);
              });

    // coboundary generators: U0-holomorphic monomials ...
    for (std::size_t t = 0; t < types.size(); ++t) {
        Block& blk = *block_of_type[t];
        for (int e = 0; e <= hi; ++e) {
            std::map<int, Rational> row;
            row[static_cast<int>(t) * width + (e - lo)] = Rational(1);
            blk.coboundaries.insert(std::move(row));
        }
    }

    // ... plus transports of U1-holomorphic monomials.  Transports that lie
    // fully inside the window enter as they are.  A transport straddling the
    // lower edge enters projected to the window when every dropped component
    // sits at or below the kill threshold of its own type (the exponent from
    // which that type's single-component transports reach arbitrarily deep),
    // since an exact below-window generator then cancels the dropped part.
    struct TemplateComp {
        int type;
        int exp;
        Rational c;
    };
    std::vector<std::vector<TemplateComp>> templates(types.size());
    std::vector<int> kill_threshold(types.size(), hi + 1);  // above hi: none
    for (std::size_t t = 0; t < types.size(); ++t) {
        SuperField gen = SuperField::term(Chart::U1, m_, LaurentPoly::one(), types[t].odd,
                                          types[t].target);
        SuperField transported = change_chart(gen, k_);
        for (const auto& [key, poly] : transported.terms()) {
            int tt = type_index.at({key.odd.mask(), key.target});
            for (const auto& [e, c] : poly.terms())
                templates[t].push_back({tt, e, c});
        }
        if (types[t].target != 0 && templates[t].size() == 1)
            kill_threshold[t] = templates[t][0].exp;
    }
    for (std::size_t t = 0; t < types.size(); ++t) {
        Block& blk = *block_of_type[t];
        for (int s = 0;; ++s) {
            std::map<int, Rational> row;
            bool any_in = false, certified = true;
            for (const TemplateComp& comp : templates[t]) {
                int e = comp.exp - s;
                if (e >= lo) {
                    any_in = true;
                    row[comp.type * width + (e - lo)] = comp.c;
                } else if (e > kill_threshold[static_cast<std::size_t>(comp.type)]) {
                    certified = false;
                }
            }
            if (!any_in) break;
            if (certified) blk.coboundaries.insert(std::move(row));
        }
    }

    // basis: preferred representatives first, echelon survivors as fallback
    for (auto& blk : blocks_) {
        std::size_t expected = blk->cols.size() - blk->coboundaries.rank();
        std::vector<int> candidates;
        if (m_ == 3 && q == 2) {
            // published representatives x^-n xi_i xi_j d/dx (n = 1..K-3) and
            // x^-n xi_i xi_j xi_l d/dxi_l (n = 1..K-1), kept when they survive
            for (std::size_t t = 0; t < types.size(); ++t) {
                if (block_of_type[t] != blk || types[t].target != 0) continue;
                auto pair_idx = types[t].odd.indices();
                int K = k_[static_cast<std::size_t>(pair_idx[0] - 1)] +
                        k_[static_cast<std::size_t>(pair_idx[1] - 1)];
                for (int n = 1; n <= K - 3; ++n)
                    candidates.push_back(static_cast<int>(t) * width + (-n - lo));
                int l = 0;
                for (int i = 1; i <= 3; ++i)
                    if (!types[t].odd.contains(i)) l = i;
                int tt = type_index.at({types[t].odd.with(l).mask(), l});
                for (int n = 1; n <= K - 1; ++n)
                    candidates.push_back(tt * width + (-n - lo));
            }
        }
        // fallback order: negative exponents outward from -1, then the rest
        std::vector<int> fallback = blk->cols;
        std::stable_sort(fallback.begin(), fallback.end(), [&](int a, int b) {
            int ta = a / width, tb = b / width;
            if (ta != tb) return ta < tb;
            int ea = monomials_[static_cast<std::size_t>(a)].exponent;
            int eb = monomials_[static_cast<std::size_t>(b)].exponent;
            bool na = ea < 0, nb = eb < 0;
            if (na != nb) return na;
            return na ? ea > eb : ea < eb;
        });
        candidates.insert(candidates.end(), fallback.begin(), fallback.end());

        Echelon span = blk->coboundaries;  // copy; grows with chosen candidates
        for (int cand : candidates) {
            if (blk->basis_cols.size() == expected) break;
            std::map<int, Rational> unit;
            unit[cand] = Rational(1);
            if (span.insert(std::move(unit)))
                if (std::find(blk->basis_cols.begin(), blk->basis_cols.end(), cand) ==
                    blk->basis_cols.end())
                    blk->basis_cols.push_back(cand);
        }
        if (blk->basis_cols.size() != expected)
            throw PreconditionError("internal: quotient basis selection failed");

        for (int col : blk->cols)
            if (!blk->coboundaries.rows.count(col)) blk->nonpivot_cols.push_back(col);
        if (blk->nonpivot_cols.size() != expected)
            throw PreconditionError("internal: quotient dimension mismatch");

        // matrix taking quotient coordinates to basis coordinates
        std::size_t n = expected;
        if (n > 0) {
            RationalMatrix h(n, n);
            for (std::size_t t = 0; t < n; ++t) {
                std::map<int, Rational> unit;
                unit[blk->basis_cols[t]] = Rational(1);
                auto resid = blk->coboundaries.reduce(std::move(unit));
                for (std::size_t r = 0; r < n; ++r) {
                    auto it = resid.find(blk->nonpivot_cols[r]);
                    if (it != resid.end()) h.at(r, t) = it->second;
                }
            }
            blk->h_inv = inverse(h);
        }
    }

    // context-wide basis in block order
    for (auto& blk : blocks_) {
        for (int col : blk->basis_cols) {
            const CocycleMonomial& mono = monomials_[static_cast<std::size_t>(col)];
            blk->basis_global.push_back(static_cast<int>(basis_.size()));
            basis_.push_back(SuperField::term(Chart::U0, m_,
                                              LaurentPoly::term(Rational(1), mono.exponent),
                                              mono.odd, mono.target));
        }
    }
}

std::map<int, Rational> H1Context::coordinates_of(const SuperField& v,
                                                  bool* out_of_window) const {
    *out_of_window = false;
    std::map<int, Rational> coords;
    for (const auto& [key, poly] : v.terms()) {
        auto it = monomial_index_.find({key.odd.mask(), key.target});
        if (it == monomial_index_.end())
            throw PreconditionError("field term outside the degree-" + std::to_string(q_) +
                                    " sheaf");
        for (const auto& [e, c] : poly.terms()) {
            if (e < lo_ || e > hi_) {
                *out_of_window = true;
                return {};
            }
            coords[it->second.at(e)] = c;
        }
    }
    return coords;
}

std::vector<Rational> H1Context::reduce_coordinates(
    const std::map<int, Rational>& coords) const {
    std::vector<Rational> out(basis_.size());
    for (const auto& blk : blocks_) {
        if (blk->basis_cols.empty()) continue;
        std::map<int, Rational> part;
        for (int col : blk->cols) {
            auto it = coords.find(col);
            if (it != coords.end()) part.emplace(col, it->second);
        }
        if (part.empty()) continue;
        auto resid = blk->coboundaries.reduce(std::move(part));
        std::size_t n = blk->basis_cols.size();
        std::vector<Rational> dense(n);
        for (std::size_t r = 0; r < n; ++r) {
            auto it = resid.find(blk->nonpivot_cols[r]);
            if (it != resid.end()) dense[r] = it->second;
        }
        std::vector<Rational> local = blk->h_inv.apply(dense);
        for (std::size_t t = 0; t < n; ++t)
            out[static_cast<std::size_t>(blk->basis_global[t])] = local[t];
    }
    return out;
}

CohClass H1Context::reduce(const SuperField& v) const {
    if (v.chart() != Chart::U0)
        throw PreconditionError("reduce expects a field on chart U0");
    if (v.m() != m_) throw PreconditionError("reduce: odd dimension mismatch");
    if (!v.is_zero() && !v.is_homogeneous(q_))
        throw PreconditionError("field is not homogeneous of degree " + std::to_string(q_));

    bool out_of_window = false;
    auto coords = coordinates_of(v, &out_of_window);
    if (!out_of_window) {
        CohClass cls;
        cls.context = shared_from_this();
        cls.coords = reduce_coordinates(coords);
        cls.representative = v;
        return cls;
    }

    // widen transparently and express the result in this context's basis
    int need_lo = lo_, need_hi = hi_;
    for (const auto& [key, poly] : v.terms()) {
        if (poly.is_zero()) continue;
        need_lo = std::min(need_lo, poly.min_exponent() - 2);
        need_hi = std::max(need_hi, poly.max_exponent() + 2);
    }
    H1ContextPtr wide = build_windowed(k_, q_, need_lo, need_hi);
    CohClass in_wide = wide->reduce(v);
    if (wide->dim() != dim())
        throw PreconditionError("internal: H^1 dimension changed under window widening");
    // change of basis (identity whenever the preferred representatives agree)
    bool same = true;
    for (std::size_t i = 0; i < dim(); ++i)
        if (wide->basis()[i] != basis_[i]) same = false;
    CohClass cls;
    cls.context = shared_from_this();
    cls.representative = v;
    if (same) {
        cls.coords = in_wide.coords;
        return cls;
    }
    RationalMatrix p(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        CohClass bj = wide->reduce(basis_[j]);
        for (std::size_t i = 0; i < dim(); ++i) p.at(i, j) = bj.coords[i];
    }
    auto sol = solve(p, in_wide.coords);
    if (!sol) throw PreconditionError("internal: basis change failed under widening");
    cls.coords = *sol;
    return cls;
}

bool H1Context::is_coboundary(const SuperField& v) const { return reduce(v).is_zero(); }

CohClass H1Context::class_from_coords(std::vector<Rational> coords) const {
    if (coords.size() != basis_.size())
        throw PreconditionError("coordinate length does not match basis");
    CohClass cls;
    cls.context = shared_from_this();
    cls.representative = SuperField(Chart::U0, m_);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) cls.representative += basis_[i].scaled(coords[i]);
    cls.coords = std::move(coords);
    return cls;
}

CohClass H1Context::zero_class() const {
    return class_from_coords(std::vector<Rational>(basis_.size()));
}

RationalMatrix H1Context::reducer_matrix() const {
    RationalMatrix r(basis_.size(), monomials_.size());
    for (std::size_t j = 0; j < monomials_.size(); ++j) {
        std::map<int, Rational> unit;
        unit[static_cast<int>(j)] = Rational(1);
        auto coords = reduce_coordinates(unit);
        for (std::size_t i = 0; i < basis_.size(); ++i) r.at(i, j) = coords[i];
    }
    return r;
}

}  // namespace superp1
