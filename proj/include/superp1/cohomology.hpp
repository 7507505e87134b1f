#pragma once

#include <map>
#include <memory>
#include <vector>

#include "superp1/linalg.hpp"
#include "superp1/superfield.hpp"

namespace superp1 {

class H1Context;
using H1ContextPtr = std::shared_ptr<const H1Context>;

// A cohomology class: coordinates in the context's basis plus the reduced
// field that produced them.
struct CohClass {
    H1ContextPtr context;
    std::vector<Rational> coords;
    SuperField representative;

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    CohClass scaled(const Rational& c) const;

    friend bool operator==(const CohClass& a, const CohClass& b);
    friend bool operator!=(const CohClass& a, const CohClass& b) { return !(a == b); }
};

// One x^e xi_I d/d* monomial section over the overlap.
struct CocycleMonomial {
    int exponent;
    OddMonomial odd;
    int target;
};

// H^1 of the degree-q part of the tangent sheaf for the cover {U0, U1},
// computed over a finite exponent window wide enough to contain every basis
// representative and every coboundary interaction among windowed monomials.
//
// Coboundary span: U0-holomorphic monomials restricted to the window plus the
// chart transports of U1-holomorphic monomials that land inside it (a
// transport straddling the window edge cannot occur in any coboundary that
// equals a windowed cocycle, because each (monomial type, exponent)
// coordinate is hit by exactly one generator).
class H1Context : public std::enable_shared_from_this<H1Context> {
public:
    static H1ContextPtr build(const GradingVector& k, int q);
    static H1ContextPtr build_windowed(const GradingVector& k, int q, int lo, int hi);

    const GradingVector& k() const { return k_; }
    int q() const { return q_; }
    int m() const { return m_; }
    int window_lo() const { return lo_; }
    int window_hi() const { return hi_; }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<SuperField>& basis() const { return basis_; }
    const std::vector<CocycleMonomial>& monomials() const { return monomials_; }

    // Coordinates of [v] in the basis; v must be a degree-q field on U0 over
    // the overlap.  When v's exponents exceed the window the computation is
    // redone on a transparently widened context.
    CohClass reduce(const SuperField& v) const;

    bool is_coboundary(const SuperField& v) const;

    // Class with the given coordinates; representative is the matching linear
    // combination of basis representatives.
    CohClass class_from_coords(std::vector<Rational> coords) const;
    CohClass zero_class() const;

    // The linear map from windowed-cocycle coordinates (per `monomials()`) to
    // basis coordinates, materialized as a dense matrix.
    RationalMatrix reducer_matrix() const;

private:
    H1Context() = default;

    struct SparseRow;
    struct Echelon;
    struct Block;

    void construct(const GradingVector& k, int q, int lo, int hi);
    std::map<int, Rational> coordinates_of(const SuperField& v, bool* out_of_window) const;
    std::vector<Rational> reduce_coordinates(const std::map<int, Rational>& coords) const;

    GradingVector k_;
    int q_ = 0;
    int m_ = 0;
    int lo_ = 0, hi_ = 0;

    std::vector<CocycleMonomial> monomials_;
    std::map<std::pair<unsigned, int>, std::map<int, int>> monomial_index_;  // (mask,target) -> exp -> id
    std::vector<std::shared_ptr<Block>> blocks_;
    std::vector<SuperField> basis_;
};

}  // namespace superp1
