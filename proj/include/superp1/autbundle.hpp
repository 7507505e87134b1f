#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superp1/cohomology.hpp"
#include "superp1/superfield.hpp"

namespace superp1 {

// Automorphism of the split vector bundle, acting on the odd frame by
// A(xi_j) = sum_i a_ij(x) xi_i.  Admissible entries are polynomials of degree
// at most k_j - k_i (zero when that is negative), which forces a constant
// determinant.
struct BundleAutomorphism {
    GradingVector k;
    std::vector<std::vector<LaurentPoly>> entries;  // entries[i][j] = a_ij

    int m() const { return static_cast<int>(k.size()); }

    static BundleAutomorphism identity(const GradingVector& k);
    static BundleAutomorphism diagonal(const GradingVector& k, const std::vector<Rational>& d);

    LaurentPoly determinant() const;
    BundleAutomorphism inverse() const;  // adjugate over the constant determinant
    BundleAutomorphism operator*(const BundleAutomorphism& o) const;
};

struct ValidationResult {
    bool ok = true;
    std::vector<std::string> violations;
};

// Degree constraints plus nonzero constant determinant; diagnostics name each
// violating entry.
ValidationResult validate(const BundleAutomorphism& a);

// Class of A v A^-1, computed by the generic substitution path: pull the odd
// frame back through A^-1, push the result forward through A, reduce.
CohClass int_action(const BundleAutomorphism& a, const CohClass& z);

// Same computation with the degree check skipped (the matrix must still be
// invertible with constant determinant).
CohClass int_action_unvalidated(const BundleAutomorphism& a, const CohClass& z);

// Closed-form conjugation of a single generator-shaped term (m = 3 only):
//
//   A(c xi_1 xi_2 xi_3 d/dxi_k) A^-1 = det(A) sum_s b_ks c xi_1 xi_2 xi_3 d/dxi_s
//   A(c xi_i xi_j d/dx) A^-1      = det(A) sum_{p<q} (-1)^{l+r} b_lr c xi_p xi_q d/dx
//                                   + det(A) sum_s b'_ls c xi_i xi_j xi_l d/dxi_s
//
// with B = A^-1, l the complement of {i,j}, and r the complement of {p,q};
// the sign comes from the cofactor identity
// det(A[{p,q},{i,j}]) = (-1)^{l+r} det(A) b_lr.
SuperField closed_form_action(const BundleAutomorphism& a, const SuperField& term);

// The scalar c with z2 = c z1 when one exists (c = 1 when both are zero).
std::optional<Rational> scalar_equivalent(const CohClass& z1, const CohClass& z2);

// true iff Int(A) z1 equals z2, exactly or up to a nonzero scalar.
bool orbit_witness_check(const BundleAutomorphism& a, const CohClass& z1, const CohClass& z2,
                         bool up_to_scalar, bool unvalidated = false);

// JSON file format: {"k": [k1,...,km], "entries": [["laurent", ...], ...]}.
BundleAutomorphism parse_automorphism(const std::string& json_text);
BundleAutomorphism load_automorphism(const std::string& path);

}  // namespace superp1
