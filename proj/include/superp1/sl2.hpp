#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superp1/cohomology.hpp"
#include "superp1/superfield.hpp"

namespace superp1 {

// The three standard sl2 subalgebras of global degree-0 vector fields.
// S exists for every grading, S' needs k1 = k2, S'' needs k1 = k2 = k3.
enum class Sl2Kind { S, SPrime, SDoublePrime };

std::string kind_name(Sl2Kind kind);                 // "s", "s-prime", "s-double-prime"
std::optional<Sl2Kind> kind_from_name(const std::string& name);

struct Sl2Triple {
    Sl2Kind kind;
    GradingVector k;
    SuperField e, f, h;  // expressed on chart U0; [e,f] = h, [h,e] = 2e, [h,f] = -2f
};

bool is_constructible(Sl2Kind kind, const GradingVector& k);

// e and f as published, with the U1 pieces transported to U0; h = [e,f].
// Throws PreconditionError naming the violated equality when the grading
// coincidences fail.
Sl2Triple make_algebra(Sl2Kind kind, const GradingVector& k);

// Matrix of w -> [generator, w] on the context basis (columns are images of
// basis classes).  generator is 'e', 'f' or 'h'.
RationalMatrix ad_matrix(const Sl2Triple& a, char generator, const H1ContextPtr& ctx);

// Basis of the intersection of the kernels of ad e, ad f, ad h inside
// H^1(T_q) for q = 2.  When the retract matches a published case the
// published cocycles are returned as representatives.
std::vector<CohClass> invariant_subspace(Sl2Kind kind, const H1ContextPtr& ctx);
std::vector<CohClass> invariant_subspace(Sl2Kind kind, const GradingVector& k);

// Published invariant-space dimension for the grading (0 when the retract
// matches no case); the computed dimension must agree.
std::size_t expected_invariant_dimension(Sl2Kind kind, const GradingVector& k);

// The published cocycles for (kind, k) when the retract matches a listed
// case, empty otherwise.
std::vector<SuperField> published_invariants(Sl2Kind kind, const GradingVector& k);

// Subset of the kinds that are constructible for k and whose full triple
// annihilates [z]; a nonempty result certifies even-homogeneity.
std::vector<Sl2Kind> homogeneity_certificate(const GradingVector& k, const CohClass& z);

}  // namespace superp1
