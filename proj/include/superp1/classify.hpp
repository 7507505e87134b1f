#pragma once

#include <string>
#include <vector>

#include "superp1/autbundle.hpp"
#include "superp1/cohomology.hpp"
#include "superp1/sl2.hpp"

namespace superp1 {

enum class WitnessStatus { Verified, Failed, Flagged };

struct WitnessResult {
    std::string name;
    WitnessStatus status;
    std::string note;
};

struct ClassifiedClass {
    std::string label;            // "a", "b"
    std::string cocycle_text;     // canonical rendering in arrangement coordinates
    CohClass cls;
    std::vector<Sl2Kind> kinds;   // algebras whose invariant space contains it
    bool membership_verified = false;
};

// One row of the classification of even-homogeneous non-split supermanifolds
// with the given retract, together with its machine verification.
struct ClassificationRecord {
    GradingVector retract;        // sorted descending
    GradingVector arrangement;    // coordinate order used for cocycles and contexts
    std::string case_label;       // "1a".."1d", "2a".."2d", "2d'"; "none" for count 0
    std::vector<Sl2Kind> algebra_kinds;
    std::vector<ClassifiedClass> classes;
    std::size_t count = 0;
    bool dimensions_verified = false;
    bool separation_verified = false;  // count-2 rows: diagonal vanishing patterns
    std::vector<WitnessResult> witnesses;
};

// Builds and verifies the record for the sorted retract of k; m must be 1, 2
// or 3.
ClassificationRecord classify_retract(const GradingVector& k);

// Records with count > 0 for all canonical (sorted descending) gradings with
// entries in [-bound, bound], m = 3; deterministic order.
std::vector<ClassificationRecord> enumerate_range(int bound);

// Stable text form, one record per call (golden-file tested).
std::string record_to_text(const ClassificationRecord& rec);
std::string records_to_text(const std::vector<ClassificationRecord>& recs);

// Transition functions of the supermanifold attached to a degree-2 cocycle:
// y' = (id+v)(x'^-1), eta'_i = (id+v)(x'^-k_i xi'_i), in primed U0
// coordinates.
struct TransitionFunctions {
    GradingVector k;
    SuperFunction y_prime;
    std::vector<SuperFunction> eta_primes;
};

TransitionFunctions emit_transition(const GradingVector& k, const SuperField& v);

// Composes the emitted transition with the split inverse transition and
// returns the degree-2 field it defines; its class reproduces [v].
SuperField transition_cocycle(const TransitionFunctions& t);

}  // namespace superp1
