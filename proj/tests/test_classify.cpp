#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "superp1/classify.hpp"
#include "superp1/errors.hpp"
#include "superp1/field_text.hpp"

using namespace superp1;

namespace {

SuperField parse0(const std::string& s, int m) { return parse_field(s, Chart::U0, m); }

const WitnessResult* find_witness(const ClassificationRecord& rec, const std::string& name) {
    for (const auto& w : rec.witnesses)
        if (w.name == name) return &w;
    return nullptr;
}

}  // namespace

TEST_CASE("classification at (2,2,1)") {
    ClassificationRecord rec = classify_retract({1, 2, 2});  // sorted internally
    CHECK(rec.retract == GradingVector{2, 2, 1});
    CHECK(rec.arrangement == GradingVector{2, 2, 1});
    CHECK(rec.case_label == "1a");
    REQUIRE(rec.count == 2);
    CHECK(rec.classes[0].cocycle_text == "x^-1 xi1*xi2 d/dx + 1/2*x^-2 xi1*xi2*xi3 d/dxi3");
    CHECK(rec.classes[1].cocycle_text == "-x^-1 xi1*xi2*xi3 d/dxi1 + x^-2 xi1*xi2*xi3 d/dxi2");
    for (const auto& cc : rec.classes) CHECK(cc.membership_verified);
    CHECK(rec.dimensions_verified);
    CHECK(rec.separation_verified);

    const WitnessResult* rejected = find_witness(rec, "degree-bound-rejects-printed-matrix");
    REQUIRE(rejected);
    CHECK(rejected->status == WitnessStatus::Verified);
    const WitnessResult* flagged = find_witness(rec, "unvalidated-transvection-identity");
    REQUIRE(flagged);
    CHECK(flagged->status == WitnessStatus::Flagged);
    CHECK(flagged->note.find("!= v1") != std::string::npos);
}

TEST_CASE("classification at (-2,0,4)") {
    ClassificationRecord rec = classify_retract({-2, 0, 4});
    CHECK(rec.retract == GradingVector{4, 0, -2});
    CHECK(rec.arrangement == GradingVector{-2, 0, 4});
    CHECK(rec.case_label == "1d");
    REQUIRE(rec.count == 2);
    CHECK(rec.classes[0].cocycle_text == "x^-1 xi1*xi2*xi3 d/dxi2");
    CHECK(rec.classes[1].cocycle_text == "-x^-2 xi1*xi2*xi3 d/dxi1 + x^-1 xi2*xi3 d/dx");
    CHECK(rec.dimensions_verified);
    CHECK(rec.separation_verified);

    // The displayed transvection witness does not hold: the computed image
    // of [v1] is [v1] itself, so the witness is recorded as failed.
    const WitnessResult* w = find_witness(rec, "transvection-moves-v1-to-v1-plus-v2");
    REQUIRE(w);
    CHECK(w->status == WitnessStatus::Failed);
    CHECK(w->note.find("class equals [v1]: yes") != std::string::npos);
    const WitnessResult* d = find_witness(rec, "diagonal-action-diag-b11-b22");
    REQUIRE(d);
    CHECK(d->status == WitnessStatus::Verified);
}

TEST_CASE("classification at (2,2,2) and (2,2,3)") {
    ClassificationRecord rec = classify_retract({2, 2, 2});
    CHECK(rec.case_label == "1c");
    REQUIRE(rec.count == 2);
    // first cocycle follows the k3/2 normal form (coefficient 1 at k3 = 2)
    CHECK(rec.classes[0].cocycle_text == "x^-1 xi1*xi2 d/dx + x^-2 xi1*xi2*xi3 d/dxi3");
    CHECK(rec.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::S, Sl2Kind::SPrime});
    CHECK(rec.classes[1].kinds == std::vector<Sl2Kind>{Sl2Kind::SDoublePrime});
    for (const auto& cc : rec.classes) CHECK(cc.membership_verified);
    const WitnessResult* w = find_witness(rec, "gl3-action-matrix-identity");
    REQUIRE(w);
    CHECK(w->status == WitnessStatus::Verified);

    ClassificationRecord rec223 = classify_retract({2, 2, 3});
    CHECK(rec223.retract == GradingVector{3, 2, 2});
    CHECK(rec223.arrangement == GradingVector{2, 2, 3});
    CHECK(rec223.count == 2);
    CHECK(rec223.dimensions_verified);
    CHECK(rec223.separation_verified);
}

TEST_CASE("retracts outside every case have count zero") {
    for (GradingVector k : {GradingVector{1, 1, 1}, GradingVector{0, 0, 0},
                            GradingVector{5, 5, 1}, GradingVector{-1, -1, -1}}) {
        ClassificationRecord rec = classify_retract(k);
        CHECK(rec.count == 0);
        CHECK(rec.case_label == "none");
        CHECK(rec.dimensions_verified);
    }
}

TEST_CASE("one-class families") {
    ClassificationRecord r2a = classify_retract({4, 0, 1});
    CHECK(r2a.case_label == "2a");
    CHECK(r2a.count == 1);
    CHECK(r2a.classes[0].cocycle_text ==
          "x^-1 xi1*xi2 d/dx + 1/2*x^-2 xi1*xi2*xi3 d/dxi3");  // k3 = 1

    ClassificationRecord r2b = classify_retract({2, 0, 0});
    CHECK(r2b.case_label == "2b");
    CHECK(r2b.count == 1);
    CHECK(r2b.classes[0].cocycle_text == "x^-1 xi1*xi2*xi3 d/dxi3");
    CHECK(r2b.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::S});

    ClassificationRecord r110 = classify_retract({1, 1, 0});
    CHECK(r110.case_label == "2b");
    CHECK(r110.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::S, Sl2Kind::SPrime});

    ClassificationRecord r2c = classify_retract({4, 4, -1});
    CHECK(r2c.case_label == "2c");
    CHECK(r2c.arrangement == GradingVector{4, 4, -1});
    CHECK(r2c.count == 1);

    ClassificationRecord r2d = classify_retract({1, 1, 4});
    CHECK(r2d.case_label == "2d");
    CHECK(r2d.arrangement == GradingVector{1, 1, 4});
    CHECK(r2d.count == 1);

    ClassificationRecord r333 = classify_retract({3, 3, 3});
    CHECK(r333.case_label == "2d'");
    CHECK(r333.count == 1);
    CHECK(r333.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::SDoublePrime});
}

TEST_CASE("m = 2 and m = 1 classification") {
    ClassificationRecord r22 = classify_retract({2, 2});
    CHECK(r22.count == 1);
    CHECK(r22.classes[0].cocycle_text == "x^-1 xi1*xi2 d/dx");
    CHECK(r22.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::S, Sl2Kind::SPrime});
    CHECK(r22.dimensions_verified);

    ClassificationRecord r31 = classify_retract({1, 3});
    CHECK(r31.retract == GradingVector{3, 1});
    CHECK(r31.count == 1);
    CHECK(r31.classes[0].kinds == std::vector<Sl2Kind>{Sl2Kind::S});

    CHECK(classify_retract({1, 1}).count == 0);
    CHECK(classify_retract({5}).count == 0);
    CHECK_THROWS_AS(classify_retract({1, 1, 1, 1}), PreconditionError);
}

TEST_CASE("enumerate_range") {
    CHECK(enumerate_range(0).empty());

    auto recs2 = enumerate_range(2);
    bool has_222 = false, has_221 = false;
    for (const auto& r : recs2) {
        if (r.retract == GradingVector{2, 2, 2}) has_222 = r.count == 2;
        if (r.retract == GradingVector{2, 2, 1}) has_221 = r.count == 2;
    }
    CHECK(has_222);
    CHECK(has_221);

    // bound 4 includes the one-class families within range
    auto recs4 = enumerate_range(4);
    auto find = [&](GradingVector k) -> const ClassificationRecord* {
        for (const auto& r : recs4)
            if (r.retract == k) return &r;
        return nullptr;
    };
    REQUIRE(find({4, 4, -1}));  // (k,k,3-k), k = 4
    CHECK(find({4, 4, -1})->case_label == "2c");
    REQUIRE(find({4, 1, 1}));  // (k,k,5-k), k = 1
    CHECK(find({4, 1, 1})->case_label == "2d");
    REQUIRE(find({3, 3, 2}));  // (k,k,5-k), k = 3
    CHECK(find({3, 3, 2})->case_label == "2d");
    REQUIRE(find({3, 3, 3}));
    CHECK(find({3, 3, 3})->case_label == "2d'");

    // every emitted record is fully verified, with distinct classes
    for (const auto& r : recs4) {
        CHECK(r.count == r.classes.size());
        CHECK(r.dimensions_verified);
        for (const auto& cc : r.classes) {
            CHECK(cc.membership_verified);
            CHECK_FALSE(cc.kinds.empty());
        }
        if (r.count == 2) {
            CHECK(r.separation_verified);
            CHECK_FALSE(scalar_equivalent(r.classes[0].cls, r.classes[1].cls).has_value());
        }
    }
}

TEST_CASE("enumerate_range output matches the golden file") {
    std::string text = records_to_text(enumerate_range(4));
    std::ifstream in(std::string(TEST_DATA_DIR) + "/classify_range_4.txt");
    REQUIRE(in.good());
    std::ostringstream golden;
    golden << in.rdbuf();
    CHECK(text == golden.str());
    // byte-identical across runs
    CHECK(records_to_text(enumerate_range(4)) == text);
}

TEST_CASE("emit_transition examples") {
    // v = 0 gives the split transitions
    TransitionFunctions t0 = emit_transition({2, 1}, SuperField(Chart::U0, 2));
    CHECK(render_function(t0.y_prime) == "x^-1");
    CHECK(render_function(t0.eta_primes[0]) == "x^-2 xi1");
    CHECK(render_function(t0.eta_primes[1]) == "x^-1 xi2");

    // the 1|2 atlas: y' = x^-1 - x^-3 xi1 xi2, eta'_i = x^-1 xi_i at k = (1,1)
    TransitionFunctions tq = emit_transition({1, 1}, parse0("x^-1 xi1*xi2 d/dx", 2));
    CHECK(render_function(tq.y_prime) == "x^-1 - x^-3 xi1*xi2");
    CHECK(render_function(tq.eta_primes[0]) == "x^-1 xi1");
    CHECK(render_function(tq.eta_primes[1]) == "x^-1 xi2");

    // k = (2,2,2) with the verified class-a cocycle
    TransitionFunctions t2 = emit_transition(
        {2, 2, 2}, parse0("x^-1 xi1*xi2 d/dx + x^-2 xi1*xi2*xi3 d/dxi3", 3));
    CHECK(render_function(t2.y_prime) == "x^-1 - x^-3 xi1*xi2");
    CHECK(render_function(t2.eta_primes[0]) == "x^-2 xi1");
    CHECK(render_function(t2.eta_primes[1]) == "x^-2 xi2");
    CHECK(render_function(t2.eta_primes[2]) == "-x^-4 xi1*xi2*xi3 + x^-2 xi3");

    CHECK_THROWS_AS(emit_transition({2, 2}, parse0("xi1 d/dxi2", 2)), PreconditionError);
}

TEST_CASE("transition functions reduce to the split ones at odd degree < 2") {
    for (GradingVector k : {GradingVector{2, 2, 1}, GradingVector{-2, 0, 4}}) {
        auto rec = classify_retract(k);
        for (const auto& cc : rec.classes) {
            TransitionFunctions t = emit_transition(rec.arrangement, cc.cls.representative);
            SuperFunction ybody = t.y_prime.degree_part(0);
            CHECK(render_function(ybody) == "x^-1");
            for (int i = 1; i <= 3; ++i) {
                SuperFunction lin = t.eta_primes[static_cast<std::size_t>(i - 1)].degree_part(1);
                SuperFunction split = SuperFunction::monomial(
                    Chart::U0, 3,
                    LaurentPoly::term(Rational(1),
                                      -rec.arrangement[static_cast<std::size_t>(i - 1)]),
                    OddMonomial({i}));
                CHECK(lin == split);
            }
        }
    }
}

TEST_CASE("composing with the split inverse transition recovers the cocycle") {
    // the degree-2 correspondence behind the classification
    for (const auto& rec : enumerate_range(3)) {
        auto ctx = rec.classes[0].cls.context;
        for (const auto& cc : rec.classes) {
            TransitionFunctions t = emit_transition(rec.arrangement, cc.cls.representative);
            SuperField recovered = transition_cocycle(t);
            CHECK(ctx->reduce(recovered) == cc.cls);
        }
    }
    // also exact for the 1|2 atlas
    SuperField v = parse0("x^-1 xi1*xi2 d/dx", 2);
    CHECK(transition_cocycle(emit_transition({2, 2}, v)) == v);
}
