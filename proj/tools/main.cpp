#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superp1/classify.hpp"
#include "superp1/errors.hpp"
#include "superp1/field_text.hpp"

using namespace superp1;
using nlohmann::json;

namespace {

GradingVector parse_k(const std::string& text) {
    GradingVector k;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            k.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParseError("bad grading entry '" + part + "'", pos);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (k.empty() || k.size() > 3)
        throw ParseError("--k expects 1 to 3 comma-separated integers", 0);
    return k;
}

std::string k_text(const GradingVector& k) {
    std::string out = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(k[i]);
    }
    return out + ")";
}

std::vector<std::string> kind_names(const std::vector<Sl2Kind>& kinds) {
    std::vector<std::string> out;
    for (Sl2Kind kd : kinds) out.push_back(kind_name(kd));
    return out;
}

json record_json(const ClassificationRecord& rec) {
    json j;
    j["retract"] = rec.retract;
    j["arrangement"] = rec.arrangement;
    j["case"] = rec.case_label;
    j["count"] = rec.count;
    j["algebras"] = kind_names(rec.algebra_kinds);
    j["classes"] = json::array();
    bool members = true;
    for (const auto& cc : rec.classes) {
        members = members && cc.membership_verified;
        j["classes"].push_back({{"label", cc.label},
                                {"cocycle", cc.cocycle_text},
                                {"algebras", kind_names(cc.kinds)},
                                {"membership_verified", cc.membership_verified}});
    }
    j["checks"] = {{"membership", rec.count == 0 ? json() : json(members)},
                   {"dimensions", rec.dimensions_verified},
                   {"separation", rec.count == 2 ? json(rec.separation_verified) : json()}};
    j["witnesses"] = json::array();
    for (const auto& w : rec.witnesses) {
        const char* status = w.status == WitnessStatus::Verified
                                 ? "verified"
                                 : (w.status == WitnessStatus::Failed ? "failed" : "flagged");
        j["witnesses"].push_back({{"name", w.name}, {"status", status}, {"note", w.note}});
    }
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact Cech cohomology, sl2 invariants and the classification of "
                 "even-homogeneous supermanifolds of dimension 1|m over the projective line"};
    app.require_subcommand(1);

    std::string k_arg, format = "text", left, right, field_arg, cocycle_arg, matrix_path;
    std::string algebra_arg;
    int deg = 2, m_arg = 0, range_bound = -1;
    bool unvalidated = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* h1 = app.add_subcommand("h1", "basis of H^1 of the degree-q tangent sheaf");
    h1->add_option("--k", k_arg, "grading k1,k2[,k3]")->required();
    h1->add_option("--deg", deg, "grading degree q")->required();
    add_format(h1);

    CLI::App* inv = app.add_subcommand("invariants", "basis of the sl2-invariant subspace");
    inv->add_option("--k", k_arg)->required();
    inv->add_option("--algebra", algebra_arg, "s, s-prime or s-double-prime")->required();
    add_format(inv);

    CLI::App* br = app.add_subcommand("bracket", "super bracket of two fields");
    br->add_option("--left", left)->required();
    br->add_option("--right", right)->required();
    br->add_option("--m", m_arg, "odd dimension")->required();
    add_format(br);

    CLI::App* ch = app.add_subcommand("chart", "transport a field to the other chart");
    ch->add_option("--field", field_arg)->required();
    ch->add_option("--k", k_arg)->required();
    add_format(ch);

    CLI::App* act = app.add_subcommand("act", "Int-action of a bundle automorphism");
    act->add_option("--matrix", matrix_path, "JSON automorphism file")->required();
    act->add_option("--cocycle", cocycle_arg)->required();
    act->add_option("--k", k_arg)->required();
    act->add_flag("--unvalidated", unvalidated, "skip the degree-bound check");
    add_format(act);

    CLI::App* cls = app.add_subcommand("classify", "classification records");
    cls->add_option("--k", k_arg);
    cls->add_option("--range", range_bound, "all retracts with entries in [-B, B]");
    add_format(cls);

    CLI::App* tr = app.add_subcommand("transition", "transition functions of the attached "
                                                    "supermanifold");
    tr->add_option("--k", k_arg)->required();
    tr->add_option("--cocycle", cocycle_arg)->required();
    add_format(tr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit with 1, --help with 0
    }
    bool as_json = format == "json";

    if (h1->parsed()) {
        GradingVector k = parse_k(k_arg);
        auto ctx = H1Context::build(k, deg);
        if (as_json) {
            json j{{"k", k}, {"q", deg}, {"dim", ctx->dim()}};
            j["basis"] = json::array();
            for (const auto& b : ctx->basis()) j["basis"].push_back(render_field(b));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "k = " << k_text(k) << ", q = " << deg << "\n"
                      << "dim H^1 = " << ctx->dim() << "\n";
            for (std::size_t i = 0; i < ctx->dim(); ++i)
                std::cout << "b" << i + 1 << ": " << render_field(ctx->basis()[i]) << "\n";
        }
    } else if (inv->parsed()) {
        GradingVector k = parse_k(k_arg);
        auto kind = kind_from_name(algebra_arg);
        if (!kind) throw ParseError("unknown algebra '" + algebra_arg + "'", 0);
        auto classes = invariant_subspace(*kind, k);
        if (as_json) {
            json j{{"k", k}, {"algebra", algebra_arg}, {"dim", classes.size()}};
            j["basis"] = json::array();
            for (const auto& c : classes) j["basis"].push_back(render_field(c.representative));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "k = " << k_text(k) << ", algebra = " << algebra_arg << "\n"
                      << "dim = " << classes.size() << "\n";
            for (std::size_t i = 0; i < classes.size(); ++i)
                std::cout << "v" << i + 1 << ": " << render_field(classes[i].representative)
                          << "\n";
        }
    } else if (br->parsed()) {
        Chart chart = detect_chart(left);
        if (detect_chart(right) != chart)
            throw PreconditionError("bracket operands live on different charts");
        SuperField result =
            super_bracket(parse_field(left, chart, m_arg), parse_field(right, chart, m_arg));
        if (as_json)
            std::cout << json{{"result", render_field(result)}}.dump(2) << "\n";
        else
            std::cout << render_field(result) << "\n";
    } else if (ch->parsed()) {
        GradingVector k = parse_k(k_arg);
        Chart chart = detect_chart(field_arg);
        SuperField result =
            change_chart(parse_field(field_arg, chart, static_cast<int>(k.size())), k);
        if (as_json)
            std::cout << json{{"result", render_field(result)}}.dump(2) << "\n";
        else
            std::cout << render_field(result) << "\n";
    } else if (act->parsed()) {
        GradingVector k = parse_k(k_arg);
        BundleAutomorphism a = load_automorphism(matrix_path);
        if (a.k != k) throw PreconditionError("--k differs from the matrix file grading");
        ValidationResult res = validate(a);
        if (!res.ok && !unvalidated) {
            std::string msg = "invalid automorphism";
            for (const auto& v : res.violations) msg += "; " + v;
            throw PreconditionError(msg);
        }
        auto ctx = H1Context::build(k, 2);
        CohClass z = ctx->reduce(parse_field(cocycle_arg, Chart::U0, static_cast<int>(k.size())));
        CohClass img = int_action_unvalidated(a, z);
        CohClass canonical = ctx->class_from_coords(img.coords);
        if (as_json) {
            json j{{"k", k},
                   {"validated", res.ok},
                   {"class", render_field(canonical.representative)}};
            j["coords"] = json::array();
            for (const auto& c : img.coords) j["coords"].push_back(c.to_string());
            if (!res.ok) j["violations"] = res.violations;
            std::cout << j.dump(2) << "\n";
        } else {
            if (!res.ok) {
                std::cout << "warning: degree bounds violated, computed unvalidated\n";
                for (const auto& v : res.violations) std::cout << "  " << v << "\n";
            }
            std::cout << render_field(canonical.representative) << "\n";
        }
    } else if (cls->parsed()) {
        if ((range_bound >= 0) == !k_arg.empty())
            throw ParseError("classify needs exactly one of --k or --range", 0);
        std::vector<ClassificationRecord> recs;
        if (range_bound >= 0)
            recs = enumerate_range(range_bound);
        else
            recs.push_back(classify_retract(parse_k(k_arg)));
        if (as_json) {
            json j = json::array();
            for (const auto& r : recs) j.push_back(record_json(r));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << records_to_text(recs);
        }
    } else if (tr->parsed()) {
        GradingVector k = parse_k(k_arg);
        SuperField v = parse_field(cocycle_arg, Chart::U0, static_cast<int>(k.size()));
        TransitionFunctions t = emit_transition(k, v);
        if (as_json) {
            json j{{"k", k}, {"y_prime", render_function(t.y_prime)}};
            j["eta_primes"] = json::array();
            for (const auto& e : t.eta_primes) j["eta_primes"].push_back(render_function(e));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "y' = " << render_function(t.y_prime) << "\n";
            for (std::size_t i = 0; i < t.eta_primes.size(); ++i)
                std::cout << "eta'_" << i + 1 << " = " << render_function(t.eta_primes[i])
                          << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const superp1::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const superp1::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
