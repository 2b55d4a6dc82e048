#include <algorithm>
#include <fstream>
#include <iostream>

#include "groupoids/cli.hpp"
#include "groupoids/decalage.hpp"
#include "groupoids/oracle.hpp"
#include "groupoids/sweep.hpp"

#include "CLI11.hpp"

namespace cli {

using gpd::Groupoid;
using gpd::InternalFunctor;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitViolation = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitInternal = 4;

void write_json_file(const std::filesystem::path& path, const ordered_json& doc) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path.string() + "'");
    out << doc.dump(2) << "\n";
}

int report_violations(const std::vector<std::string>& violations, std::ostream& err) {
    for (const auto& v : violations) err << "violation: " << v << "\n";
    return kExitViolation;
}

/// Loads a functor file and fully validates it (structure, groupoid axioms,
/// functor equations).  Returns the functor or an exit code.
std::optional<InternalFunctor> load_valid_functor(const std::filesystem::path& path,
                                                  std::ostream& err, int& exit_code) {
    FunctorLoad fl = load_functor_file(path);
    if (!fl.violations.empty()) {
        exit_code = report_violations(fl.violations, err);
        return std::nullopt;
    }
    std::vector<std::string> bad;
    for (const auto& v : gpd::validate_groupoid(fl.functor->dom)) bad.push_back("dom: " + v);
    for (const auto& v : gpd::validate_groupoid(fl.functor->cod)) bad.push_back("cod: " + v);
    if (bad.empty())
        for (const auto& v : gpd::validate_functor(*fl.functor)) bad.push_back(v);
    if (!bad.empty()) {
        exit_code = report_violations(bad, err);
        return std::nullopt;
    }
    return fl.functor;
}

std::optional<Groupoid> load_valid_groupoid(const std::filesystem::path& path, std::ostream& err,
                                            int& exit_code) {
    GroupoidLoad gl = load_groupoid_file(path);
    if (!gl.violations.empty()) {
        exit_code = report_violations(gl.violations, err);
        return std::nullopt;
    }
    auto bad = gpd::validate_groupoid(*gl.groupoid);
    if (!bad.empty()) {
        exit_code = report_violations(bad, err);
        return std::nullopt;
    }
    return gl.groupoid;
}

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
    json doc = load_json_file(path);
    if (doc.is_object() && doc.contains("f0")) {
        int code = kExitOk;
        auto f = load_valid_functor(path, err, code);
        if (!f) return code;
        out << "ok: valid functor (" << f->dom.obj().size() << " -> " << f->cod.obj().size()
            << " objects)\n";
        return kExitOk;
    }
    int code = kExitOk;
    auto g = load_valid_groupoid(path, err, code);
    if (!g) return code;
    out << "ok: valid groupoid (" << g->obj().size() << " objects, " << g->arr().size()
        << " arrows)\n";
    return kExitOk;
}

void print_report(const AnalysisReport& r, std::ostream& out) {
    auto yesno = [](bool b) { return b ? "yes" : "no"; };
    out << "full:                   " << yesno(r.full) << "\n"
        << "faithful:               " << yesno(r.faithful) << "\n"
        << "essentially surjective: " << yesno(r.essentially_surjective) << "\n"
        << "discrete fibration:     " << yesno(r.discrete_fibration) << "\n"
        << "final (comma):          " << yesno(r.final_by_comma) << "\n"
        << "final (decalage):       " << yesno(r.final_by_decalage) << "\n"
        << "final (fullness):       " << yesno(r.final_by_fullness) << "\n"
        << "final (support):        " << yesno(r.final_by_support) << "\n"
        << "agreement:              " << yesno(r.agreement) << "\n"
        << "pi0: " << r.pi0_dom << " -> " << r.pi0_cod
        << " (injective: " << yesno(r.pi0_map_injective)
        << ", surjective: " << yesno(r.pi0_map_surjective) << ")\n";
}

int cmd_analyze(const std::filesystem::path& path, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    int code = kExitOk;
    auto f = load_valid_functor(path, err, code);
    if (!f) return code;
    AnalysisReport r = analyze(*f);
    print_report(r, out);
    if (!out_path.empty()) write_json_file(out_path, report_to_json(r));
    if (!r.agreement) {
        err << "finality criteria disagree\n";
        return kExitDisagreement;
    }
    return kExitOk;
}

int cmd_factorize(const std::filesystem::path& path, const std::string& out_dir, std::ostream& out,
                  std::ostream& err) {
    int code = kExitOk;
    auto f = load_valid_functor(path, err, code);
    if (!f) return code;
    dec::FactorizationResult fr = dec::comprehensive_factorize(*f);

    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_json_file(dir / "T.json", groupoid_to_json(fr.t));
    write_json_file(dir / "J.json", functor_to_json(fr.j, std::nullopt, std::string("T.json")));
    write_json_file(dir / "K.json", functor_to_json(fr.k, std::string("T.json"), std::nullopt));

    bool kj = gpd::compose_functors(fr.j, fr.k) == *f;
    bool kdf = gpd::is_discrete_fibration(fr.k);
    bool jfinal = dec::is_final_by_decalage(fr.j);
    auto okfail = [](bool b) { return b ? "ok" : "FAILED"; };
    out << "T0: " << fr.t.obj().size() << " objects\n"
        << "T1: " << fr.t.arr().size() << " arrows\n"
        << "K . J = F: " << okfail(kj) << "\n"
        << "K discrete fibration: " << okfail(kdf) << "\n"
        << "J final: " << okfail(jfinal) << "\n"
        << "J iso: " << (gpd::is_iso_functor(fr.j) ? "yes" : "no") << "\n"
        << "wrote " << (dir / "T.json").string() << ", J.json, K.json\n";
    if (!kj || !kdf || !jfinal) {
        err << "factorization verification failed\n";
        return kExitInternal;
    }
    return kExitOk;
}

int cmd_pi0(const std::filesystem::path& path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    int code = kExitOk;
    auto g = load_valid_groupoid(path, err, code);
    if (!g) return code;
    auto p = gpd::pi0(*g);
    out << "pi0: " << p.components.size() << " component(s)\n";
    for (std::size_t k = 0; k < p.components.size(); ++k) {
        out << "  " << p.components.label(static_cast<int>(k)) << ":";
        for (std::size_t x = 0; x < g->obj().size(); ++x)
            if (p.q(static_cast<int>(x)) == static_cast<int>(k))
                out << " " << g->obj().label(static_cast<int>(x));
        out << "\n";
    }
    if (!out_path.empty()) {
        ordered_json doc;
        doc["components"] = p.components.labels();
        ordered_json q = ordered_json::object();
        for (std::size_t x = 0; x < g->obj().size(); ++x)
            q[g->obj().label(static_cast<int>(x))] = p.components.label(p.q(static_cast<int>(x)));
        doc["q"] = std::move(q);
        write_json_file(out_path, doc);
    }
    return kExitOk;
}

int cmd_dec(const std::filesystem::path& path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    int code = kExitOk;
    auto g = load_valid_groupoid(path, err, code);
    if (!g) return code;
    Groupoid d = dec::decalage(*g);
    out << "dec: " << d.obj().size() << " objects, " << d.arr().size() << " arrows\n";
    if (!out_path.empty()) write_json_file(out_path, groupoid_to_json(d));
    return kExitOk;
}

int cmd_support(const std::filesystem::path& path, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    int code = kExitOk;
    auto g = load_valid_groupoid(path, err, code);
    if (!g) return code;
    auto s = gpd::support(*g);
    out << "support: " << s.relation.arr().size() << " related pair(s) over "
        << g->obj().size() << " object(s)\n";
    if (!out_path.empty()) {
        ordered_json doc;
        doc["relation"] = groupoid_to_json(s.relation);
        ordered_json sigma = ordered_json::object();
        for (std::size_t a = 0; a < g->arr().size(); ++a)
            sigma[g->arr().label(static_cast<int>(a))] =
                s.relation.arr().label(s.sigma(static_cast<int>(a)));
        doc["sigma"] = std::move(sigma);
        write_json_file(out_path, doc);
    }
    return kExitOk;
}

int cmd_lift(const std::filesystem::path& path, const std::string& out_dir, std::ostream& out,
             std::ostream& err) {
    json doc = load_json_file(path);
    if (!doc.is_object()) throw parse_error("lift input must be a JSON object");
    if (!doc.contains("objects") || !doc.contains("map") || !doc.contains("cod"))
        throw parse_error("lift input needs fields 'objects', 'map' and 'cod'");
    if (!doc["objects"].is_array() || !doc["map"].is_object())
        throw parse_error("'objects' must be an array and 'map' an object");

    GroupoidLoad gl;
    if (doc["cod"].is_string()) {
        std::filesystem::path ref(doc["cod"].get<std::string>());
        if (ref.is_relative()) ref = path.parent_path() / ref;
        gl = load_groupoid_file(ref);
    } else {
        gl = groupoid_from_json(doc["cod"]);
    }
    if (!gl.violations.empty()) return report_violations(gl.violations, err);
    auto bad = gpd::validate_groupoid(*gl.groupoid);
    if (!bad.empty()) return report_violations(bad, err);

    std::vector<std::string> labels;
    for (const auto& l : doc["objects"]) {
        if (!l.is_string()) throw parse_error("object labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    setcore::FinSet x(labels);
    std::vector<std::string> violations;
    std::vector<int> table(x.size(), -1);
    for (const auto& [from, to] : doc["map"].items()) {
        auto fi = x.find(from);
        if (!fi) {
            violations.push_back("map: unknown source '" + from + "'");
            continue;
        }
        if (!to.is_string()) throw parse_error("map images must be strings");
        auto ti = gl.groupoid->obj().find(to.get<std::string>());
        if (!ti) {
            violations.push_back("map: unknown image for '" + from + "'");
            continue;
        }
        table[static_cast<std::size_t>(*fi)] = *ti;
    }
    for (std::size_t k = 0; k < x.size(); ++k)
        if (table[k] < 0)
            violations.push_back("map: no image for '" + x.label(static_cast<int>(k)) + "'");
    if (!violations.empty()) return report_violations(violations, err);

    auto lift = gpd::cartesian_lift(setcore::FinMap(x, gl.groupoid->obj(), table), *gl.groupoid);
    out << "lift: " << lift.lifted.obj().size() << " objects, " << lift.lifted.arr().size()
        << " arrows\n"
        << "fully faithful: "
        << (gpd::is_full(lift.to_base) && gpd::is_faithful(lift.to_base) ? "yes" : "NO") << "\n";
    if (!out_dir.empty()) {
        std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_json_file(dir / "lifted.json", groupoid_to_json(lift.lifted));
        write_json_file(dir / "to_base.json",
                        functor_to_json(lift.to_base, std::string("lifted.json"), std::nullopt));
        out << "wrote " << (dir / "lifted.json").string() << ", to_base.json\n";
    }
    return kExitOk;
}

int cmd_boff(const std::filesystem::path& path, const std::string& out_dir, std::ostream& out,
             std::ostream& err) {
    int code = kExitOk;
    auto f = load_valid_functor(path, err, code);
    if (!f) return code;
    auto b = gpd::boff_factorize(*f);
    out << "middle groupoid: " << b.ff.dom.obj().size() << " objects, "
        << b.ff.dom.arr().size() << " arrows\n"
        << "phi mono (faithful): " << (setcore::is_mono(b.phi) ? "yes" : "no") << "\n"
        << "phi regular epi (full): " << (setcore::is_regular_epi(b.phi) ? "yes" : "no") << "\n";
    if (!out_dir.empty()) {
        std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_json_file(dir / "middle.json", groupoid_to_json(b.ff.dom));
        write_json_file(dir / "bo.json",
                        functor_to_json(b.bo, std::nullopt, std::string("middle.json")));
        write_json_file(dir / "ff.json",
                        functor_to_json(b.ff, std::string("middle.json"), std::nullopt));
        out << "wrote " << (dir / "middle.json").string() << ", bo.json, ff.json\n";
    }
    return kExitOk;
}

int cmd_sweep(const sweep::SweepOptions& options, std::ostream& out, std::ostream& err) {
    if (options.bounds.max_vertex_group_order > 6) {
        err << "--max-group-order above 6 is not supported\n";
        return kExitParse;
    }
    sweep::SweepStats stats = sweep::run_sweep(options);
    out << "groupoids: " << stats.groupoids << "\n"
        << "functor instances: " << stats.functors << "\n"
        << "finality disagreements: " << stats.finality_disagreements << "\n"
        << "factorization failures: " << stats.factorization_failures << "\n"
        << "oracle mismatches: " << stats.oracle_mismatches << "\n";
    if (!stats.clean()) {
        std::size_t shown = 0;
        for (const auto& line : stats.failures) {
            if (shown++ == 20) {
                err << "... " << (stats.failures.size() - 20) << " more\n";
                break;
            }
            err << line << "\n";
        }
        return kExitDisagreement;
    }
    return kExitOk;
}

}  // namespace

AnalysisReport analyze(const InternalFunctor& f) {
    AnalysisReport r;
    r.full = gpd::is_full(f);
    r.faithful = gpd::is_faithful(f);
    r.essentially_surjective = gpd::is_essentially_surjective(f);
    r.discrete_fibration = gpd::is_discrete_fibration(f);
    r.final_by_comma = oracle::is_final_by_comma(f);
    r.final_by_decalage = dec::is_final_by_decalage(f);
    r.final_by_fullness = dec::is_final_by_fullness(f);
    r.final_by_support = dec::is_final_by_support(f);
    r.agreement = r.final_by_comma == r.final_by_decalage &&
                  r.final_by_comma == r.final_by_fullness &&
                  r.final_by_comma == r.final_by_support;
    auto p = gpd::pi0_map(f);
    r.pi0_dom = p.dom().size();
    r.pi0_cod = p.cod().size();
    r.pi0_map_injective = setcore::is_mono(p);
    r.pi0_map_surjective = setcore::is_regular_epi(p);
    return r;
}

ordered_json report_to_json(const AnalysisReport& r) {
    ordered_json doc;
    doc["full"] = r.full;
    doc["faithful"] = r.faithful;
    doc["essentially_surjective"] = r.essentially_surjective;
    doc["discrete_fibration"] = r.discrete_fibration;
    doc["final_by_comma"] = r.final_by_comma;
    doc["final_by_decalage"] = r.final_by_decalage;
    doc["final_by_fullness"] = r.final_by_fullness;
    doc["final_by_support"] = r.final_by_support;
    doc["agreement"] = r.agreement;
    doc["pi0_dom"] = r.pi0_dom;
    doc["pi0_cod"] = r.pi0_cod;
    doc["pi0_map_injective"] = r.pi0_map_injective;
    doc["pi0_map_surjective"] = r.pi0_map_surjective;
    return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"internal groupoids in finite sets: validation, analysis, "
                 "and the final/discrete-fibration factorization"};
    app.require_subcommand(1);

    std::string in_path, out_path, out_dir;
    sweep::SweepOptions sw;

    auto* validate = app.add_subcommand("validate", "check a groupoid or functor document");
    validate->add_option("file", in_path)->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "classify a functor");
    analyze_cmd->add_option("file", in_path)->required();
    analyze_cmd->add_option("--out", out_path, "write a JSON report");

    auto* factorize = app.add_subcommand("factorize", "factor a functor as final . fibration");
    factorize->add_option("file", in_path)->required();
    factorize->add_option("--out", out_dir, "output directory")->required();

    auto* pi0_cmd = app.add_subcommand("pi0", "connected components of a groupoid");
    pi0_cmd->add_option("file", in_path)->required();
    pi0_cmd->add_option("--out", out_path);

    auto* dec_cmd = app.add_subcommand("dec", "decalage of a groupoid");
    dec_cmd->add_option("file", in_path)->required();
    dec_cmd->add_option("--out", out_path);

    auto* support_cmd = app.add_subcommand("support", "support relation of a groupoid");
    support_cmd->add_option("file", in_path)->required();
    support_cmd->add_option("--out", out_path);

    auto* lift_cmd = app.add_subcommand("lift", "cartesian lifting of a map into the objects");
    lift_cmd->add_option("file", in_path)->required();
    lift_cmd->add_option("--out", out_dir, "output directory");

    auto* boff_cmd = app.add_subcommand("boff", "bijective-on-objects / fully-faithful split");
    boff_cmd->add_option("file", in_path)->required();
    boff_cmd->add_option("--out", out_dir, "output directory");

    auto* sweep_cmd = app.add_subcommand("sweep", "exhaustively verify all criteria agree");
    sweep_cmd->add_option("--max-components", sw.bounds.max_components);
    sweep_cmd->add_option("--max-objects-per-component", sw.bounds.max_objects_per_component);
    sweep_cmd->add_option("--max-group-order", sw.bounds.max_vertex_group_order);
    sweep_cmd->add_option("--max-total-arrows", sw.bounds.max_total_arrows);
    sweep_cmd->add_option("--jobs", sw.jobs, "parallel workers");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (validate->parsed()) return cmd_validate(in_path, out, err);
        if (analyze_cmd->parsed()) return cmd_analyze(in_path, out_path, out, err);
        if (factorize->parsed()) return cmd_factorize(in_path, out_dir, out, err);
        if (pi0_cmd->parsed()) return cmd_pi0(in_path, out_path, out, err);
        if (dec_cmd->parsed()) return cmd_dec(in_path, out_path, out, err);
        if (support_cmd->parsed()) return cmd_support(in_path, out_path, out, err);
        if (lift_cmd->parsed()) return cmd_lift(in_path, out_dir, out, err);
        if (boff_cmd->parsed()) return cmd_boff(in_path, out_dir, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(sw, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const setcore::internal_consistency_error& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const setcore::boundary_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitParse;
}

}  // namespace cli
