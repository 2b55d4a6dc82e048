#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "groupoids/cli.hpp"

namespace cli {

using gpd::Groupoid;
using gpd::InternalFunctor;
using nlohmann::json;
using nlohmann::ordered_json;
using setcore::FinMap;
using setcore::FinSet;

namespace {

const json& require_field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw parse_error(std::string("missing field '") + name + "'");
    return *it;
}

std::string require_string(const json& value, const std::string& what) {
    if (!value.is_string()) throw parse_error(what + " must be a string");
    return value.get<std::string>();
}

}  // namespace

GroupoidLoad groupoid_from_json(const json& doc) {
    if (!doc.is_object()) throw parse_error("groupoid document must be a JSON object");
    GroupoidLoad out;
    auto& bad = out.violations;

    const json& jobjects = require_field(doc, "objects");
    if (!jobjects.is_array()) throw parse_error("'objects' must be an array");
    std::vector<std::string> obj_labels;
    for (const auto& o : jobjects) obj_labels.push_back(require_string(o, "object label"));

    const json& jarrows = require_field(doc, "arrows");
    if (!jarrows.is_array()) throw parse_error("'arrows' must be an array");
    std::vector<std::string> arr_labels;
    std::vector<std::string> dnames, cnames;
    for (const auto& a : jarrows) {
        if (!a.is_object()) throw parse_error("each arrow must be an object {name, d, c}");
        arr_labels.push_back(require_string(require_field(a, "name"), "arrow name"));
        dnames.push_back(require_string(require_field(a, "d"), "arrow d"));
        cnames.push_back(require_string(require_field(a, "c"), "arrow c"));
    }

    const json& jinv = require_field(doc, "inv");
    const json& jcomp = require_field(doc, "comp");
    const json& junits = require_field(doc, "units");
    if (!jinv.is_object()) throw parse_error("'inv' must be an object");
    if (!jcomp.is_array()) throw parse_error("'comp' must be an array");
    if (!junits.is_object()) throw parse_error("'units' must be an object");

    std::unordered_map<std::string, int> oindex, aindex;
    for (std::size_t k = 0; k < obj_labels.size(); ++k) {
        if (!oindex.emplace(obj_labels[k], static_cast<int>(k)).second)
            bad.push_back("duplicate object label '" + obj_labels[k] + "'");
    }
    for (std::size_t k = 0; k < arr_labels.size(); ++k) {
        if (!aindex.emplace(arr_labels[k], static_cast<int>(k)).second)
            bad.push_back("duplicate arrow name '" + arr_labels[k] + "'");
    }
    if (!bad.empty()) return out;

    std::vector<int> dtab(arr_labels.size()), ctab(arr_labels.size());
    for (std::size_t k = 0; k < arr_labels.size(); ++k) {
        auto dit = oindex.find(dnames[k]);
        auto cit = oindex.find(cnames[k]);
        if (dit == oindex.end())
            bad.push_back("arrow '" + arr_labels[k] + "': unknown object '" + dnames[k] + "'");
        else
            dtab[k] = dit->second;
        if (cit == oindex.end())
            bad.push_back("arrow '" + arr_labels[k] + "': unknown object '" + cnames[k] + "'");
        else
            ctab[k] = cit->second;
    }

    std::vector<int> etab(obj_labels.size(), -1);
    for (const auto& [oname, aname] : junits.items()) {
        auto oit = oindex.find(oname);
        if (oit == oindex.end()) {
            bad.push_back("units: unknown object '" + oname + "'");
            continue;
        }
        auto ait = aindex.find(require_string(aname, "unit arrow"));
        if (ait == aindex.end()) {
            bad.push_back("units: unknown arrow for object '" + oname + "'");
            continue;
        }
        etab[static_cast<std::size_t>(oit->second)] = ait->second;
    }
    for (std::size_t k = 0; k < obj_labels.size(); ++k)
        if (etab[k] < 0) bad.push_back("object '" + obj_labels[k] + "' has no unit listed");

    std::vector<int> itab(arr_labels.size(), -1);
    for (const auto& [aname, bname] : jinv.items()) {
        auto ait = aindex.find(aname);
        if (ait == aindex.end()) {
            bad.push_back("inv: unknown arrow '" + aname + "'");
            continue;
        }
        auto bit = aindex.find(require_string(bname, "inverse arrow"));
        if (bit == aindex.end()) {
            bad.push_back("inv: unknown inverse for arrow '" + aname + "'");
            continue;
        }
        itab[static_cast<std::size_t>(ait->second)] = bit->second;
    }
    for (std::size_t k = 0; k < arr_labels.size(); ++k)
        if (itab[k] < 0) bad.push_back("arrow '" + arr_labels[k] + "' has no inverse listed");

    // Composition entries, then completeness against the composable pairs.
    std::unordered_map<long long, int> comp;
    const long long narr = static_cast<long long>(arr_labels.size());
    for (const auto& row : jcomp) {
        if (!row.is_array() || row.size() != 3)
            throw parse_error("each comp row must be a [g, h, gh] triple");
        auto git = aindex.find(require_string(row[0], "comp entry"));
        auto hit = aindex.find(require_string(row[1], "comp entry"));
        auto rit = aindex.find(require_string(row[2], "comp entry"));
        if (git == aindex.end() || hit == aindex.end() || rit == aindex.end()) {
            bad.push_back("comp row references an unknown arrow");
            continue;
        }
        if (ctab[static_cast<std::size_t>(git->second)] !=
            dtab[static_cast<std::size_t>(hit->second)]) {
            bad.push_back("comp row (" + arr_labels[static_cast<std::size_t>(git->second)] + "," +
                          arr_labels[static_cast<std::size_t>(hit->second)] +
                          ") is not a composable pair");
            continue;
        }
        long long key = static_cast<long long>(git->second) * narr + hit->second;
        if (!comp.emplace(key, rit->second).second)
            bad.push_back("comp lists the pair (" +
                          arr_labels[static_cast<std::size_t>(git->second)] + "," +
                          arr_labels[static_cast<std::size_t>(hit->second)] + ") twice");
    }
    for (int g = 0; g < static_cast<int>(narr); ++g)
        for (int h = 0; h < static_cast<int>(narr); ++h)
            if (ctab[static_cast<std::size_t>(g)] == dtab[static_cast<std::size_t>(h)] &&
                comp.find(static_cast<long long>(g) * narr + h) == comp.end())
                bad.push_back("composable pair (" + arr_labels[static_cast<std::size_t>(g)] + "," +
                              arr_labels[static_cast<std::size_t>(h)] + ") missing from comp");
    if (!bad.empty()) return out;

    FinSet obj(obj_labels);
    FinSet arr(arr_labels);
    FinMap d(arr, obj, dtab);
    FinMap c(arr, obj, ctab);
    FinMap e(obj, arr, etab);
    FinMap i(arr, arr, itab);
    out.groupoid = gpd::make_groupoid(obj, arr, d, c, e, i, [&](int g, int h) {
        return comp.at(static_cast<long long>(g) * narr + h);
    });
    return out;
}

ordered_json groupoid_to_json(const Groupoid& g) {
    ordered_json doc;
    doc["objects"] = g.obj().labels();
    ordered_json arrows = ordered_json::array();
    for (std::size_t a = 0; a < g.arr().size(); ++a)
        arrows.push_back({{"name", g.arr().label(static_cast<int>(a))},
                          {"d", g.obj().label(g.d()(static_cast<int>(a)))},
                          {"c", g.obj().label(g.c()(static_cast<int>(a)))}});
    doc["arrows"] = std::move(arrows);
    ordered_json inv = ordered_json::object();
    for (std::size_t a = 0; a < g.arr().size(); ++a)
        inv[g.arr().label(static_cast<int>(a))] = g.arr().label(g.i()(static_cast<int>(a)));
    doc["inv"] = std::move(inv);
    ordered_json comp = ordered_json::array();
    for (std::size_t p = 0; p < g.m().dom().size(); ++p)
        comp.push_back({g.arr().label(g.cp1()(static_cast<int>(p))),
                        g.arr().label(g.cp2()(static_cast<int>(p))),
                        g.arr().label(g.m()(static_cast<int>(p)))});
    doc["comp"] = std::move(comp);
    ordered_json units = ordered_json::object();
    for (std::size_t x = 0; x < g.obj().size(); ++x)
        units[g.obj().label(static_cast<int>(x))] = g.arr().label(g.e()(static_cast<int>(x)));
    doc["units"] = std::move(units);
    return doc;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw parse_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return doc;
}

GroupoidLoad load_groupoid_file(const std::filesystem::path& path) {
    return groupoid_from_json(load_json_file(path));
}

namespace {

GroupoidLoad groupoid_from_json_or_ref(const json& value, const std::filesystem::path& base_dir,
                                       const char* field) {
    if (value.is_string()) {
        std::filesystem::path ref(value.get<std::string>());
        if (ref.is_relative()) ref = base_dir / ref;
        return load_groupoid_file(ref);
    }
    if (value.is_object()) return groupoid_from_json(value);
    throw parse_error(std::string("'") + field +
                      "' must be a groupoid document or a file reference");
}

std::optional<FinMap> parse_label_map(const json& value, const FinSet& dom, const FinSet& cod,
                                      const char* field, std::vector<std::string>& bad) {
    if (!value.is_object()) throw parse_error(std::string("'") + field + "' must be an object");
    std::vector<int> table(dom.size(), -1);
    for (const auto& [from, to] : value.items()) {
        auto fi = dom.find(from);
        if (!fi) {
            bad.push_back(std::string(field) + ": unknown source '" + from + "'");
            continue;
        }
        auto ti = cod.find(require_string(to, std::string(field) + " image"));
        if (!ti) {
            bad.push_back(std::string(field) + ": unknown image for '" + from + "'");
            continue;
        }
        table[static_cast<std::size_t>(*fi)] = *ti;
    }
    for (std::size_t k = 0; k < dom.size(); ++k)
        if (table[k] < 0)
            bad.push_back(std::string(field) + ": no image listed for '" +
                          dom.label(static_cast<int>(k)) + "'");
    if (!bad.empty()) return std::nullopt;
    return FinMap(dom, cod, std::move(table));
}

}  // namespace

FunctorLoad functor_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw parse_error("functor document must be a JSON object");
    FunctorLoad out;
    auto dom = groupoid_from_json_or_ref(require_field(doc, "dom"), base_dir, "dom");
    auto cod = groupoid_from_json_or_ref(require_field(doc, "cod"), base_dir, "cod");
    for (const auto& v : dom.violations) out.violations.push_back("dom: " + v);
    for (const auto& v : cod.violations) out.violations.push_back("cod: " + v);
    if (!out.violations.empty()) return out;

    auto f0 = parse_label_map(require_field(doc, "f0"), dom.groupoid->obj(),
                              cod.groupoid->obj(), "f0", out.violations);
    auto f1 = parse_label_map(require_field(doc, "f1"), dom.groupoid->arr(),
                              cod.groupoid->arr(), "f1", out.violations);
    if (!f0 || !f1) return out;
    out.functor = InternalFunctor{*dom.groupoid, *cod.groupoid, *f0, *f1};
    return out;
}

ordered_json functor_to_json(const InternalFunctor& f, const std::optional<std::string>& dom_ref,
                             const std::optional<std::string>& cod_ref) {
    ordered_json doc;
    if (dom_ref)
        doc["dom"] = *dom_ref;
    else
        doc["dom"] = groupoid_to_json(f.dom);
    if (cod_ref)
        doc["cod"] = *cod_ref;
    else
        doc["cod"] = groupoid_to_json(f.cod);
    ordered_json f0 = ordered_json::object();
    for (std::size_t x = 0; x < f.dom.obj().size(); ++x)
        f0[f.dom.obj().label(static_cast<int>(x))] =
            f.cod.obj().label(f.f0(static_cast<int>(x)));
    doc["f0"] = std::move(f0);
    ordered_json f1 = ordered_json::object();
    for (std::size_t a = 0; a < f.dom.arr().size(); ++a)
        f1[f.dom.arr().label(static_cast<int>(a))] =
            f.cod.arr().label(f.f1(static_cast<int>(a)));
    doc["f1"] = std::move(f1);
    return doc;
}

FunctorLoad load_functor_file(const std::filesystem::path& path) {
    return functor_from_json(load_json_file(path), path.parent_path());
}

}  // namespace cli
