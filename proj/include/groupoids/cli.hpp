#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "groupoids/groupoid.hpp"

#include "json.hpp"

// Document formats and the command-line surface.  Groupoid documents spell
// out the full structure (units, inverses and the complete composition
// table); parsing checks, it never infers.
//
// Exit codes: 0 ok, 1 parse error, 2 axiom/structure violation, 3 theorem
// disagreement, 4 internal consistency failure.

namespace cli {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroupoidLoad {
    std::optional<gpd::Groupoid> groupoid;
    std::vector<std::string> violations;  // structural defects (exit 2)
};

/// Parses {objects, arrows: [{name,d,c}], inv, comp: [[g,h,gh]], units}.
/// JSON shape problems throw parse_error; label-level defects are reported
/// as violations.
GroupoidLoad groupoid_from_json(const nlohmann::json& doc);
nlohmann::ordered_json groupoid_to_json(const gpd::Groupoid& g);

struct FunctorLoad {
    std::optional<gpd::InternalFunctor> functor;
    std::vector<std::string> violations;
};

/// Parses {dom, cod, f0, f1}; dom and cod are inline groupoid documents or
/// file references resolved against base_dir.
FunctorLoad functor_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// dom_ref / cod_ref emit a file reference instead of an inline document.
nlohmann::ordered_json functor_to_json(const gpd::InternalFunctor& f,
                                       const std::optional<std::string>& dom_ref,
                                       const std::optional<std::string>& cod_ref);

nlohmann::json load_json_file(const std::filesystem::path& path);
GroupoidLoad load_groupoid_file(const std::filesystem::path& path);
FunctorLoad load_functor_file(const std::filesystem::path& path);

struct AnalysisReport {
    bool full = false;
    bool faithful = false;
    bool essentially_surjective = false;
    bool discrete_fibration = false;
    bool final_by_comma = false;
    bool final_by_decalage = false;
    bool final_by_fullness = false;
    bool final_by_support = false;
    bool agreement = false;
    std::size_t pi0_dom = 0;
    std::size_t pi0_cod = 0;
    bool pi0_map_injective = false;
    bool pi0_map_surjective = false;
};
AnalysisReport analyze(const gpd::InternalFunctor& f);
nlohmann::ordered_json report_to_json(const AnalysisReport& report);

/// Entry point used by the binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
