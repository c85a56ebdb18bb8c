#pragma once

#include "relviews/linearizability.hpp"
#include "relviews/logic.hpp"
#include "relviews/monoid.hpp"
#include "relviews/parse.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace relviews {

struct MethodSpec {
    Assertion pre;
    Assertion post;
};

// A library model: concrete and abstract methods over finite domains, plus
// what the proof side needs (monoid, macros, actions, specifications).
// Method bodies mention the argument as `a` and the expected result as `r`.
struct Model {
    std::string name;
    Domains domains;
    std::map<std::string, CommandPtr> methods;
    std::map<std::string, CommandPtr> abstract;
    Heap initial_concrete;
    Heap initial_abstract;
    std::string monoid = "dcsl";
    MacroTable macros;
    std::optional<Spatial> shared;
    std::vector<RgAction> guarantee;   // parametrized by t, the acting thread
    std::vector<RgAction> environment; // client actions on thread t
    std::map<std::string, MethodSpec> spec;
    BoundKind bound_kind = BoundKind::Events;
    nlohmann::json source;

    ParseScope scope(bool abstract_side = false) const;
};

// Throws SchemaError (with line and column for syntax errors) or ModelError.
nlohmann::json read_json_file(const std::string& path);
Model load_model(const nlohmann::json& doc, std::size_t cap_override = 0);
Model load_model_file(const std::string& path, std::size_t cap_override = 0);
nlohmann::json serialize_model(const Model& m);
// Canonical description of everything a model denotes.
std::string model_fingerprint(const Model& m);

Assertion parse_assertion(const nlohmann::json& j, const Model& m, const std::string& where);
CommandPtr parse_command(const nlohmann::json& j, const Model& m, bool abstract_side, const std::string& where);

struct OutlineSet {
    std::map<std::string, OutlinePtr> methods;
};
OutlineSet load_outline(const nlohmann::json& doc, const Model& m);
OutlineSet load_outline_file(const std::string& path, const Model& m);

// The method instance for alphabet entry k, with a and r substituted.
CommandPtr method_instance(const Model& m, std::size_t k);
CommandPtr abstract_instance(const Model& m, std::size_t k);
Interpretation instance_interpretation(const Model& m, std::size_t k, ThreadId t);

// Owns a model together with the structures derived from it.
class Session {
public:
    explicit Session(Model m);
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const Model& model() const { return model_; }
    const Domains& domains() const { return model_.domains; }
    const LpContext& lp() const { return *lp_; }
    Library concrete_library() const;
    Library abstract_library() const;
    // Built on first use; may throw UniverseTooLarge.
    const Monoid& monoid() const;
    const Evaluator& evaluator() const;

private:
    Model model_;
    std::unique_ptr<LpContext> lp_;
    mutable std::once_flag once_;
    mutable std::unique_ptr<Monoid> monoid_;
    mutable std::unique_ptr<Evaluator> eval_;
    mutable std::vector<WorldTriple> universe_;
    mutable std::vector<std::pair<RelationPtr, RelationPtr>> rg_;
};

} // namespace relviews
