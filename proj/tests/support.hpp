#pragma once

#include "relviews/obligations.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rvtest {

using namespace relviews;
using nlohmann::json;

// Shape of a micro model: concrete cells x, y; abstract cells X, Y; values
// 0..vals-1; one method `op` (a single token kind) when `token` is set.
struct Micro {
    int locs = 1;
    int abs_locs = 0;
    int vals = 2;
    int threads = 1;
    bool token = true;
};

inline json micro_model(const Micro& m, const std::string& monoid = "dcsl") {
    static const char* conc[] = {"x", "y"};
    static const char* abst[] = {"X", "Y"};
    json locs = json::array(), alocs = json::array();
    for (int i = 0; i < m.locs; ++i) locs.push_back(conc[i]);
    for (int i = 0; i < m.abs_locs; ++i) alocs.push_back(abst[i]);
    json methods = json::array();
    json body = json::object(), abody = json::object();
    if (m.token) {
        methods.push_back({{"name", "op"}, {"args", {0}}, {"rets", {0}}});
        body["op"] = "skip";
        abody["op"] = m.abs_locs ? json{{"assign", "X"}, {"value", "X + 1"}} : json("skip");
    }
    return {{"name", "micro"},
            {"domains",
             {{"locations", locs},
              {"abstract_locations", alocs},
              {"values", {{"from", 0}, {"to", m.vals - 1}}},
              {"threads", m.threads},
              {"methods", methods}}},
            {"methods", body},
            {"abstract", abody},
            {"monoid", monoid}};
}

inline std::unique_ptr<Session> micro_session(const Micro& m) {
    return std::make_unique<Session>(load_model(micro_model(m)));
}

inline std::unique_ptr<Session> fixture_session(const std::string& name, std::size_t cap = 0) {
    return std::make_unique<Session>(load_model_file(std::string(RELVIEWS_FIXTURES) + "/" + name + "/model", cap));
}

inline PrimPtr prim_of(const Session& s, const json& j) {
    CommandPtr c = parse_command(j, s.model(), false, "test");
    if (c->kind != Command::Kind::Prim) throw Error(ErrorKind::ModelError, "not a primitive: " + j.dump());
    return c->prim;
}

// Primitives over cell x used by the randomized suites.
inline std::vector<PrimPtr> micro_prims(const Session& s) {
    std::vector<PrimPtr> out;
    out.push_back(prim_of(s, "id"));
    out.push_back(prim_of(s, {{"assign", "x"}, {"value", "0"}}));
    out.push_back(prim_of(s, {{"assign", "x"}, {"value", "1"}}));
    out.push_back(prim_of(s, {{"assign", "x"}, {"value", "x + 1"}}));
    out.push_back(prim_of(s, {{"assume", "x == 0"}}));
    out.push_back(prim_of(s, {{"assume", "x == 1"}}));
    return out;
}

using Rng = std::mt19937;

inline std::vector<WorldTriple> random_worlds(const std::vector<WorldTriple>& universe, Rng& rng, double density) {
    std::bernoulli_distribution pick(density);
    std::vector<WorldTriple> out;
    for (const auto& w : universe) {
        if (pick(rng)) out.push_back(w);
    }
    return out;
}

inline DcslView random_dcsl(const std::vector<WorldTriple>& universe, Rng& rng, double density = 0.15) {
    return dcsl_view(random_worlds(universe, rng, density));
}

// Every (sigma', Sigma', Delta') reachable from a world of `ws` by one run
// of alpha and LP*; nullopt if alpha can fault.
inline std::optional<std::vector<WorldTriple>> post_image(const Session& s, ThreadId t, const PrimCommand& alpha,
                                                          const std::vector<WorldTriple>& ws) {
    std::vector<WorldTriple> out;
    for (const auto& w : ws) {
        const Outcome o = s.lp().table().apply(alpha, w.concrete, t, s.domains().modulus);
        if (o.fault) return std::nullopt;
        for (const auto& sigma : o.states) {
            for (const auto& c : s.lp().lp_star({w.abstract, w.tokens})) out.push_back({sigma, c.abstract, c.tokens});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline const DcslView& as_dcsl(const View& v) { return std::get<DcslView>(v); }

inline std::vector<WorldTriple> sorted(std::vector<WorldTriple> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace rvtest
