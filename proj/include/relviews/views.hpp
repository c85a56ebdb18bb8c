#pragma once

#include "relviews/command.hpp"
#include "relviews/state.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace relviews {

struct AbstractConfig {
    Heap abstract;
    TokenMap tokens;

    auto operator<=>(const AbstractConfig&) const = default;
    bool operator==(const AbstractConfig&) const = default;
};

// Abstract operations indexed by the token alphabet, with the LP relation
// they induce on (abstract state, tokens).
class LpContext {
public:
    // `ops[k]` is the abstract command for alphabet entry k, already bound to
    // the abstract location table.
    LpContext(const Domains& d, std::vector<CommandPtr> ops,
              const TransformerTable& table = TransformerTable::builtin());

    const Domains& domains() const { return d_; }
    const TransformerTable& table() const { return table_; }

    // One LP: some thread's todo(A) becomes done(A) while A runs.
    std::vector<AbstractConfig> lp_step(const AbstractConfig& c) const;
    // Reflexive-transitive closure of lp_step, sorted.
    const std::vector<AbstractConfig>& lp_star(const AbstractConfig& c) const;
    bool lp_reaches(const AbstractConfig& from, const AbstractConfig& to) const;

private:
    struct Hash {
        std::size_t operator()(const AbstractConfig& c) const noexcept;
    };
    const Domains& d_;
    std::vector<CommandPtr> ops_;
    const TransformerTable& table_;
    mutable std::mutex mu_;
    mutable std::unordered_map<AbstractConfig, std::vector<AbstractConfig>, Hash> star_cache_;
};

// Witness for a failed action judgement.
struct ActionCounterexample {
    std::string frame;     // description of the frame witness
    WorldTriple pre;       // (sigma, Sigma, Delta) in the framed precondition
    Heap post;             // sigma' (ignored when `fault` is set)
    bool fault = false;
    std::string reason;

    std::string str(const Domains& d) const;
};

struct ActionVerdict {
    bool ok = true;
    std::optional<ActionCounterexample> counterexample;
    ErrorKind error = ErrorKind::ModelError; // meaningful only when !ok

    static ActionVerdict holds() { return {}; }
    static ActionVerdict fails(ActionCounterexample c, ErrorKind k = ErrorKind::ModelError) {
        ActionVerdict v;
        v.ok = false;
        v.counterexample = std::move(c);
        v.error = k;
        return v;
    }
};

enum class Implication { Holds, Fails, NotEstablished };

struct ImplicationVerdict {
    Implication result = Implication::Holds;
    std::string witness;

    bool holds() const { return result == Implication::Holds; }
};

// Sorted set of worlds with membership.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(std::vector<WorldTriple> ws);

    bool contains(const WorldTriple& w) const { return std::binary_search(items_.begin(), items_.end(), w); }
    const std::vector<WorldTriple>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

private:
    std::vector<WorldTriple> items_;
};

// The action condition for one fixed frame: every pre world and every
// successor sigma' has an LP* outcome landing in `post`.
std::optional<ActionCounterexample> simulate(ThreadId t, const PrimCommand& alpha, const std::vector<WorldTriple>& pre,
                                             const std::function<bool(const WorldTriple&)>& in_post,
                                             const LpContext& lp, const std::string& frame);

} // namespace relviews
