#pragma once

#include "relviews/spatial.hpp"
#include "relviews/views.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relviews {

// The shared states under consideration, sorted.
struct SharedSpace {
    const Domains* domains = nullptr;
    std::vector<WorldTriple> states;
    // Universe for `true` and negation inside action assertions (optional).
    const std::vector<WorldTriple>* universe = nullptr;

    // Shared states satisfying a boxed assertion, keyed by its text and the
    // values of its free variables.
    struct BoxCache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const std::vector<WorldTriple>>> sets;
    };
    std::shared_ptr<BoxCache> boxes = std::make_shared<BoxCache>();

    bool contains(const WorldTriple& s) const { return std::binary_search(states.begin(), states.end(), s); }
};

// Rely/guarantee action pi ~> pi'. `fixed` binds parameters such as the
// acting thread; the other free variables are quantified.
struct RgAction {
    std::string name;
    Spatial pre;
    Spatial post;
    Interpretation fixed;
};

class Relation;
using RelationPtr = std::shared_ptr<const Relation>;

// Binary relation over shared states. Every relation is treated as
// reflexive: (s, s) always belongs to it.
class Relation {
public:
    enum class Kind { Empty, Full, Explicit, Actions, Union, Inter };

    static RelationPtr empty();
    static RelationPtr full();
    static RelationPtr explicit_pairs(std::vector<std::pair<WorldTriple, WorldTriple>> pairs);
    static RelationPtr actions(std::vector<RgAction> acts, const Domains& d, const std::vector<WorldTriple>* universe);
    static RelationPtr union_of(const RelationPtr& a, const RelationPtr& b);
    static RelationPtr inter(const RelationPtr& a, const RelationPtr& b);

    Kind kind() const { return kind_; }
    const std::string& key() const { return key_; }

    bool contains(const WorldTriple& s, const WorldTriple& s2) const;
    // Successors other than s itself.
    std::vector<WorldTriple> successors(const WorldTriple& s, const SharedSpace& space) const;

    const std::vector<RgAction>& action_list() const { return acts_; }

private:
    struct Hash {
        std::size_t operator()(const WorldTriple& w) const noexcept { return WorldHash{}(w); }
    };

    std::vector<WorldTriple> action_successors(const WorldTriple& s) const;

    Kind kind_ = Kind::Empty;
    std::string key_;
    std::vector<std::pair<WorldTriple, WorldTriple>> pairs_;
    std::vector<RgAction> acts_;
    const Domains* domains_ = nullptr;
    const std::vector<WorldTriple>* universe_ = nullptr;
    RelationPtr a_, b_;
    mutable std::mutex mu_;
    mutable std::unordered_map<WorldTriple, std::vector<WorldTriple>, Hash> cache_;
};

// Pairs (s, s') of the denotation of one action, restricted to sources in
// the space.
std::vector<std::pair<WorldTriple, WorldTriple>> denote_action(const RgAction& a, const SharedSpace& space);

bool relation_subset(const Relation& a, const Relation& b, const SharedSpace& space);

using LocalShared = std::pair<WorldTriple, WorldTriple>;

struct RgsepView {
    bool bottom = false;
    std::vector<LocalShared> pred; // sorted (local, shared)
    RelationPtr rely;
    RelationPtr guar;

    bool has(const WorldTriple& l, const WorldTriple& s) const {
        return std::binary_search(pred.begin(), pred.end(), LocalShared{l, s});
    }
};

RgsepView rgsep_bottom();
RgsepView rgsep_view(std::vector<LocalShared> pred, RelationPtr rely, RelationPtr guar);
RgsepView rgsep_unit(const SharedSpace& space);

struct StabilityWitness {
    WorldTriple local, shared, shared_after;
};
std::optional<StabilityWitness> find_instability(const RgsepView& v, const SharedSpace& space);
// Smallest rely-closed superset of the predicate (diagnostics).
RgsepView stabilize(const RgsepView& v, const SharedSpace& space);

RgsepView compose_rgsep(const RgsepView& p, const RgsepView& q, const SharedSpace& space);
// Defined for equal rely and guarantee; ModelError otherwise.
RgsepView disjoin_rgsep(const RgsepView& p, const RgsepView& q);
std::vector<WorldTriple> reify_rgsep(const RgsepView& v);

// Meaning of (pi, R, G) under i. Throws StabilityViolation for unstable
// predicates.
RgsepView eval_rgsep(const Spatial& pi, const Interpretation& i, const RelationPtr& rely, const RelationPtr& guar,
                     const SharedSpace& space);

// Locality of a primitive: a non-faulting run on sigma extends to
// sigma * sigma' unchanged on sigma'. Frames outside the footprint are
// enumerated up to `max_frame_cells` cells.
std::optional<std::string> check_locality(ThreadId t, const PrimCommand& alpha, const Domains& d,
                                          const TransformerTable& table, std::size_t max_frame_cells = 2);

// Frame-free action judgement (both premises).
ActionVerdict check_action_rgsep(ThreadId t, const PrimCommand& alpha, const RgsepView& p, const RgsepView& q,
                                 const LpContext& lp, const SharedSpace& space);
// Action judgement quantified over an explicit list of frames.
ActionVerdict check_action_rgsep_frames(ThreadId t, const PrimCommand& alpha, const RgsepView& p, const RgsepView& q,
                                        const LpContext& lp, const std::vector<RgsepView>& frames,
                                        const SharedSpace& space);

ImplicationVerdict repart_implies_rgsep(const RgsepView& p, const RgsepView& q, const SharedSpace& space);
ImplicationVerdict repart_implies_rgsep_frames(const RgsepView& p, const RgsepView& q,
                                               const std::vector<RgsepView>& frames, const SharedSpace& space);

} // namespace relviews
