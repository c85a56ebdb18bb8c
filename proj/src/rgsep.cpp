#include "relviews/rgsep.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace relviews {

RelationPtr Relation::empty() {
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Empty;
    r->key_ = "empty";
    return r;
}

RelationPtr Relation::full() {
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Full;
    r->key_ = "full";
    return r;
}

RelationPtr Relation::explicit_pairs(std::vector<std::pair<WorldTriple, WorldTriple>> pairs) {
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Explicit;
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.first == p.second; }),
                pairs.end());
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    r->pairs_ = std::move(pairs);
    r->key_ = "explicit:";
    for (const auto& [a, b] : r->pairs_) {
        r->key_ += std::to_string(WorldHash{}(a)) + ">" + std::to_string(WorldHash{}(b)) + ";";
    }
    return r;
}

RelationPtr Relation::actions(std::vector<RgAction> acts, const Domains& d, const std::vector<WorldTriple>* universe) {
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Actions;
    r->domains_ = &d;
    r->universe_ = universe;
    r->key_ = "actions:";
    for (const auto& a : acts) r->key_ += a.name + a.fixed.str() + ";";
    r->acts_ = std::move(acts);
    return r;
}

RelationPtr Relation::union_of(const RelationPtr& a, const RelationPtr& b) {
    if (a->kind_ == Kind::Empty) return b;
    if (b->kind_ == Kind::Empty) return a;
    if (a->kind_ == Kind::Full || b->kind_ == Kind::Full) return full();
    if (a->key_ == b->key_) return a;
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Union;
    r->a_ = a;
    r->b_ = b;
    r->key_ = "(" + std::min(a->key_, b->key_) + "|" + std::max(a->key_, b->key_) + ")";
    return r;
}

RelationPtr Relation::inter(const RelationPtr& a, const RelationPtr& b) {
    if (a->kind_ == Kind::Full) return b;
    if (b->kind_ == Kind::Full) return a;
    if (a->kind_ == Kind::Empty || b->kind_ == Kind::Empty) return empty();
    if (a->key_ == b->key_) return a;
    auto r = std::make_shared<Relation>();
    r->kind_ = Kind::Inter;
    r->a_ = a;
    r->b_ = b;
    r->key_ = "(" + std::min(a->key_, b->key_) + "&" + std::max(a->key_, b->key_) + ")";
    return r;
}

std::vector<WorldTriple> Relation::action_successors(const WorldTriple& s) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
    }
    SpatialContext ctx{domains_, universe_};
    std::vector<WorldTriple> out;
    for (const auto& act : acts_) {
        std::set<std::string> fv;
        free_lvars(act.pre, fv);
        free_lvars(act.post, fv);
        for (const auto& [k, v] : act.fixed.bindings()) fv.erase(k);
        for (const auto& i : enumerate_interpretations(act.fixed, fv, domains_->values)) {
            const auto pre = fragments(act.pre, s, i, ctx);
            if (pre.empty()) continue;
            const auto post = generate(act.post, i, ctx, GenerateMode::Exact);
            for (const auto& f : pre) {
                const WorldTriple rest = world_minus(s, f);
                for (const auto& g : post) {
                    if (auto n = compose_worlds(rest, g); n && *n != s) out.push_back(*n);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(s, out);
    return out;
}

bool Relation::contains(const WorldTriple& s, const WorldTriple& s2) const {
    if (s == s2) return true;
    switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Explicit: return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(s, s2));
    case Kind::Actions: {
        const auto succ = action_successors(s);
        return std::binary_search(succ.begin(), succ.end(), s2);
    }
    case Kind::Union: return a_->contains(s, s2) || b_->contains(s, s2);
    case Kind::Inter: return a_->contains(s, s2) && b_->contains(s, s2);
    }
    return false;
}

std::vector<WorldTriple> Relation::successors(const WorldTriple& s, const SharedSpace& space) const {
    std::vector<WorldTriple> out;
    switch (kind_) {
    case Kind::Empty: break;
    case Kind::Full:
        for (const auto& x : space.states) {
            if (x != s) out.push_back(x);
        }
        break;
    case Kind::Explicit: {
        auto lo = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(s, WorldTriple{}),
                                   [](const auto& p, const auto& q) { return p.first < q.first; });
        for (auto it = lo; it != pairs_.end() && it->first == s; ++it) out.push_back(it->second);
        break;
    }
    case Kind::Actions: out = action_successors(s); break;
    case Kind::Union: {
        out = a_->successors(s, space);
        auto more = b_->successors(s, space);
        out.insert(out.end(), more.begin(), more.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
    }
    case Kind::Inter:
        for (const auto& x : a_->successors(s, space)) {
            if (b_->contains(s, x)) out.push_back(x);
        }
        break;
    }
    return out;
}

std::vector<std::pair<WorldTriple, WorldTriple>> denote_action(const RgAction& a, const SharedSpace& space) {
    auto rel = Relation::actions({a}, *space.domains, space.universe);
    std::vector<std::pair<WorldTriple, WorldTriple>> out;
    for (const auto& s : space.states) {
        SpatialContext ctx{space.domains, space.universe};
        // Identity pairs belong to the denotation only when a fragment matches.
        std::set<std::string> fv;
        free_lvars(a.pre, fv);
        free_lvars(a.post, fv);
        for (const auto& [k, v] : a.fixed.bindings()) fv.erase(k);
        bool self = false;
        for (const auto& i : enumerate_interpretations(a.fixed, fv, space.domains->values)) {
            for (const auto& f : fragments(a.pre, s, i, ctx)) {
                const auto post = generate(a.post, i, ctx, GenerateMode::Exact);
                if (std::find(post.begin(), post.end(), f) != post.end()) self = true;
            }
            if (self) break;
        }
        if (self) out.emplace_back(s, s);
        for (const auto& n : rel->successors(s, space)) out.emplace_back(s, n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool relation_subset(const Relation& a, const Relation& b, const SharedSpace& space) {
    if (b.kind() == Relation::Kind::Full || a.kind() == Relation::Kind::Empty) return true;
    if (a.key() == b.key()) return true;
    for (const auto& s : space.states) {
        for (const auto& n : a.successors(s, space)) {
            if (!b.contains(s, n)) return false;
        }
    }
    return true;
}

RgsepView rgsep_bottom() {
    RgsepView v;
    v.bottom = true;
    v.rely = Relation::full();
    v.guar = Relation::empty();
    return v;
}

RgsepView rgsep_view(std::vector<LocalShared> pred, RelationPtr rely, RelationPtr guar) {
    std::sort(pred.begin(), pred.end());
    pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
    RgsepView v;
    v.pred = std::move(pred);
    v.rely = std::move(rely);
    v.guar = std::move(guar);
    return v;
}

RgsepView rgsep_unit(const SharedSpace& space) {
    std::vector<LocalShared> pred;
    for (const auto& s : space.states) pred.emplace_back(WorldTriple{}, s);
    return rgsep_view(std::move(pred), Relation::full(), Relation::empty());
}

std::optional<StabilityWitness> find_instability(const RgsepView& v, const SharedSpace& space) {
    if (v.bottom) return std::nullopt;
    std::map<WorldTriple, std::vector<WorldTriple>> by_shared;
    for (const auto& [l, s] : v.pred) by_shared[s].push_back(l);
    for (auto& [s, ls] : by_shared) std::sort(ls.begin(), ls.end());
    for (const auto& [s, ls] : by_shared) {
        for (const auto& n : v.rely->successors(s, space)) {
            auto it = by_shared.find(n);
            for (const auto& l : ls) {
                if (it == by_shared.end() || !std::binary_search(it->second.begin(), it->second.end(), l)) {
                    return StabilityWitness{l, s, n};
                }
            }
        }
    }
    return std::nullopt;
}

RgsepView stabilize(const RgsepView& v, const SharedSpace& space) {
    if (v.bottom) return v;
    std::set<LocalShared> seen(v.pred.begin(), v.pred.end());
    std::vector<LocalShared> work(v.pred.begin(), v.pred.end());
    while (!work.empty()) {
        auto [l, s] = work.back();
        work.pop_back();
        for (const auto& n : v.rely->successors(s, space)) {
            if (seen.insert({l, n}).second) work.emplace_back(l, n);
        }
    }
    return rgsep_view({seen.begin(), seen.end()}, v.rely, v.guar);
}

RgsepView compose_rgsep(const RgsepView& p, const RgsepView& q, const SharedSpace& space) {
    if (p.bottom || q.bottom) return rgsep_bottom();
    if (!relation_subset(*p.guar, *q.rely, space) || !relation_subset(*q.guar, *p.rely, space)) return rgsep_bottom();
    std::map<WorldTriple, std::vector<WorldTriple>> by_shared;
    for (const auto& [l, s] : q.pred) by_shared[s].push_back(l);
    std::vector<LocalShared> pred;
    for (const auto& [l, s] : p.pred) {
        auto it = by_shared.find(s);
        if (it == by_shared.end()) continue;
        for (const auto& l2 : it->second) {
            if (auto c = compose_worlds(l, l2)) pred.emplace_back(*c, s);
        }
    }
    return rgsep_view(std::move(pred), Relation::inter(p.rely, q.rely), Relation::union_of(p.guar, q.guar));
}

RgsepView disjoin_rgsep(const RgsepView& p, const RgsepView& q) {
    if (p.bottom) return q;
    if (q.bottom) return p;
    if (p.rely->key() != q.rely->key() || p.guar->key() != q.guar->key()) {
        throw Error(ErrorKind::ModelError, "disjunction of views with different rely or guarantee");
    }
    std::vector<LocalShared> pred = p.pred;
    pred.insert(pred.end(), q.pred.begin(), q.pred.end());
    return rgsep_view(std::move(pred), p.rely, p.guar);
}

std::vector<WorldTriple> reify_rgsep(const RgsepView& v) {
    std::vector<WorldTriple> out;
    if (v.bottom) return out;
    for (const auto& [l, s] : v.pred) {
        if (auto c = compose_worlds(l, s)) out.push_back(*c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// A star of box-free conjuncts and boxes under a fixed interpretation.
struct Case {
    Interpretation interp;
    std::vector<Spatial> locals;
    std::vector<Spatial> boxes;
};

constexpr std::size_t kMaxCases = 4096;

// Splits pi into cases by distributing top-level disjunctions and lifting
// existentials whose body holds a box. False when the shape is not covered.
bool split_cases(std::vector<Spatial> todo, const Interpretation& i, const Domains& d, std::vector<Case>& out,
                 Case acc = {}) {
    while (!todo.empty()) {
        Spatial p = std::move(todo.back());
        todo.pop_back();
        using K = Spatial::Kind;
        if (!contains_box(p)) {
            acc.locals.push_back(std::move(p));
            continue;
        }
        switch (p.kind) {
        case K::Box: acc.boxes.push_back(std::move(p)); break;
        case K::Star:
            todo.push_back(p.kids[0]);
            todo.push_back(p.kids[1]);
            break;
        case K::Or:
            for (const auto& k : p.kids) {
                auto rest = todo;
                rest.push_back(k);
                if (!split_cases(std::move(rest), i, d, out, acc)) return false;
            }
            return true;
        case K::Exists: {
            std::set<std::string> elsewhere;
            for (const auto& q : todo) free_lvars(q, elsewhere);
            for (const auto& q : acc.locals) free_lvars(q, elsewhere);
            for (const auto& q : acc.boxes) free_lvars(q, elsewhere);
            if (elsewhere.count(p.name)) return false;
            for (Value x : d.values) {
                auto rest = todo;
                rest.push_back(substitute(p.kids[0], Interpretation{}.with(p.name, x)));
                if (!split_cases(std::move(rest), i, d, out, acc)) return false;
            }
            return true;
        }
        default: return false;
        }
    }
    if (out.size() >= kMaxCases) return false;
    acc.interp = i;
    out.push_back(std::move(acc));
    return true;
}

std::shared_ptr<const std::vector<WorldTriple>> box_states(const Spatial& box, const Interpretation& i,
                                                          const SharedSpace& space) {
    std::set<std::string> fv;
    free_lvars(box, fv);
    Interpretation relevant;
    for (const auto& v : fv) {
        if (auto x = i.lookup(v)) relevant.bind(v, *x);
    }
    const std::string key = relevant.str() + "|" + box.str();
    {
        std::lock_guard<std::mutex> lock(space.boxes->mu);
        auto it = space.boxes->sets.find(key);
        if (it != space.boxes->sets.end()) return it->second;
    }
    SpatialContext ctx{space.domains, space.universe};
    auto out = std::make_shared<std::vector<WorldTriple>>();
    for (const auto& s : space.states) {
        if (satisfies(WorldTriple{}, s, relevant, box, ctx)) out->push_back(s);
    }
    std::lock_guard<std::mutex> lock(space.boxes->mu);
    return space.boxes->sets.emplace(key, std::move(out)).first->second;
}

} // namespace

RgsepView eval_rgsep(const Spatial& pi, const Interpretation& i, const RelationPtr& rely, const RelationPtr& guar,
                     const SharedSpace& space) {
    SpatialContext ctx{space.domains, space.universe};
    std::vector<LocalShared> pred;
    std::vector<Case> cases;
    if (split_cases({pi}, i, *space.domains, cases)) {
        for (const auto& c : cases) {
            const Spatial local = sp::star(c.locals);
            std::vector<WorldTriple> locals;
            for (const auto& l : generate(local, c.interp, ctx, GenerateMode::LocalOverApprox)) {
                if (satisfies(l, WorldTriple{}, c.interp, local, ctx)) locals.push_back(l);
            }
            if (locals.empty()) continue;
            std::vector<WorldTriple> shared = space.states;
            for (const auto& b : c.boxes) {
                const auto sat = box_states(b, c.interp, space);
                std::vector<WorldTriple> keep;
                std::set_intersection(shared.begin(), shared.end(), sat->begin(), sat->end(), std::back_inserter(keep));
                shared = std::move(keep);
            }
            for (const auto& l : locals) {
                for (const auto& s : shared) pred.emplace_back(l, s);
            }
        }
    } else {
        const auto locals = generate(pi, i, ctx, GenerateMode::LocalOverApprox);
        for (const auto& s : space.states) {
            for (const auto& l : locals) {
                if (satisfies(l, s, i, pi, ctx)) pred.emplace_back(l, s);
            }
        }
    }
    RgsepView v = rgsep_view(std::move(pred), rely, guar);
    if (auto w = find_instability(v, space)) {
        const Domains& d = *space.domains;
        throw Error(ErrorKind::StabilityViolation, "assertion " + pi.str() + " under " + i.str() +
                                                       " is not stable: local " + format_world(w->local, d) +
                                                       ", shared " + format_world(w->shared, d) + " -> " +
                                                       format_world(w->shared_after, d));
    }
    return v;
}

namespace {

void collect_locs(const Expr& e, std::vector<LocRef>& out) {
    if (e.kind == ExprKind::Read) {
        out.push_back(e.loc);
        if (e.loc.index) collect_locs(*e.loc.index, out);
    }
    for (const auto& k : e.kids) collect_locs(k, out);
}

void collect_locs(const PrimCommand& p, std::vector<LocRef>& out) {
    for (const auto& l : p.locs) {
        out.push_back(l);
        if (l.index) collect_locs(*l.index, out);
    }
    for (const auto& a : p.args) collect_locs(a, out);
    if (p.body) {
        for (const auto& q : primitives(p.body)) collect_locs(*q, out);
    }
}

std::set<std::size_t> footprint(const PrimCommand& p, ThreadId t, Value modulus) {
    std::vector<LocRef> locs;
    collect_locs(p, locs);
    std::set<std::size_t> out;
    const Heap none;
    const EvalEnv env{&none, nullptr, t, modulus};
    for (const auto& l : locs) {
        if (!l.bound) continue;
        if (!l.index) {
            if (l.plain_slot >= 0) out.insert(static_cast<std::size_t>(l.plain_slot));
            continue;
        }
        // Indices that read no memory (constants, mytid()) name one cell.
        if (auto slot = resolve_location(l, env)) {
            out.insert(*slot);
            continue;
        }
        for (int s : l.indexed_slots) {
            if (s >= 0) out.insert(static_cast<std::size_t>(s));
        }
    }
    return out;
}

// Partial heaps over `slots` with at most `max_cells` defined cells.
std::vector<Heap> partial_heaps(const std::vector<std::size_t>& slots, const std::vector<Value>& values,
                                std::size_t max_cells) {
    std::vector<Heap> out{Heap{}};
    for (std::size_t slot : slots) {
        std::vector<Heap> next;
        for (const auto& h : out) {
            next.push_back(h);
            if (h.size() >= max_cells) continue;
            for (Value v : values) {
                Heap g = h;
                g.set(slot, v);
                next.push_back(g);
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

std::optional<std::string> check_locality(ThreadId t, const PrimCommand& alpha, const Domains& d,
                                          const TransformerTable& table, std::size_t max_frame_cells) {
    const auto fp = footprint(alpha, t, d.modulus);
    std::vector<std::size_t> inside(fp.begin(), fp.end());
    std::vector<std::size_t> outside;
    for (std::size_t s = 0; s < d.concrete_locations.size(); ++s) {
        if (!fp.count(s)) outside.push_back(s);
    }
    const auto small = partial_heaps(inside, d.values, inside.size());
    const auto frames = partial_heaps(outside, d.values, max_frame_cells);
    // Frames may also overlap the footprint.
    std::vector<Heap> all_frames = frames;
    for (const auto& f : small) all_frames.push_back(f);
    for (const auto& sigma : small) {
        const Outcome base = table.apply(alpha, sigma, t, d.modulus);
        if (base.fault) continue;
        for (const auto& frame : all_frames) {
            auto big = compose_heaps(sigma, frame);
            if (!big) continue;
            const Outcome o = table.apply(alpha, *big, t, d.modulus);
            std::vector<Heap> want;
            for (const auto& s : base.states) {
                if (auto c = compose_heaps(s, frame)) want.push_back(*c);
            }
            std::vector<Heap> got = o.states;
            std::sort(want.begin(), want.end());
            want.erase(std::unique(want.begin(), want.end()), want.end());
            std::sort(got.begin(), got.end());
            got.erase(std::unique(got.begin(), got.end()), got.end());
            if (o.fault || got != want) {
                return alpha.str() + " is not local: from " + format_heap(sigma, d.concrete_locations) +
                       " with frame " + format_heap(frame, d.concrete_locations);
            }
        }
    }
    return std::nullopt;
}

namespace {

std::mutex locality_mu;
std::map<std::string, std::optional<std::string>> locality_cache;

std::optional<std::string> cached_locality(ThreadId t, const PrimCommand& alpha, const Domains& d,
                                           const TransformerTable& table) {
    std::string key = std::to_string(t) + "/" + std::to_string(d.modulus) + "/";
    for (const auto& l : d.concrete_locations) key += l + ",";
    key += "/";
    for (Value v : d.values) key += std::to_string(v) + ",";
    key += "/" + alpha.str();
    {
        std::lock_guard<std::mutex> lock(locality_mu);
        auto it = locality_cache.find(key);
        if (it != locality_cache.end()) return it->second;
    }
    auto r = check_locality(t, alpha, d, table);
    std::lock_guard<std::mutex> lock(locality_mu);
    locality_cache[key] = r;
    return r;
}

} // namespace

ActionVerdict check_action_rgsep(ThreadId t, const PrimCommand& alpha, const RgsepView& p, const RgsepView& q,
                                 const LpContext& lp, const SharedSpace&) {
    const Domains& d = lp.domains();
    if (p.bottom) return ActionVerdict::holds();
    if (auto bad = cached_locality(t, alpha, d, lp.table())) {
        ActionCounterexample c;
        c.frame = "locality";
        c.reason = *bad;
        return ActionVerdict::fails(c, ErrorKind::LocalityViolation);
    }
    std::map<Heap, std::vector<const LocalShared*>> post_by_heap;
    if (!q.bottom) {
        for (const auto& ls : q.pred) {
            if (auto h = compose_heaps(ls.first.concrete, ls.second.concrete)) post_by_heap[*h].push_back(&ls);
        }
    }
    for (const auto& [l, s] : p.pred) {
        auto joined = compose_worlds(l, s);
        if (!joined) continue;
        const Outcome o = lp.table().apply(alpha, joined->concrete, t, d.modulus);
        if (o.fault) {
            return ActionVerdict::fails({"none", *joined, Heap{}, true, alpha.str() + " may fault"},
                                        ErrorKind::FaultReachable);
        }
        const AbstractConfig from{joined->abstract, joined->tokens};
        for (const auto& sigma : o.states) {
            bool ok = false;
            auto it = post_by_heap.find(sigma);
            if (it != post_by_heap.end()) {
                for (const LocalShared* ls : it->second) {
                    auto after = compose_worlds(ls->first, ls->second);
                    if (!after) continue;
                    if (!p.guar->contains(s, ls->second)) continue;
                    if (lp.lp_reaches(from, {after->abstract, after->tokens})) {
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) {
                return ActionVerdict::fails({"none", *joined, sigma, false,
                                             "no post pair within the guarantee and LP*; local " +
                                                 format_world(l, d) + ", shared " + format_world(s, d)});
            }
        }
    }
    return ActionVerdict::holds();
}

ActionVerdict check_action_rgsep_frames(ThreadId t, const PrimCommand& alpha, const RgsepView& p, const RgsepView& q,
                                        const LpContext& lp, const std::vector<RgsepView>& frames,
                                        const SharedSpace& space) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto pre = reify_rgsep(compose_rgsep(p, frames[i], space));
        const WorldSet post(reify_rgsep(compose_rgsep(q, frames[i], space)));
        auto in_post = [&](const WorldTriple& x) { return post.contains(x); };
        if (auto cex = simulate(t, alpha, pre, in_post, lp, "#" + std::to_string(i))) {
            return ActionVerdict::fails(*cex, cex->fault ? ErrorKind::FaultReachable : ErrorKind::ModelError);
        }
    }
    return ActionVerdict::holds();
}

ImplicationVerdict repart_implies_rgsep(const RgsepView& p, const RgsepView& q, const SharedSpace& space) {
    if (p.bottom) return {Implication::Holds, ""};
    const Domains& d = *space.domains;
    const WorldSet rq(reify_rgsep(q));
    for (const auto& w : reify_rgsep(p)) {
        if (!rq.contains(w)) return {Implication::Fails, "frame unit, world " + format_world(w, d)};
    }
    if (q.bottom) return {Implication::NotEstablished, "target view is inconsistent"};
    const bool pred_ok = std::includes(q.pred.begin(), q.pred.end(), p.pred.begin(), p.pred.end());
    if (pred_ok && relation_subset(*p.rely, *q.rely, space) && relation_subset(*q.guar, *p.guar, space)) {
        return {Implication::Holds, ""};
    }
    std::string why = !pred_ok ? "predicate not included" : "rely/guarantee not comparable";
    for (const auto& ls : p.pred) {
        if (!q.has(ls.first, ls.second)) {
            why += "; local " + format_world(ls.first, d) + ", shared " + format_world(ls.second, d);
            break;
        }
    }
    return {Implication::NotEstablished, why};
}

ImplicationVerdict repart_implies_rgsep_frames(const RgsepView& p, const RgsepView& q,
                                               const std::vector<RgsepView>& frames, const SharedSpace& space) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const WorldSet b(reify_rgsep(compose_rgsep(q, frames[i], space)));
        for (const auto& w : reify_rgsep(compose_rgsep(p, frames[i], space))) {
            if (!b.contains(w)) {
                return {Implication::Fails, "frame #" + std::to_string(i) + ", world " + format_world(w, *space.domains)};
            }
        }
    }
    return {Implication::Holds, ""};
}

} // namespace relviews
