#include "criteria.hpp"

using namespace rvtest;

namespace {

RelationPtr random_relation(const std::vector<WorldTriple>& states, Rng& rng) {
    std::bernoulli_distribution pick(0.3);
    std::vector<std::pair<WorldTriple, WorldTriple>> pairs;
    for (const auto& a : states) {
        for (const auto& b : states) {
            if (a != b && pick(rng)) pairs.emplace_back(a, b);
        }
    }
    return Relation::explicit_pairs(pairs);
}

// Post-state splits of every run of alpha from p whose shared step is a
// guarantee step.
std::vector<LocalShared> post_pairs(const Session& s, const PrimCommand& alpha, const RgsepView& p,
                                    const SharedSpace& space, Rng& rng) {
    std::bernoulli_distribution keep(0.8);
    std::vector<LocalShared> out;
    for (const auto& [l, sh] : p.pred) {
        auto w = compose_worlds(l, sh);
        if (!w) continue;
        auto img = post_image(s, 1, alpha, {*w});
        if (!img) continue;
        for (const auto& w2 : *img) {
            for (const auto& s2 : space.states) {
                if (!world_contains(w2, s2) || !p.guar->contains(sh, s2)) continue;
                if (keep(rng)) out.emplace_back(world_minus(w2, s2), s2);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool stable_under(const std::vector<LocalShared>& pred, const Relation& r, const SharedSpace& space) {
    for (const auto& [l, sh] : pred) {
        for (const auto& s2 : r.successors(sh, space)) {
            if (!std::binary_search(pred.begin(), pred.end(), LocalShared{l, s2})) return false;
        }
    }
    return true;
}

} // namespace

Verdict rvtest::rgsep_frame_bridge() {
    Stopwatch sw;
    auto s = micro_session({1, 0, 2, 1, true});
    const auto& d = s->domains();
    const auto worlds = enumerate_worlds(d);
    SharedSpace space;
    space.domains = &d;
    for (const auto& w : worlds) {
        if (w.abstract.empty() && w.tokens.empty()) space.states.push_back(w);
    }
    std::vector<WorldTriple> holders;
    for (const auto& w : worlds) {
        if (!w.tokens.empty()) holders.push_back(w);
    }
    const auto prims = micro_prims(*s);
    Rng rng(31);
    std::uniform_int_distribution<std::size_t> pick_prim(0, prims.size() - 1);
    std::bernoulli_distribution pick(0.2);

    const int wanted = 300;
    int tested = 0, violations = 0, premise_false = 0, too_large = 0;
    std::size_t frames_total = 0;
    std::string first;
    for (int attempt = 0; attempt < 20000 && tested < wanted; ++attempt) {
        const auto& alpha = *prims[pick_prim(rng)];
        const RelationPtr rely = random_relation(space.states, rng), guar = random_relation(space.states, rng);
        std::vector<LocalShared> pred;
        for (const auto& l : holders) {
            for (const auto& sh : space.states) {
                if (pick(rng)) pred.emplace_back(l, sh);
            }
        }
        const RgsepView p = stabilize(rgsep_view(pred, rely, guar), space);
        if (p.pred.empty()) continue;
        const RgsepView q = stabilize(rgsep_view(post_pairs(*s, alpha, p, space, rng), rely, guar), space);
        if (!check_action_rgsep(1, alpha, p, q, s->lp(), space).ok) {
            ++premise_false;
            continue;
        }

        std::vector<WorldTriple> locals;
        for (const auto& w : worlds) {
            for (const auto& lp : p.pred) {
                if (compose_worlds(lp.first, w)) {
                    locals.push_back(w);
                    break;
                }
            }
        }
        std::vector<LocalShared> cells;
        for (const auto& l : locals) {
            for (const auto& sh : space.states) cells.emplace_back(l, sh);
        }
        if (cells.size() > 12) {
            ++too_large;
            continue;
        }
        std::vector<RgsepView> frames;
        for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
            std::vector<LocalShared> fp;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (mask >> i & 1) fp.push_back(cells[i]);
            }
            std::sort(fp.begin(), fp.end());
            if (stable_under(fp, *p.guar, space)) frames.push_back(rgsep_view(fp, p.guar, Relation::empty()));
        }
        frames_total += frames.size();
        ++tested;
        if (!check_action_rgsep_frames(1, alpha, p, q, s->lp(), frames, space).ok) {
            ++violations;
            if (first.empty()) first = alpha.str();
        }
    }
    const double t = sw.seconds();
    std::string detail = std::to_string(tested) + " accepted judgements checked against " +
                         std::to_string(frames_total) + " stable frames, " + std::to_string(violations) +
                         " violations (" + std::to_string(premise_false) + " rejected, " + std::to_string(too_large) +
                         " skipped as too large)";
    if (!first.empty()) detail += ", first on " + first;
    return {tested >= wanted && violations == 0 && t < 300.0, detail};
}
