#include "relviews/dcsl.hpp"

#include <algorithm>

namespace relviews {

DcslView dcsl_view(std::vector<WorldTriple> ws) { return DcslView{WorldSet(std::move(ws))}; }

DcslView dcsl_unit() { return dcsl_view({WorldTriple{}}); }

DcslView compose_dcsl(const DcslView& p, const DcslView& q) {
    std::vector<WorldTriple> out;
    for (const auto& a : p.worlds.items()) {
        for (const auto& b : q.worlds.items()) {
            if (auto c = compose_worlds(a, b)) out.push_back(*c);
        }
    }
    return dcsl_view(std::move(out));
}

DcslView disjoin_dcsl(const DcslView& p, const DcslView& q) {
    std::vector<WorldTriple> out = p.worlds.items();
    out.insert(out.end(), q.worlds.items().begin(), q.worlds.items().end());
    return dcsl_view(std::move(out));
}

const std::vector<WorldTriple>& reify_dcsl(const DcslView& p) { return p.worlds.items(); }

std::vector<DcslView> frames_dcsl(const std::vector<WorldTriple>& universe) {
    std::vector<DcslView> out{dcsl_unit()};
    for (const auto& w : universe) {
        if (!w.empty()) out.push_back(dcsl_view({w}));
    }
    return out;
}

namespace {
std::string frame_name(const WorldTriple& w, const Domains& d) {
    return w.empty() ? std::string("unit") : "{" + format_world(w, d) + "}";
}
} // namespace

ActionVerdict check_action_dcsl(ThreadId t, const PrimCommand& alpha, const DcslView& p, const DcslView& q,
                                const LpContext& lp, const std::vector<WorldTriple>& universe) {
    const Domains& d = lp.domains();
    std::vector<WorldTriple> frames{WorldTriple{}};
    for (const auto& w : universe) {
        if (!w.empty()) frames.push_back(w);
    }
    for (const auto& w : frames) {
        std::vector<WorldTriple> pre;
        for (const auto& m : p.worlds.items()) {
            if (auto c = compose_worlds(m, w)) pre.push_back(*c);
        }
        if (pre.empty()) continue;
        auto in_post = [&](const WorldTriple& x) {
            return world_contains(x, w) && q.worlds.contains(world_minus(x, w));
        };
        if (auto cex = simulate(t, alpha, pre, in_post, lp, frame_name(w, d))) {
            return ActionVerdict::fails(*cex, cex->fault ? ErrorKind::FaultReachable : ErrorKind::ModelError);
        }
    }
    return ActionVerdict::holds();
}

ActionVerdict check_action_dcsl_frames(ThreadId t, const PrimCommand& alpha, const DcslView& p, const DcslView& q,
                                       const LpContext& lp, const std::vector<DcslView>& frames) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const DcslView pre = compose_dcsl(p, frames[i]);
        const DcslView post = compose_dcsl(q, frames[i]);
        auto in_post = [&](const WorldTriple& x) { return post.worlds.contains(x); };
        if (auto cex = simulate(t, alpha, pre.worlds.items(), in_post, lp, "#" + std::to_string(i))) {
            return ActionVerdict::fails(*cex, cex->fault ? ErrorKind::FaultReachable : ErrorKind::ModelError);
        }
    }
    return ActionVerdict::holds();
}

ImplicationVerdict repart_implies_dcsl(const DcslView& p, const DcslView& q, const Domains& d) {
    // Composition with a fixed frame is cancellative, so every frame reduces
    // to the unit case.
    for (const auto& m : p.worlds.items()) {
        if (!q.worlds.contains(m)) return {Implication::Fails, "frame unit, world " + format_world(m, d)};
    }
    return {Implication::Holds, ""};
}

ImplicationVerdict repart_implies_dcsl_frames(const DcslView& p, const DcslView& q, const std::vector<DcslView>& frames,
                                              const Domains& d) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const DcslView a = compose_dcsl(p, frames[i]);
        const DcslView b = compose_dcsl(q, frames[i]);
        for (const auto& m : a.worlds.items()) {
            if (!b.worlds.contains(m)) {
                return {Implication::Fails, "frame #" + std::to_string(i) + ", world " + format_world(m, d)};
            }
        }
    }
    return {Implication::Holds, ""};
}

} // namespace relviews
