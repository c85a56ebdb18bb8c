#include "relviews/views.hpp"

#include <algorithm>
#include <sstream>

namespace relviews {

LpContext::LpContext(const Domains& d, std::vector<CommandPtr> ops, const TransformerTable& table)
    : d_(d), ops_(std::move(ops)), table_(table) {}

std::size_t LpContext::Hash::operator()(const AbstractConfig& c) const noexcept {
    std::size_t h = HeapHash{}(c.abstract);
    for (int t = 1; t <= static_cast<int>(kMaxThreads); ++t) h = h * 1000003u + c.tokens.get(t).bits;
    return h;
}

std::vector<AbstractConfig> LpContext::lp_step(const AbstractConfig& c) const {
    std::vector<AbstractConfig> out;
    for (int t = 1; t <= d_.threads; ++t) {
        const Token tok = c.tokens.get(t);
        if (!tok.present() || tok.kind() != TokenKind::Todo) continue;
        const auto k = static_cast<std::size_t>(tok.apcom());
        if (k >= ops_.size() || !ops_[k]) continue;
        const Outcome o = run_to_completion(ops_[k], c.abstract, t, d_.modulus, table_);
        TokenMap next = c.tokens;
        next.set(t, Token::done(tok.apcom()));
        for (const auto& s : o.states) out.push_back({s, next});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<AbstractConfig>& LpContext::lp_star(const AbstractConfig& c) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = star_cache_.find(c);
        if (it != star_cache_.end()) return it->second;
    }
    std::vector<AbstractConfig> seen{c};
    std::vector<AbstractConfig> frontier{c};
    while (!frontier.empty()) {
        std::vector<AbstractConfig> next;
        for (const auto& f : frontier) {
            for (auto& s : lp_step(f)) {
                if (std::find(seen.begin(), seen.end(), s) == seen.end()) {
                    seen.push_back(s);
                    next.push_back(s);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(seen.begin(), seen.end());
    std::lock_guard<std::mutex> lock(mu_);
    return star_cache_.emplace(c, std::move(seen)).first->second;
}

bool LpContext::lp_reaches(const AbstractConfig& from, const AbstractConfig& to) const {
    const auto& s = lp_star(from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::string ActionCounterexample::str(const Domains& d) const {
    std::ostringstream os;
    os << "frame " << frame << "; pre " << format_world(pre, d);
    if (fault) {
        os << "; step faults";
    } else {
        os << "; post state " << format_heap(post, d.concrete_locations);
    }
    if (!reason.empty()) os << "; " << reason;
    return os.str();
}

WorldSet::WorldSet(std::vector<WorldTriple> ws) : items_(std::move(ws)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

std::optional<ActionCounterexample> simulate(ThreadId t, const PrimCommand& alpha, const std::vector<WorldTriple>& pre,
                                             const std::function<bool(const WorldTriple&)>& in_post,
                                             const LpContext& lp, const std::string& frame) {
    const Domains& d = lp.domains();
    for (const auto& m : pre) {
        const Outcome o = lp.table().apply(alpha, m.concrete, t, d.modulus);
        if (o.fault) {
            return ActionCounterexample{frame, m, Heap{}, true, alpha.str() + " may fault"};
        }
        const auto& reach = lp.lp_star({m.abstract, m.tokens});
        for (const auto& s : o.states) {
            const bool ok = std::any_of(reach.begin(), reach.end(), [&](const AbstractConfig& a) {
                return in_post(WorldTriple{s, a.abstract, a.tokens});
            });
            if (!ok) return ActionCounterexample{frame, m, s, false, "no LP* outcome satisfies the postcondition"};
        }
    }
    return std::nullopt;
}

} // namespace relviews
