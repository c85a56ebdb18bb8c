#include "criteria.hpp"

using namespace rvtest;

namespace {

struct LawCount {
    std::size_t checks = 0;
    std::vector<std::string> violations;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && violations.size() < 5) violations.push_back(what);
        else if (!ok) violations.push_back({});
    }
};

std::vector<DcslView> small_views(const std::vector<WorldTriple>& u, std::size_t max) {
    std::vector<DcslView> out{dcsl_view({})};
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.push_back(dcsl_view({u[i]}));
        if (max < 2) continue;
        for (std::size_t j = i + 1; j < u.size(); ++j) out.push_back(dcsl_view({u[i], u[j]}));
    }
    return out;
}

std::vector<WorldTriple> set_union(const DcslView& p, const DcslView& q) {
    std::vector<WorldTriple> all = p.worlds.items();
    all.insert(all.end(), q.worlds.items().begin(), q.worlds.items().end());
    return sorted(all);
}

void pair_laws(LawCount& c, const DcslView& p, const DcslView& q) {
    const DcslView unit = dcsl_unit();
    c.expect(compose_dcsl(p, q) == compose_dcsl(q, p), "p*q = q*p");
    c.expect(compose_dcsl(p, unit) == p, "p*u = p");
    c.expect(reify_dcsl(disjoin_dcsl(p, q)) == set_union(p, q), "reify(p\\/q) = reify p U reify q");
}

void triple_laws(LawCount& c, const DcslView& p, const DcslView& q, const DcslView& r) {
    c.expect(compose_dcsl(compose_dcsl(p, q), r) == compose_dcsl(p, compose_dcsl(q, r)), "(p*q)*r = p*(q*r)");
    c.expect(compose_dcsl(disjoin_dcsl(p, q), r) == disjoin_dcsl(compose_dcsl(p, r), compose_dcsl(q, r)),
             "(p\\/q)*r = p*r \\/ q*r");
}

} // namespace

Verdict rvtest::monoid_laws() {
    Stopwatch sw;
    const std::vector<Micro> domains = {
        {1, 0, 2, 1, true},
        {1, 1, 2, 1, true},
        {2, 0, 2, 1, false},
        {2, 0, 1, 2, true},
        {1, 1, 1, 2, true},
    };
    LawCount c;
    Rng rng(7);
    std::size_t largest = 0;
    for (const auto& m : domains) {
        auto s = micro_session(m);
        const auto u = enumerate_worlds(s->domains());
        largest = std::max(largest, u.size());
        const auto pairs = small_views(u, 2);
        for (const auto& p : pairs) {
            for (const auto& q : pairs) pair_laws(c, p, q);
        }
        const auto singles = small_views(u, 1);
        for (const auto& p : singles) {
            for (const auto& q : singles) {
                for (const auto& r : singles) triple_laws(c, p, q, r);
            }
        }
        for (int i = 0; i < 3000; ++i) {
            const double d = 3.0 / static_cast<double>(u.size());
            const auto p = random_dcsl(u, rng, d), q = random_dcsl(u, rng, d), r = random_dcsl(u, rng, d);
            pair_laws(c, p, q);
            triple_laws(c, p, q, r);
        }
    }
    const double t = sw.seconds();
    std::string detail = std::to_string(domains.size()) + " domains up to " + std::to_string(largest) +
                         " worlds, " + std::to_string(c.checks) + " law instances, " +
                         std::to_string(c.violations.size()) + " violations";
    if (!c.violations.empty()) detail += ", first: " + c.violations.front();
    return {c.violations.empty() && t < 30.0, detail};
}

Verdict rvtest::frame_reduction() {
    Stopwatch sw;
    auto s = micro_session({1, 0, 2, 1, true});
    const auto& d = s->domains();
    const auto u = enumerate_worlds(d);
    std::vector<DcslView> all_frames;
    for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
        std::vector<WorldTriple> ws;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (mask >> i & 1) ws.push_back(u[i]);
        }
        all_frames.push_back(dcsl_view(ws));
    }
    const auto prims = micro_prims(*s);
    Rng rng(11);
    std::uniform_int_distribution<std::size_t> pick_prim(0, prims.size() - 1);
    std::bernoulli_distribution coin(0.5);

    const int samples = 1200;
    int disagree = 0, holds = 0, implied = 0;
    std::string first;
    for (int i = 0; i < samples; ++i) {
        const auto& alpha = *prims[pick_prim(rng)];
        const DcslView p = random_dcsl(u, rng, 0.25);
        DcslView q = random_dcsl(u, rng, 0.25);
        if (coin(rng)) {
            if (auto img = post_image(*s, 1, alpha, p.worlds.items())) {
                auto ws = *img;
                ws.insert(ws.end(), q.worlds.items().begin(), q.worlds.items().end());
                q = dcsl_view(ws);
            }
        }
        const bool reduced = check_action_dcsl(1, alpha, p, q, s->lp(), u).ok;
        const bool full = check_action_dcsl_frames(1, alpha, p, q, s->lp(), all_frames).ok;
        holds += reduced;
        if (reduced != full) {
            ++disagree;
            if (first.empty()) first = "check_action on " + alpha.str();
        }

        DcslView a = random_dcsl(u, rng, 0.25), b = random_dcsl(u, rng, 0.25);
        if (coin(rng)) b = disjoin_dcsl(a, b);
        const bool r1 = repart_implies_dcsl(a, b, d).holds();
        const bool r2 = repart_implies_dcsl_frames(a, b, all_frames, d).holds();
        implied += r1;
        if (r1 != r2) {
            ++disagree;
            if (first.empty()) first = "repart_implies";
        }
    }
    const double t = sw.seconds();
    std::string detail = std::to_string(samples) + " action triples (" + std::to_string(holds) + " hold) and " +
                         std::to_string(samples) + " implication pairs (" + std::to_string(implied) +
                         " hold) against all " + std::to_string(all_frames.size()) + " frames, " +
                         std::to_string(disagree) + " disagreements";
    if (!first.empty()) detail += ", first: " + first;
    return {disagree == 0 && t < 300.0, detail};
}
