#include "criteria.hpp"

#include <functional>

using namespace rvtest;

namespace {

struct Ctx {
    std::unique_ptr<Session> s;
    std::vector<WorldTriple> u, usable;
    std::vector<PrimPtr> prims;
    Rng rng{23};

    const Monoid& m() const { return s->monoid(); }

    std::optional<DcslView> image(const PrimCommand& a, const DcslView& v) const {
        auto ws = post_image(*s, 1, a, v.worlds.items());
        if (!ws) return std::nullopt;
        return dcsl_view(*ws);
    }
    DcslView pre(double density = 0.2) { return random_dcsl(usable, rng, density); }
    DcslView any(double density = 0.1) { return random_dcsl(u, rng, density); }
    const PrimCommand& prim() {
        return *prims[std::uniform_int_distribution<std::size_t>(0, prims.size() - 1)(rng)];
    }
    DcslView sub(const DcslView& v) { return dcsl_view(random_worlds(v.worlds.items(), rng, 0.6)); }
    DcslView widen(const DcslView& v) { return disjoin_dcsl(v, any(0.05)); }
};

struct Cmd {
    CommandPtr c;
    std::vector<PrimPtr> prims;
};

Cmd random_cmd(Ctx& x, bool loops = true) {
    auto pick = [&] { return x.prims[std::uniform_int_distribution<std::size_t>(0, x.prims.size() - 1)(x.rng)]; };
    const PrimPtr a = pick(), b = pick();
    switch (std::uniform_int_distribution<int>(0, loops ? 3 : 2)(x.rng)) {
    case 0: return {cmd::prim(a), {a}};
    case 1: return {cmd::seq(cmd::prim(a), cmd::prim(b)), {a, b}};
    case 2: return {cmd::choice(cmd::prim(a), cmd::prim(b)), {a, b}};
    default: return {cmd::iter(cmd::prim(a)), {a}};
    }
}

void add_view(std::vector<View>& vs, const View& v) {
    for (const auto& w : vs) {
        if (std::get<DcslView>(w) == std::get<DcslView>(v)) return;
    }
    vs.push_back(v);
}

// Views reachable from p by up to three primitive steps of `c`.
std::optional<std::vector<View>> reach(const Ctx& x, const Cmd& c, const DcslView& p) {
    std::vector<View> out{p};
    std::size_t from = 0;
    for (int depth = 0; depth < 3; ++depth) {
        const std::size_t to = out.size();
        for (std::size_t i = from; i < to; ++i) {
            for (const auto& a : c.prims) {
                auto img = x.image(*a, as_dcsl(out[i]));
                if (!img) return std::nullopt;
                add_view(out, *img);
            }
        }
        from = to;
    }
    return out;
}

DcslView join(const std::vector<View>& vs) {
    DcslView out = dcsl_view({});
    for (const auto& v : vs) out = disjoin_dcsl(out, as_dcsl(v));
    return out;
}

std::vector<View> plus(std::vector<View> a, const std::vector<View>& b) {
    for (const auto& v : b) add_view(a, v);
    return a;
}

struct Safe {
    DcslView p, q;
    Cmd c;
    std::vector<View> u;
};

std::optional<Safe> safe_instance(Ctx& x, const Cmd& c, const DcslView& p) {
    auto u = reach(x, c, p);
    if (!u) return std::nullopt;
    const DcslView q = join(*u);
    add_view(*u, q);
    if (!check_safe(x.m(), 1, p, c.c, q, *u)) return std::nullopt;
    return Safe{p, q, c, *u};
}

bool safe(const Ctx& x, const DcslView& p, const CommandPtr& c, const DcslView& q, const std::vector<View>& u) {
    return check_safe(x.m(), 1, p, c, q, u);
}

struct Suite {
    std::string name;
    std::function<std::optional<bool>(Ctx&)> run; // nullopt: premises did not hold
};

std::optional<std::pair<DcslView, DcslView>> action_instance(Ctx& x, const PrimCommand& a, const DcslView& p) {
    auto img = x.image(a, p);
    if (!img) return std::nullopt;
    const DcslView q = disjoin_dcsl(*img, x.any(0.05));
    if (!x.m().check_action(1, a, p, q).ok) return std::nullopt;
    return std::make_pair(p, q);
}

} // namespace

Verdict rvtest::closure_suites() {
    Stopwatch sw;
    Ctx x;
    x.s = micro_session({1, 1, 2, 1, true});
    x.u = enumerate_worlds(x.s->domains());
    x.prims = micro_prims(*x.s);
    for (const auto& w : x.u) {
        if (post_image(*x.s, 1, *x.prims[1], {w})) x.usable.push_back(w);
    }
    const Monoid& m = x.m();

    const std::vector<Suite> suites = {
        {"Locality",
         [&](Ctx& x) -> std::optional<bool> {
             const auto& a = x.prim();
             auto pq = action_instance(x, a, x.pre());
             if (!pq) return std::nullopt;
             const DcslView r = x.any();
             return m.check_action(1, a, compose_dcsl(pq->first, r), compose_dcsl(pq->second, r)).ok;
         }},
        {"Consequence",
         [&](Ctx& x) -> std::optional<bool> {
             const auto& a = x.prim();
             auto pq = action_instance(x, a, x.pre());
             if (!pq) return std::nullopt;
             const DcslView p2 = x.sub(pq->first), q2 = x.widen(pq->second);
             if (!m.repart_implies(p2, pq->first).holds() || !m.repart_implies(pq->second, q2).holds())
                 return std::nullopt;
             return m.check_action(1, a, p2, q2).ok;
         }},
        {"Distributivity",
         [&](Ctx& x) -> std::optional<bool> {
             const auto& a = x.prim();
             auto one = action_instance(x, a, x.pre()), two = action_instance(x, a, x.pre());
             if (!one || !two) return std::nullopt;
             return m.check_action(1, a, disjoin_dcsl(one->first, two->first), disjoin_dcsl(one->second, two->second))
                 .ok;
         }},
        {"Frame",
         [&](Ctx& x) -> std::optional<bool> {
             auto i = safe_instance(x, random_cmd(x), x.pre());
             if (!i) return std::nullopt;
             const DcslView r = x.any();
             std::vector<View> u;
             for (const auto& v : i->u) add_view(u, compose_dcsl(as_dcsl(v), r));
             return safe(x, compose_dcsl(i->p, r), i->c.c, compose_dcsl(i->q, r), u);
         }},
        {"Choice",
         [&](Ctx& x) -> std::optional<bool> {
             const DcslView p = x.pre();
             const Cmd c1 = random_cmd(x), c2 = random_cmd(x);
             auto u1 = reach(x, c1, p), u2 = reach(x, c2, p);
             if (!u1 || !u2) return std::nullopt;
             const DcslView q = join(plus(*u1, *u2));
             add_view(*u1, q);
             add_view(*u2, q);
             if (!safe(x, p, c1.c, q, *u1) || !safe(x, p, c2.c, q, *u2)) return std::nullopt;
             return safe(x, p, cmd::choice(c1.c, c2.c), q, plus(*u1, *u2));
         }},
        {"Iter",
         [&](Ctx& x) -> std::optional<bool> {
             const Cmd c = random_cmd(x, false);
             DcslView p = x.pre();
             for (int k = 0; k < 8; ++k) {
                 auto u = reach(x, c, p);
                 if (!u) return std::nullopt;
                 p = join(*u);
             }
             auto u = reach(x, c, p);
             if (!u || !safe(x, p, c.c, p, *u)) return std::nullopt;
             return safe(x, p, cmd::iter(c.c), p, *u);
         }},
        {"Seq",
         [&](Ctx& x) -> std::optional<bool> {
             auto one = safe_instance(x, random_cmd(x), x.pre());
             if (!one) return std::nullopt;
             auto two = safe_instance(x, random_cmd(x), one->q);
             if (!two) return std::nullopt;
             return safe(x, one->p, cmd::seq(one->c.c, two->c.c), two->q, plus(one->u, two->u));
         }},
        {"Conseq",
         [&](Ctx& x) -> std::optional<bool> {
             auto i = safe_instance(x, random_cmd(x), x.pre());
             if (!i) return std::nullopt;
             const DcslView p2 = x.sub(i->p), q2 = x.widen(i->q);
             if (!m.repart_implies(p2, i->p).holds() || !m.repart_implies(i->q, q2).holds()) return std::nullopt;
             auto u = i->u;
             add_view(u, p2);
             add_view(u, q2);
             return safe(x, p2, i->c.c, q2, u);
         }},
        {"Disj",
         [&](Ctx& x) -> std::optional<bool> {
             const Cmd c = random_cmd(x);
             auto one = safe_instance(x, c, x.pre()), two = safe_instance(x, c, x.pre());
             if (!one || !two) return std::nullopt;
             auto u = plus(one->u, two->u);
             for (const auto& a : one->u) {
                 for (const auto& b : two->u) add_view(u, disjoin_dcsl(as_dcsl(a), as_dcsl(b)));
             }
             return safe(x, disjoin_dcsl(one->p, two->p), c.c, disjoin_dcsl(one->q, two->q), u);
         }},
    };

    const int wanted = 500, attempts = 20000;
    bool pass = true;
    std::string detail;
    for (const auto& suite : suites) {
        int held = 0, violated = 0, tries = 0;
        while (held + violated < wanted && tries < attempts) {
            ++tries;
            auto r = suite.run(x);
            if (!r) continue;
            (*r ? held : violated)++;
        }
        const int n = held + violated;
        if (n < wanted || violated) pass = false;
        if (!detail.empty()) detail += ", ";
        detail += suite.name + " " + std::to_string(n) + "/" + std::to_string(violated);
    }
    return {pass, "instances/violations: " + detail};
}
