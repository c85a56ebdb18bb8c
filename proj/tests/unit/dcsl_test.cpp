#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

namespace {
WorldTriple world(const Domains& d, std::optional<Value> x, Token tok = Token::none()) {
    WorldTriple w;
    if (x) w.concrete.set(*d.concrete_index("x"), *x);
    w.tokens.set(1, tok);
    return w;
}
} // namespace

TEST_CASE("dcsl composition and disjunction") {
    auto s = micro_session({1, 0, 2, 1, true});
    const auto& d = s->domains();
    const DcslView p = dcsl_view({world(d, 0), world(d, 1)});
    const DcslView tok = dcsl_view({world(d, std::nullopt, Token::todo(0))});
    CHECK(reify_dcsl(compose_dcsl(p, tok)).size() == 2);
    CHECK(reify_dcsl(compose_dcsl(p, p)).empty());
    CHECK(compose_dcsl(p, dcsl_unit()) == p);
    CHECK(reify_dcsl(disjoin_dcsl(p, tok)).size() == 3);
    CHECK(frames_dcsl(enumerate_worlds(d)).size() == 9);
}

TEST_CASE("dcsl action judgement") {
    auto s = micro_session({1, 1, 2, 1, true});
    const auto& d = s->domains();
    const auto u = enumerate_worlds(d);
    const auto set1 = prim_of(*s, {{"assign", "x"}, {"value", "1"}});

    auto with_X = [&](WorldTriple w, Value v) {
        w.abstract.set(*d.abstract_index("X"), v);
        return w;
    };
    const DcslView pre = dcsl_view({with_X(world(d, 0, Token::todo(0)), 0)});
    const DcslView done = dcsl_view({with_X(world(d, 1, Token::done(0)), 1)});
    const DcslView todo = dcsl_view({with_X(world(d, 1, Token::todo(0)), 0)});
    CHECK(check_action_dcsl(1, *set1, pre, done, s->lp(), u).ok);
    CHECK(check_action_dcsl(1, *set1, pre, todo, s->lp(), u).ok);
    CHECK_FALSE(check_action_dcsl(1, *set1, pre, dcsl_view({}), s->lp(), u).ok);

    const auto faulting = check_action_dcsl(1, *set1, dcsl_unit(), dcsl_unit(), s->lp(), u);
    CHECK_FALSE(faulting.ok);
    CHECK(faulting.error == ErrorKind::FaultReachable);
}

TEST_CASE("dcsl implication") {
    auto s = micro_session({1, 0, 2, 1, true});
    const auto& d = s->domains();
    const DcslView a = dcsl_view({world(d, 0)});
    const DcslView b = dcsl_view({world(d, 0), world(d, 1)});
    CHECK(repart_implies_dcsl(a, b, d).holds());
    CHECK_FALSE(repart_implies_dcsl(b, a, d).holds());
}
