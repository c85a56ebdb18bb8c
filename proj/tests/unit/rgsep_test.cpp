#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

namespace {
struct Fixture {
    std::unique_ptr<Session> s = micro_session({1, 0, 2, 1, true});
    SharedSpace space;
    WorldTriple none, zero, one;

    Fixture() {
        const auto& d = s->domains();
        space.domains = &d;
        zero.concrete.set(0, 0);
        one.concrete.set(0, 1);
        space.states = {none, zero, one};
        std::sort(space.states.begin(), space.states.end());
    }
    RelationPtr flip() const { return Relation::explicit_pairs({{zero, one}}); }
};
} // namespace

TEST_CASE("rgsep composition needs compatible rely and guarantee") {
    Fixture f;
    WorldTriple tok;
    tok.tokens.set(1, Token::todo(0));
    const RgsepView p = rgsep_view({{tok, f.zero}, {tok, f.one}}, Relation::empty(), f.flip());
    const RgsepView r = rgsep_view({{WorldTriple{}, f.zero}, {WorldTriple{}, f.one}}, f.flip(), Relation::empty());
    const RgsepView bad = rgsep_view({{WorldTriple{}, f.zero}}, Relation::empty(), Relation::empty());

    const RgsepView pr = compose_rgsep(p, r, f.space);
    CHECK_FALSE(pr.bottom);
    CHECK(reify_rgsep(pr).size() == 2);
    CHECK(compose_rgsep(p, bad, f.space).bottom);
}

TEST_CASE("rgsep stability") {
    Fixture f;
    const RgsepView v = rgsep_view({{WorldTriple{}, f.zero}}, f.flip(), Relation::empty());
    const auto w = find_instability(v, f.space);
    REQUIRE(w);
    CHECK(w->shared_after == f.one);
    const RgsepView st = stabilize(v, f.space);
    CHECK(st.pred.size() == 2);
    CHECK_FALSE(find_instability(st, f.space));
}

TEST_CASE("rgsep action judgement checks the guarantee") {
    Fixture f;
    const auto set1 = prim_of(*f.s, {{"assign", "x"}, {"value", "1"}});
    const RgsepView p = rgsep_view({{WorldTriple{}, f.zero}}, Relation::empty(), f.flip());
    const RgsepView q = rgsep_view({{WorldTriple{}, f.one}}, Relation::empty(), f.flip());
    CHECK(check_action_rgsep(1, *set1, p, q, f.s->lp(), f.space).ok);

    const RgsepView p2 = rgsep_view({{WorldTriple{}, f.zero}}, Relation::empty(), Relation::empty());
    const RgsepView q2 = rgsep_view({{WorldTriple{}, f.one}}, Relation::empty(), Relation::empty());
    CHECK_FALSE(check_action_rgsep(1, *set1, p2, q2, f.s->lp(), f.space).ok);
}

TEST_CASE("unstable assertion in a fixture is reported") {
    auto s = fixture_session("flat-combiner-nolock");
    const auto outlines = load_outline_file(std::string(RELVIEWS_FIXTURES) + "/flat-combiner-nolock/outline", s->model());
    try {
        const auto rep = check_obligations(*s, outlines);
        CHECK_FALSE(rep.ok);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StabilityViolation);
    }
}
