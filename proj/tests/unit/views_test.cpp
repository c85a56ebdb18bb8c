#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

TEST_CASE("linearization points") {
    auto s = micro_session({1, 1, 2, 1, true});
    const auto& d = s->domains();
    AbstractConfig c;
    c.abstract.set(*d.abstract_index("X"), 0);
    c.tokens.set(1, Token::todo(0));

    const auto next = s->lp().lp_step(c);
    REQUIRE(next.size() == 1);
    CHECK(*next[0].abstract.get(0) == 1);
    CHECK(next[0].tokens.get(1) == Token::done(0));

    CHECK(s->lp().lp_star(c).size() == 2);
    CHECK(s->lp().lp_reaches(c, c));
    CHECK(s->lp().lp_step(next[0]).empty());
    CHECK_FALSE(s->lp().lp_reaches(next[0], c));

    AbstractConfig missing;
    missing.tokens.set(1, Token::todo(0));
    CHECK(s->lp().lp_step(missing).empty());
}
