#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

namespace {
WorldTriple cell(const Domains& d, Value v) {
    WorldTriple w;
    w.concrete.set(*d.concrete_index("x"), v);
    return w;
}
} // namespace

TEST_CASE("world universe sizes") {
    CHECK(enumerate_worlds(micro_session({1, 0, 2, 1, true})->domains()).size() == 9);
    CHECK(enumerate_worlds(micro_session({1, 1, 2, 1, true})->domains()).size() == 27);
    CHECK(enumerate_worlds(micro_session({2, 0, 1, 2, true})->domains()).size() == 36);
    CHECK(enumerate_worlds(micro_session({2, 0, 2, 1, false})->domains()).size() == 9);
}

TEST_CASE("composition of worlds is disjoint union") {
    auto s = micro_session({1, 0, 2, 1, true});
    const auto& d = s->domains();
    CHECK_FALSE(compose_worlds(cell(d, 0), cell(d, 1)));
    CHECK(*compose_worlds(cell(d, 0), WorldTriple{}) == cell(d, 0));

    WorldTriple todo, done;
    todo.tokens.set(1, Token::todo(0));
    done.tokens.set(1, Token::done(0));
    CHECK_FALSE(compose_worlds(todo, done));
    const auto both = compose_worlds(cell(d, 1), todo);
    REQUIRE(both);
    CHECK(world_contains(*both, todo));
    CHECK(world_minus(*both, todo) == cell(d, 1));
}

TEST_CASE("token packing") {
    CHECK(Token::todo(3).kind() == TokenKind::Todo);
    CHECK(Token::done(3).apcom() == 3);
    CHECK_FALSE(Token::none().present());
}

TEST_CASE("world formatting") {
    auto s = micro_session({1, 0, 2, 1, true});
    WorldTriple w = cell(s->domains(), 1);
    w.tokens.set(1, Token::todo(0));
    CHECK(format_world(w, s->domains()) == "([x:1], [], [1:todo(op(0,0))])");
}
