#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

namespace {
Heap x_is(const Domains& d, Value v) {
    Heap h;
    h.set(*d.concrete_index("x"), v);
    return h;
}

std::vector<Value> x_values(const Domains& d, const Outcome& o) {
    std::vector<Value> out;
    for (const auto& h : o.states) out.push_back(*h.get(*d.concrete_index("x")));
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace

TEST_CASE("sequencing, choice, iteration and assume") {
    auto s = micro_session({1, 0, 3, 1, false});
    const auto& d = s->domains();
    const auto run = [&](const json& j, Value from) {
        return run_to_completion(parse_command(j, s->model(), false, "test"), x_is(d, from), 1, d.modulus);
    };
    const json set0 = {{"assign", "x"}, {"value", "0"}};
    const json inc = {{"assign", "x"}, {"value", "x + 1"}};

    CHECK(x_values(d, run({{"seq", {set0, inc}}}, 2)) == std::vector<Value>{1});
    CHECK(x_values(d, run({{"choice", {set0, inc}}}, 1)) == std::vector<Value>{0, 2});
    CHECK(x_values(d, run({{"assume", "x == 1"}}, 2)).empty());
    CHECK(x_values(d, run({{"if", "x == 1"}, {"then", set0}}, 1)) == std::vector<Value>{0});
    CHECK(x_values(d, run({{"if", "x == 1"}, {"then", set0}}, 2)) == std::vector<Value>{2});
    CHECK(x_values(d, run({{"while", "x != 2"}, {"do", inc}}, 0)) == std::vector<Value>{2});
}

TEST_CASE("faults on missing cells") {
    auto s = micro_session({1, 0, 2, 1, false});
    const auto c = parse_command(json{{"assign", "x"}, {"value", "1"}}, s->model(), false, "test");
    CHECK(run_to_completion(c, Heap{}, 1, s->domains().modulus).fault);
    CHECK(state_step(c, Heap{}, 1, s->domains().modulus).fault);
}

TEST_CASE("structural steps") {
    auto s = micro_session({1, 0, 2, 1, false});
    const auto a = cmd::prim(prim_of(*s, {{"assign", "x"}, {"value", "0"}}));
    const auto b = cmd::prim(prim_of(*s, {{"assign", "x"}, {"value", "1"}}));
    CHECK(step(cmd::skip()).empty());
    CHECK(step(cmd::choice(a, b)).size() == 2);
    const auto seq = step(cmd::seq(a, b));
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].prim->str() == a->prim->str());
    CHECK(derivatives(cmd::seq(a, b)).size() == 4);
    CHECK(primitives(cmd::seq(a, cmd::iter(b))).size() == 2);
}
