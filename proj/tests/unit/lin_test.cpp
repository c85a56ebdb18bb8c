#include "../support.hpp"

#include <doctest.h>

#include <set>

using namespace rvtest;

namespace {
std::vector<History> histories(const Library& lib, std::size_t bound) {
    HistoryOptions opt;
    opt.bound = bound;
    return generate_histories(lib, opt).histories;
}
} // namespace

TEST_CASE("history generation") {
    auto s = fixture_session("atomic-inc");
    const auto& d = s->domains();
    const Library conc = s->concrete_library();

    const auto h0 = histories(conc, 0);
    REQUIRE(h0.size() == 1);
    CHECK(format_history(h0[0], d) == "ε");

    const auto h4 = histories(conc, 4);
    const auto h6 = histories(conc, 6);
    std::set<std::string> shown6;
    for (const auto& h : h6) shown6.insert(format_history(h, d));
    for (const auto& h : h4) CHECK(shown6.count(format_history(h, d)));
    for (const auto& h : h6) {
        for (std::size_t n = 0; n < h.size(); ++n) CHECK(shown6.count(format_history(History(h.begin(), h.begin() + n), d)));
    }
    CHECK(shown6.count("t=1 call inc(1)\nt=2 call inc(1)\nt=2 ret inc(1)\nt=1 ret inc(2)"));
    CHECK_FALSE(shown6.count("t=1 call inc(1)\nt=2 call inc(1)\nt=2 ret inc(1)\nt=1 ret inc(1)"));

    std::set<std::string> abs3;
    for (const auto& h : histories(s->abstract_library(), 3)) abs3.insert(format_history(h, d));
    CHECK(abs3.count("t=1 call inc(1)\nt=1 ret inc(1)"));
}

TEST_CASE("atomic increment is linearizable and the lock-free combiner is not") {
    HistoryOptions opt;
    opt.bound = 6;
    auto inc = fixture_session("atomic-inc");
    CHECK(check_linearizable(inc->concrete_library(), inc->abstract_library(), opt).ok);

    auto nolock = fixture_session("flat-combiner-nolock");
    const auto r = check_linearizable(nolock->concrete_library(), nolock->abstract_library(), opt);
    CHECK_FALSE(r.ok);
    REQUIRE(r.counterexample);
    CHECK(format_history(*r.counterexample, nolock->domains()) == "t=1 call inc(1)\nt=2 call inc(1)\nt=1 ret inc(3)");
}
