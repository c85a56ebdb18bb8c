#include "../support.hpp"

#include <doctest.h>

using namespace rvtest;

namespace {
ObligationReport check(const json& model) {
    Session s(load_model(model));
    const auto outlines = load_outline_file(std::string(RELVIEWS_FIXTURES) + "/atomic-inc/outline", s.model());
    return check_obligations(s, outlines);
}

json atomic_inc() { return read_json_file(std::string(RELVIEWS_FIXTURES) + "/atomic-inc/model"); }
} // namespace

TEST_CASE("atomic increment discharges every obligation") {
    const auto rep = check(atomic_inc());
    CHECK(rep.ok);
    CHECK(rep.instances == 8);
}

TEST_CASE("a wrong implementation is rejected by the proof") {
    json j = atomic_inc();
    j["methods"]["inc"]["atomic"]["seq"][0]["value"] = "k + a + a";
    Session s(load_model(j));
    json outline = {{"methods", {{"inc", j["methods"]["inc"]}}}};
    const auto rep = check_obligations(s, load_outline(outline, s.model()));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.failure);
    CHECK(rep.failure->obligation == 1);
}

TEST_CASE("a precondition without the todo token fails pinning") {
    json j = atomic_inc();
    j["spec"]["inc"]["pre"] = "box(inv())";
    Session s(load_model(j));
    const auto f = check_pinning(s, "inc", 0, 1);
    REQUIRE(f);
    CHECK(f->obligation == 2);
    CHECK_FALSE(check_pinning(Session(load_model(atomic_inc())), "inc", 0, 1));
}

TEST_CASE("helping across dcsl views is diagnosed") {
    auto s = fixture_session("dcsl-helping");
    const auto outlines = load_outline_file(std::string(RELVIEWS_FIXTURES) + "/dcsl-helping/outline", s->model());
    const auto rep = check_obligations(*s, outlines);
    REQUIRE(rep.failure);
    CHECK(rep.failure->message.find("token composition undefined") != std::string::npos);
}
