#include "../support.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace rvtest;

namespace {
json fixture_json(const std::string& name) {
    return read_json_file(std::string(RELVIEWS_FIXTURES) + "/" + name + "/model");
}

ErrorKind load_error(const json& j) {
    try {
        load_model(j);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("model loaded");
    return ErrorKind::ModelError;
}
} // namespace

TEST_CASE("serialization round trip keeps the fingerprint") {
    for (const char* name : {"atomic-inc", "flat-combiner", "dcsl-cell"}) {
        const Model m = load_model(fixture_json(name));
        CHECK(model_fingerprint(load_model(serialize_model(m))) == model_fingerprint(m));
    }
}

TEST_CASE("model errors") {
    json j = fixture_json("atomic-inc");
    j["initial"]["concrete"]["q"] = 0;
    CHECK(load_error(j) == ErrorKind::SchemaError);

    j = fixture_json("atomic-inc");
    j["macros"]["inv"]["body"] = "inv()";
    CHECK(load_error(j) == ErrorKind::SchemaError);

    j = fixture_json("atomic-inc");
    j["methods"]["inc"] = {{"frobnicate", "k"}};
    CHECK(load_error(j) == ErrorKind::SchemaError);

    j = fixture_json("atomic-inc");
    j["abstract"].erase("inc");
    CHECK(load_error(j) == ErrorKind::ModelError);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string path = "relviews_bad_model.json";
    {
        std::ofstream out(path);
        out << "{\n  \"name\": \"x\",\n  \"domains\": [\n}\n";
    }
    try {
        read_json_file(path);
        FAIL("parsed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find(":4:1: syntax error") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("cap limits the universe") {
    json j = micro_model({2, 2, 2, 2, true});
    CHECK_THROWS_AS(Session(load_model(j, 10)).monoid(), Error);
}
