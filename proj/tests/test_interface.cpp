#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bilops.h"
#include "bilops/engine.hpp"
#include "bilops/report.hpp"
#include "helpers.hpp"

using namespace bilops;
using namespace bilops::testing;

namespace {

Json run_json(const std::string& request, int jobs = 1) {
    EngineOptions opts;
    opts.parallelism = jobs;
    return Json::parse(run_command(request, opts));
}

}  // namespace

TEST_CASE("every command's report validates against the shipped schema") {
    Json schema = Json::parse(report_schema_text());
    std::vector<std::string> requests = {
        R"({"command":"solve","n":1,"weights":["0","0"],"degree":3})",
        R"({"command":"scan","n":1,"degree":1,"grid":{"start":"-1","stop":"1","step":"1"}})",
        R"({"command":"locus","degree":2})",
        R"({"command":"verify","op":"Z1","n":2})",
        R"({"command":"fit","template":"density","degree":1,"a":"0","b":"0","n":1})",
        R"({"command":"catalog_list"})",
    };
    for (const auto& req : requests) {
        Json report = run_json(req);
        CAPTURE(req);
        CHECK(validate_against_schema(report, schema).empty());
        CHECK(report.at("schema_version") == "1.0");
    }
}

TEST_CASE("the schema file in the repository matches the embedded text") {
    std::ifstream in(std::string(BILOPS_SOURCE_DIR) + "/report.schema.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == report_schema_text());
}

TEST_CASE("reports are byte-identical across runs and parallelism levels") {
    std::string req =
        R"({"command":"scan","n":2,"degree":2,
            "sl1":{"start":"0","stop":"2","step":"1"},
            "shift1":{"start":"-1","stop":"0","step":"1"},
            "sl2":{"start":"0","stop":"2","step":"1"},
            "shift2":{"start":"-1","stop":"0","step":"1"},
            "nu_policy":"balanced"})";
    EngineOptions one, four;
    one.parallelism = 1;
    four.parallelism = 4;
    std::string a = run_command(req, one);
    std::string b = run_command(req, four);
    std::string c = run_command(req, one);
    // the echoed parallelism is configuration, not results
    Json ja = Json::parse(a), jb = Json::parse(b), jc = Json::parse(c);
    ja["config"].erase("parallelism");
    jb["config"].erase("parallelism");
    jc["config"].erase("parallelism");
    CHECK(ja.dump() == jb.dump());
    CHECK(a == c);
}

TEST_CASE("tensor fields round-trip through JSON") {
    for (int trial = 0; trial < 20; ++trial) {
        int n = rand_int(1, 3);
        Kind kind = static_cast<Kind>(rand_int(0, 4));
        int degree = kind == Kind::Scalar ? 0
                     : kind == Kind::Symtensor ? rand_int(1, 2)
                                               : rand_int(0, n);
        TensorField f(kind, degree, n, rand_rational());
        for (int t = 0; t < 3; ++t) {
            FiberKey fk;
            if (kind == Kind::Form || kind == Kind::Polyvector || kind == Kind::VVForm) {
                std::vector<int> idx(n);
                std::iota(idx.begin(), idx.end(), 0);
                for (int d = 0; d < degree; ++d) fk.mask |= 1u << idx[(t + d) % n];
                if (__builtin_popcount(fk.mask) != degree) continue;
            }
            if (kind == Kind::Symtensor) {
                fk.mom.assign(n, 0);
                for (int d = 0; d < degree; ++d) fk.mom[rand_int(0, n - 1)] += 1;
            }
            if (kind == Kind::VVForm) fk.vec = rand_int(0, n - 1);
            std::vector<int> e(n);
            for (auto& x : e) x = rand_int(0, 2);
            f.add(fk, e, rand_rational());
        }
        TensorField back = tensor_field_from_json(tensor_field_to_json(f));
        CHECK(back == f);
    }
}

TEST_CASE("solve report carries the expected kernel") {
    Json rep = run_json(
        R"({"command":"solve","n":2,"w1":["0","-1"],"w2":["0","-1"],"degree":3,"nu":["-2","-3"]})");
    REQUIRE(rep.at("results").at("entries").size() == 1);
    CHECK(rep["results"]["entries"][0]["kernel_dim"] == 1);
    CHECK(rep["fixture_ids"][0] == "n2.d3.T1");
    // basis vector serialized in the documented term layout
    const Json& term = rep["results"]["entries"][0]["basis"][0]["terms"][0];
    CHECK(term.contains("dp1"));
    CHECK(term.contains("dp2"));
    CHECK(term.contains("c"));
}

TEST_CASE("invalid and truncation errors surface as the right C API codes") {
    bilops_engine* engine = bilops_engine_create(1);
    REQUIRE(engine);
    char* out = nullptr;

    CHECK(bilops_run(engine, "{not json", &out) == BILOPS_ERR_INVALID_REQUEST);
    CHECK(out == nullptr);
    CHECK(std::string(bilops_last_error(engine)).find("JSON") != std::string::npos);

    CHECK(bilops_run(engine, R"({"command":"warp"})", &out) == BILOPS_ERR_INVALID_REQUEST);

    // a dominant pair solved with a tiny truncation on a non-dominant weight
    std::string trunc_req =
        R"({"command":"solve","n":2,"w1":["1/2","0"],"w2":["0","0"],"degree":3,
            "nu":["-5/2","0"],"truncation":1})";
    bilops_status st = bilops_run(engine, trunc_req.c_str(), &out);
    CHECK(st == BILOPS_ERR_TRUNCATION);
    CHECK(std::string(bilops_last_error(engine)).find("truncation") != std::string::npos);

    CHECK(bilops_run(engine, R"({"command":"catalog_list"})", &out) == BILOPS_OK);
    REQUIRE(out != nullptr);
    Json listing = Json::parse(out);
    CHECK(listing["results"]["operators"].size() >= 20);
    bilops_string_free(out);
    CHECK(std::string(bilops_last_error(engine)).empty());
    bilops_engine_destroy(engine);
}

TEST_CASE("catalog apply through the engine") {
    Json in1 = tensor_field_to_json(
        TensorField::scalar(1, poly_monomial({0}, 1), rat(-2, 3)));
    Json in2 = tensor_field_to_json(
        TensorField::scalar(1, poly_monomial({3}, 1), rat(-2, 3)));
    Json req;
    req["command"] = "catalog_apply";
    req["op"] = "T2";
    req["in1"] = in1;
    req["in2"] = in2;
    Json rep = run_json(req.dump());
    CHECK(rep["results"]["field"]["twist"] == "5/3");
    CHECK(rep["results"]["field"]["terms"][0]["c"] == "-12");
}

TEST_CASE("tsv output for scan") {
    std::string tsv = run_command(
        R"({"command":"scan","n":1,"degree":1,"grid":{"start":"0","stop":"1","step":"1"},
            "format":"tsv"})",
        EngineOptions{});
    std::istringstream lines(tsv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "w1\tw2\tnu\tkernel_dim");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("grid size guard") {
    std::string big =
        R"({"command":"scan","n":1,"degree":1,"grid":{"start":"0","stop":"1000","step":"1/2"}})";
    CHECK_THROWS_AS(run_json(big), ConfigError);
}
