#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gammalab/checks.hpp"
#include "gammalab/report.hpp"

using namespace gammalab;

TEST_CASE("report rendering and exit status") {
    Report rep;
    rep.command = "demo";
    rep.instance_echo = {{"n", 4}};
    CheckRecord a{"b_check", "Lemma 0.0", Status::kPass, {{"k", 1}}, 1.5};
    CheckRecord b{"a_check", "Lemma 0.1", Status::kFail, {{"bad", true}}, 0.5};
    rep.records = {a, b};
    rep.sort_records();
    CHECK(rep.records[0].name == "a_check");
    CHECK(rep.any_fail());
    CHECK(rep.exit_status() == 1);

    nlohmann::json j = rep.to_json();
    CHECK(j["schema_version"] == 1);
    CHECK(j["records"].size() == 2);
    CHECK(j["records"][0]["status"] == "fail");
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["records"][0].contains("ms"));
    CHECK_FALSE(rep.to_json(false)["records"][0].contains("ms"));

    std::string csv = rep.to_csv();
    CHECK(csv.find("name,anchor,status,ms,payload") == 0);
    CHECK(csv.find("a_check") != std::string::npos);
    std::string text = rep.to_text();
    CHECK(text.find("FAIL") != std::string::npos);

    rep.records[0].status = Status::kFinding;  // findings do not fail a run
    CHECK(rep.exit_status() == 0);
}

TEST_CASE("rng determinism") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    bool differs = false;
    Rng a2(42);
    for (int i = 0; i < 100; ++i) differs = differs || (a2.next() != c.next());
    CHECK(differs);
    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
        auto v = d.between(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
}

TEST_CASE("int list parsing") {
    CHECK(parse_int_list("0,2,4") == std::vector<int>{0, 2, 4});
    CHECK(parse_int_list("0") == std::vector<int>{0});
    CHECK(parse_int_list("") == std::vector<int>{});
    CHECK(format_int_list({0, 2, 4}) == "0,2,4");
    CHECK_THROWS_AS(parse_int_list("0,x"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
}

TEST_CASE("single checks: gamma pattern and cyclic generation records") {
    CheckRecord r = check_gamma_profile_pattern();
    CHECK(r.status == Status::kPass);
    CHECK(r.name == "c01_gamma_profile_pattern");
    CHECK(r.anchor == "Proposition 2.4");
    CHECK(r.payload["gamma0"]["e_set"] == nlohmann::json::array({1, 3}));
    CHECK(r.payload["gamma2"]["e_set"] == nlohmann::json::array({3}));

    CheckRecord c6 = check_cyclic_generation();
    CHECK(c6.status == Status::kPass);
}

TEST_CASE("rigidity check is a finding with agreeing methods") {
    CheckRecord r = check_endomorphism_rigidity();
    CHECK(r.status == Status::kFinding);
    CHECK(r.payload["dims"]["n4_alpha0"] == 23);
    CHECK(r.payload["dims"]["n4_alpha1"] == 11);
    CHECK(r.payload["dims"]["n5_alpha0"] == 50);
    CHECK(r.payload["dims"]["n5_alpha1"] == 28);
}

TEST_CASE("irredundant independence reports the n=5 collision") {
    CheckRecord r = check_irredundant_independence();
    CHECK(r.status == Status::kFinding);
    CHECK(r.payload["instances"]["n4"]["defect"] == 0);
    CHECK(r.payload["instances"]["n4"]["products_plus_unit"] == 21);
    CHECK(r.payload["instances"]["n5"]["defect"] == 2);
    CHECK(r.payload["instances"]["n5"]["matrix_rank"] == 63);
}

TEST_CASE("sweep instance checks") {
    auto recs = sweep_instance_checks(Instance::make(5, {0, 2}, 5));
    REQUIRE(recs.size() == 2);
    for (const CheckRecord& r : recs) CHECK(r.status == Status::kPass);
}
