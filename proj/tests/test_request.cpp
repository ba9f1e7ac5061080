#include <doctest.h>

#include <sstream>

#include "gl4bessel/checks.hpp"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/request.hpp"
#include "json.hpp"

using namespace gl4;

namespace {

const char* kMu = R"("mu": [[0, 0.7], [0, -1.1], [0, 0.1], [0, 0.3]])";

std::string request(const std::string& body) { return std::string("{") + kMu + ", " + body + "}"; }

}  // namespace

TEST_CASE("identity element evaluates to one") {
    const auto r = parse_eval_request(request(R"("weyl": "4", "y": [])"));
    const auto e = evaluate_request(r);
    REQUIRE(e.series);
    CHECK(e.series->value == cplx(1.0, 0.0));
}

TEST_CASE("request validation") {
    CHECK_THROWS_AS(parse_eval_request(R"({"weyl": "31", "y": [0.1], "mu": [[0,1],[0,-1],[0,0.5],[0,0]]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "32", "y": [0.1])")), DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "31", "y": [0.1, 0.2])")), DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "31", "y": [0.1], "delta": [0, 2, 0, 0])")), DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "31", "y": [0.1], "method": "exact")")), DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "31", "y": [0.5, 1, 0.1])")), DomainError);
    CHECK_THROWS_AS(parse_eval_request("{"), DomainError);
    CHECK_THROWS_AS(parse_eval_request(request(R"("weyl": "31", "y": [0.1], "y4": 2)")), DomainError);
}

TEST_CASE("free coordinates and overrides") {
    const auto a = parse_eval_request(request(R"("weyl": "121", "y": [0.05, -0.02])"));
    CHECK(a.y.y == std::array<double, 3>{0.05, 1.0, -0.02});
    CHECK(a.order == 12);
    CHECK(a.contour.tol == 1e-6);
    EvalOverrides over;
    over.order = 8;
    over.tol = 1e-4;
    over.t0 = 15;
    over.method = Method::both;
    const auto b = parse_eval_request(request(R"("weyl": "31", "y": [1, 1, -0.05], "y4": -1, "order": 20)"), over);
    CHECK(b.order == 8);
    CHECK(b.contour.tol == 1e-4);
    CHECK(b.contour.t0 == 15);
    CHECK(b.method == Method::both);
    CHECK(b.y.y4 == -1);
}

TEST_CASE("both methods report a discrepancy") {
    const auto r = parse_eval_request(request(R"("weyl": "31", "y": [-0.05], "delta": [0, 1, 0, 0], "method": "both")"));
    const auto e = evaluate_request(r);
    REQUIRE(e.discrepancy);
    CHECK(*e.discrepancy < 1e-6);
    const auto j = nlohmann::json::parse(eval_result_json(r, e));
    CHECK(j["mellin_barnes"]["value"].size() == 2);
    const double re = j["series"]["value"][0].get<double>();
    CHECK(re == e.series->value.real());
}

TEST_CASE("table rows") {
    const auto rows = parse_eval_batch(std::string("[") + request(R"("weyl": "31", "y": [0.05])") + "," +
                                       request(R"("weyl": "22", "y": [-0.02], "method": "both")") + "]");
    REQUIRE(rows.size() == 2);
    const auto serial = evaluate_batch(rows, Exec::serial);
    const auto parallel = evaluate_batch(rows, Exec::parallel);
    auto columns = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
    CHECK(columns(table_header()) == 20);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string line = table_row(rows[i], serial[i]);
        CHECK(columns(line) == 20);
        CHECK(line == table_row(rows[i], parallel[i]));
    }
    CHECK(table_row(rows[0], serial[0]).rfind("31,1,1,0.050000000000000003,1,", 0) == 0);
    try {
        parse_eval_batch(std::string("[") + request(R"("weyl": "31", "y": [0.05])") + ", {}]");
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).rfind("row 1:", 0) == 0);
    }
}

TEST_CASE("suites are deterministic for a seed") {
    const auto a = run_suite("decomp", 5, 50, Exec::serial);
    const auto b = run_suite("decomp", 5, 50, Exec::parallel);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].worst == b.checks[i].worst);
    CHECK(a.pass());
    CHECK_THROWS_AS(run_suite("nope", 1, 1), DomainError);
}

TEST_CASE("series suite includes the pairwise w1111 table") {
    const auto r = run_suite("series", 3, 2);
    int pairs = 0;
    for (const auto& c : r.checks) pairs += c.name.rfind("w1111 form", 0) == 0;
    CHECK(pairs == 21);
    CHECK(r.pass());
}

TEST_CASE("negative controls count as failures when too small") {
    CheckResult c{"control", 1, 1e-7, 1e-5, true};
    CHECK_FALSE(c.pass());
    c.worst = 1e-4;
    CHECK(c.pass());
}
