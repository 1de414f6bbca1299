#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include <l1s/exceptions.hpp>
#include <l1s/json_io.hpp>
#include <l1s/validate.hpp>

#include "support.hpp"

using namespace l1s;
using support::rmat;
using support::rvec;

namespace {

const Decomposition& dec()
{
    static const Decomposition d =
        buildDecomposition(buildDualPolytope(support::exampleMatrix()));
    return d;
}

}   // anonymous namespace

TEST_CASE("rational vectors and matrices round-trip as strings")
{
    const VectorXr v = rvec("0,-3/4,22/7");
    const Json jv = ratVectorToJson(v);
    REQUIRE(jv.is_array());
    CHECK(jv[0] == "0");
    CHECK(jv[1] == "-3/4");
    CHECK(jv[2] == "22/7");
    CHECK(ratVectorFromJson(jv) == v);

    const MatrixXr A = support::exampleMatrix();
    CHECK(matrixFromJson(matrixToJson(A)) == A);

    CHECK_THROWS_AS(ratVectorFromJson(Json::array({1, 2})), ParseException);
    CHECK_THROWS_AS(ratVectorFromJson(Json::array({"1/0"})), ParseException);
    CHECK_THROWS_AS(ratVectorFromJson(Json("nope")), ParseException);
    CHECK_THROWS_AS(matrixFromJson(Json::parse(R"([["1","2"],["3"]])")), ParseException);
    CHECK_THROWS_AS(matrixFromJson(Json::parse(R"([[1.5]])")), ParseException);
}

TEST_CASE("problem files parse and serialize")
{
    const Json j = Json::parse(R"({"A": [["1","0","2"],["0","2","-2"]], "label": "demo"})");
    const Problem p = parseProblemJson(j);
    CHECK(p.A == support::exampleMatrix());
    CHECK(p.label == "demo");

    const Problem bare = parseProblemJson(Json::parse(R"({"A": [["1"]]})"));
    CHECK(bare.label.empty());

    const Json back = problemToJson(p);
    CHECK(parseProblemJson(back).A == p.A);
    CHECK(back["label"] == "demo");

    CHECK_THROWS_AS(parseProblemJson(Json::parse(R"({"label": "x"})")), ParseException);
    CHECK_THROWS_AS(parseProblemJson(Json::parse(R"({"A": "x"})")), ParseException);
}

TEST_CASE("decomposition export carries the full structure")
{
    const Json j = decompositionToJson(dec());
    CHECK(j["A"] == matrixToJson(dec().A()));
    REQUIRE(j["vertices"].size() == 4);
    REQUIRE(j["faces"].size() == 9);

    for (const Json& f : j["faces"])
    {
        CHECK(f.contains("id"));
        CHECK(f["plus"].is_array());
        CHECK(f["zero"].is_array());
        CHECK(f["minus"].is_array());
        CHECK(f["vertices"].is_array());
        CHECK(f["dim"].is_number_integer());
        CHECK(f["in_F0"].is_boolean());
        CHECK(f["generators"].is_array());
        CHECK((f["lipschitz"].is_null() || f["lipschitz"].is_number()));
        CHECK(f["in_F0"].get<bool>() == !f["lipschitz"].is_null());

        // Vertex references are 1-based indices into the vertex list.
        for (const Json& ref : f["vertices"])
        {
            CHECK(ref.get<int>() >= 1);
            CHECK(ref.get<int>() <= 4);
        }
    }

    // The single-support face carries the closed-form constant sqrt(5)/4.
    const DecompositionCell& single = support::cellByPartition(dec(), {1}, {0, 2}, {});
    for (const Json& f : j["faces"])
        if (f["id"].get<int>() == single.id)
        {
            CHECK(f["plus"] == Json::array({2}));
            CHECK(f["zero"] == Json::array({1, 3}));
            CHECK(f["minus"] == Json::array());
            CHECK_THAT(f["lipschitz"].get<double>(),
                       Catch::Matchers::WithinAbs(std::sqrt(5.0) / 4.0, 1e-12));
        }

    CHECK(matrixFromDecompositionJson(j) == dec().A());
    CHECK_THROWS_AS(matrixFromDecompositionJson(Json::object()), ParseException);

    // Serialization is canonical: a second export dumps identically.
    CHECK(decompositionToJson(dec()).dump() == j.dump());
}

TEST_CASE("decompositionMatchesJson vets cached exports")
{
    Json j = decompositionToJson(dec());
    CHECK(decompositionMatchesJson(dec(), j));

    Json flipped = j;
    flipped["faces"][2]["in_F0"] = !flipped["faces"][2]["in_F0"].get<bool>();
    CHECK_FALSE(decompositionMatchesJson(dec(), flipped));

    Json tampered = j;
    tampered["faces"][0]["generators"][0][0] = "17";
    CHECK_FALSE(decompositionMatchesJson(dec(), tampered));

    Json truncated = j;
    truncated["faces"].erase(8);
    CHECK_FALSE(decompositionMatchesJson(dec(), truncated));
}

TEST_CASE("solution sets serialize by kind")
{
    SolutionSet point = solve(dec(), 1, rvec("1/2,2"));
    const Json ju = solutionToJson(point);
    CHECK(ju["kind"] == "unique");
    CHECK(ju["x"] == Json::array({"0", "3/4", "0"}));
    CHECK_FALSE(ju.contains("vertices"));

    SolutionSet seg = solve(dec(), 1, rvec("4,2"));
    const Json jp = solutionToJson(seg);
    CHECK(jp["kind"] == "polytope");
    REQUIRE(jp["vertices"].size() == 2);
    CHECK(jp["vertices"][0] == Json::array({"0", "9/4", "3/2"}));
    CHECK(jp["vertices"][1] == Json::array({"3", "3/4", "0"}));
    CHECK(!seg.vertices.empty());   // side effect: cache filled
    REQUIRE(!jp["equalities"].empty());
    const Json& row = jp["equalities"][0];
    CHECK(row.contains("coeff"));
    CHECK(row["rhs"].is_string());
    CHECK(jp["inequalities"].is_array());
}

TEST_CASE("locate lists serialize as a bare array")
{
    CHECK(locateToJson({1, 5, 9}) == Json::array({1, 5, 9}));
    CHECK(locateToJson({}) == Json::array());
}

TEST_CASE("condition reports use the numbered keys")
{
    const Json j = conditionsToJson(checkConditions(dec(), 1, rvec("1/2,2")));
    CHECK(j["cond31"] == true);
    CHECK(j["cond32"] == true);
    CHECK(j["cond33"] == true);
    CHECK(j["witness_x"] == Json::array({"0", "3/4", "0"}));
    CHECK(j["witness_y"].is_array());
    CHECK(j["active_J"] == Json::array({2}));   // 1-based

    const Json none = conditionsToJson(checkConditions(dec(), 1, rvec("4,2")));
    CHECK(none["cond31"] == false);
    CHECK(none["witness_y"].is_null());
    CHECK(none["active_J"] == Json::array({1, 2, 3}));
}

TEST_CASE("traced paths print as CSV")
{
    std::vector<PathSegment> path =
        tracePath(dec(), ParamPoint{1, rvec("4,2")}, ParamPoint{1, rvec("1/2,2")});
    const int fullId = support::cellByPartition(dec(), {0, 1, 2}, {}, {}).id;
    const int singleId = support::cellByPartition(dec(), {1}, {0, 2}, {}).id;
    const std::string expected =
        "theta_in,theta_out,cell_id,solution_in,solution_out\n"
        "0,6/7," + std::to_string(fullId) + ",0 9/4 3/2|3 3/4 0,0 3/4 0\n"
        "6/7,1," + std::to_string(singleId) + ",0 3/4 0,0 3/4 0\n";
    CHECK(traceToCsv(path) == expected);
}

TEST_CASE("figure export for planar measurements")
{
    const Json j = figureToJson(dec());
    REQUIRE(j["cells"].size() == 9);
    for (const Json& cell : j["cells"])
    {
        CHECK(cell.contains("id"));
        REQUIRE(cell["unit_directions"].is_array());
        for (const Json& d : cell["unit_directions"])
        {
            double norm = 0.0;
            for (const Json& c : d)
                norm += c.get<double>() * c.get<double>();
            CHECK_THAT(std::sqrt(norm), Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
        CHECK(!cell["boundary_points"].empty());
    }

    const Decomposition interval = buildDecomposition(buildDualPolytope(rmat({"1"})));
    CHECK_THROWS_AS(figureToJson(interval), std::invalid_argument);
}

TEST_CASE("validation reports serialize per trial")
{
    ValidationReport report;
    TrialResult t;
    t.seed = 7;
    t.m = 2;
    t.n = 4;
    t.lambda = Rational(3) / 2;
    t.b = rvec("1,-2");
    t.oracleDistance = 1e-9;
    t.maxVertexResidual = 0.0;
    t.pass = true;
    t.detail = "ok";
    report.trials.push_back(t);

    const Json j = validationReportToJson(report);
    CHECK(j["trials"] == 1);
    CHECK(j["all_pass"] == true);
    REQUIRE(j["results"].size() == 1);
    const Json& r = j["results"][0];
    CHECK(r["seed"] == 7);
    CHECK(r["dims"] == Json::array({2, 4}));
    CHECK(r["lambda"] == "3/2");
    CHECK(r["b"] == Json::array({"1", "-2"}));
    CHECK(r["pass"] == true);

    report.trials.push_back(TrialResult{});
    report.trials.back().pass = false;
    CHECK_FALSE(report.allPass());
    CHECK(validationReportToJson(report)["all_pass"] == false);
}
