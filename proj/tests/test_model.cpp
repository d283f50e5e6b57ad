#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "lucluster/json_io.hpp"
#include "lucluster/model.hpp"

using namespace luc;
using test::lineInstance;
using test::unit;

TEST_CASE("rational parsing and comparison") {
    CHECK(Rational::fromDecimal("0.25").num == 1);
    CHECK(Rational::fromDecimal("0.25").den == 4);
    CHECK(Rational::fromDecimal("1").den == 1);
    CHECK(Rational::fromDecimal("1/4").num == 1);
    CHECK(Rational::fromDecimal("1/4").den == 4);
    CHECK(Rational::fromDecimal("2.5").str() == "5/2");
    CHECK_THROWS_AS(Rational::fromDecimal("0.1234567890123"), ConfigError);
    CHECK_THROWS_AS(Rational::fromDecimal("x"), ConfigError);
    CHECK_THROWS_AS(Rational::fromDecimal("1/0"), ConfigError);

    CHECK(ratCmp({1, 2}, {2, 4}) == 0);
    CHECK(ratCmp({1, 3}, {1, 2}) < 0);
    Rational s = ratAdd({1, 2}, {1, 3});
    CHECK(s.num == 5);
    CHECK(s.den == 6);

    // load <= r * U at scale U
    CHECK(leScaled(5, {1, 2}, 10));
    CHECK(!leScaled(6, {1, 2}, 10));
    CHECK(leScaled(20, {2, 1}, 10));
}

TEST_CASE("evaluate_cost zero-distance facility with opening cost") {
    Instance inst = lineInstance({3.0}, {3.0}, {1}, {1}, 1, {5 * kDefaultScale});
    Solution sol{{0}, {0}};
    auto c = evaluate_cost(inst, sol);
    CHECK(c.facilityCost == 5 * kDefaultScale);
    CHECK(c.serviceSum == 0);
    CHECK(c.serviceMax == 0);
    CHECK(c.total == 5 * kDefaultScale);
}

TEST_CASE("evaluate_cost on the 1-D two-client instance") {
    Instance inst = lineInstance({0.0, 4.0}, {1.0}, {1}, {2}, 1);
    Solution sol{{0}, {0, 0}};
    auto c = evaluate_cost(inst, sol);
    CHECK(c.serviceSum == unit(4.0));
    CHECK(c.serviceMax == unit(3.0));
}

TEST_CASE("evaluate_cost identity assignment sums opening costs") {
    Instance inst = lineInstance({0.0, 9.0}, {0.0, 9.0}, {1, 1}, {1, 1}, 2,
                                 {2 * kDefaultScale, 3 * kDefaultScale});
    Solution sol{{0, 1}, {0, 1}};
    auto c = evaluate_cost(inst, sol);
    CHECK(c.serviceSum == 0);
    CHECK(c.total == 5 * kDefaultScale);
}

TEST_CASE("evaluate_cost rejects structural garbage") {
    Instance inst = lineInstance({0.0, 4.0}, {1.0}, {1}, {2}, 1);
    CHECK_THROWS_AS(evaluate_cost(inst, Solution{{0}, {0, 7}}), StructuralError);
    CHECK_THROWS_AS(evaluate_cost(inst, Solution{{}, {0, 0}}), StructuralError);
    CHECK_THROWS_AS(evaluate_cost(inst, Solution{{0}, {0}}), StructuralError);
}

TEST_CASE("validate_instance catches bound and shape violations") {
    Instance inst = lineInstance({0.0, 4.0}, {1.0, 3.0}, {2, 1}, {1, 4}, 2);
    auto rep = validate_instance(inst);
    CHECK(!rep.ok());  // lower[0] > upper[0]

    inst.lower = {1, 1};
    rep = validate_instance(inst);
    CHECK(rep.ok());
    CHECK(rep.uniformLower);
    CHECK(!rep.uniformUpper);
    CHECK(rep.maxLowerLeMinUpper);
    CHECK(rep.coarseFeasible);

    inst.kind = ProblemKind::LUFL;
    inst.k = 1;
    CHECK(!validate_instance(inst).ok());  // LUFL pins k = m
}

TEST_CASE("validate_instance triangle scan") {
    Instance inst = lineInstance({0.0, 1.0}, {0.0, 1.0}, {1, 1}, {2, 2}, 2);
    CHECK(validate_instance(inst, true).ok());
    inst.clientFacility[0][1] = unit(50.0);  // 0 -> fac1 now detours
    CHECK(!validate_instance(inst, true).ok());
}

TEST_CASE("cost components are permutation invariant") {
    std::mt19937_64 rng(11);
    Instance inst = lineInstance({0.0, 2.0, 5.0, 9.0}, {1.0, 6.0}, {1, 1}, {3, 3}, 2,
                                 {kDefaultScale, 2 * kDefaultScale});
    Solution sol{{0, 1}, {0, 0, 1, 1}};
    auto base = evaluate_cost(inst, sol);

    std::vector<int> pc{2, 0, 3, 1};  // client relabeling: new j holds old pc[j]
    std::vector<int> pf{1, 0};
    Instance perm = inst;
    Solution psol;
    psol.open = {0, 1};
    psol.assign.resize(4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 2; ++i) perm.clientFacility[j][i] = inst.clientFacility[pc[j]][pf[i]];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) perm.facilityFacility[a][b] = inst.facilityFacility[pf[a]][pf[b]];
    for (int i = 0; i < 2; ++i) {
        perm.openingCost[i] = inst.openingCost[pf[i]];
        perm.lower[i] = inst.lower[pf[i]];
        perm.upper[i] = inst.upper[pf[i]];
    }
    for (int j = 0; j < 4; ++j)
        psol.assign[j] = pf[sol.assign[pc[j]]];  // pf is an involution
    auto permuted = evaluate_cost(perm, psol);
    CHECK(permuted.facilityCost == base.facilityCost);
    CHECK(permuted.serviceSum == base.serviceSum);
    CHECK(permuted.serviceMax == base.serviceMax);
}

TEST_CASE("service max bounded by service sum") {
    Instance inst = lineInstance({0.0, 2.0, 5.0, 9.0}, {1.0, 6.0}, {0, 0}, {4, 4}, 2);
    Solution sol{{0, 1}, {0, 0, 1, 1}};
    auto c = evaluate_cost(inst, sol);
    CHECK(c.serviceMax <= c.serviceSum);
    Solution zero{{0, 1}, {0, 0, 1, 1}};
    Instance colocated = lineInstance({1.0, 1.0, 6.0, 6.0}, {1.0, 6.0}, {0, 0}, {4, 4}, 2);
    auto z = evaluate_cost(colocated, zero);
    CHECK(z.serviceSum == 0);
    CHECK(z.serviceMax == 0);
}

TEST_CASE("instance json round-trip and point loading") {
    Instance inst = lineInstance({0.0, 2.0, 5.0}, {1.0, 6.0}, {1, 1}, {2, 2}, 2,
                                 {kDefaultScale, 0}, Objective::SumService,
                                 ProblemKind::LUkFL);
    Instance back = instanceFromJson(instanceToJson(inst));
    CHECK(back.clientFacility == inst.clientFacility);
    CHECK(back.facilityFacility == inst.facilityFacility);
    CHECK(back.lower == inst.lower);
    CHECK(back.upper == inst.upper);
    CHECK(back.openingCost == inst.openingCost);
    CHECK(back.k == inst.k);

    json j;
    j["format"] = 1;
    j["problem_kind"] = "LUkM";
    j["objective"] = "sum";
    j["points"] = {{"clients", {{0.0}, {2.0}, {5.0}}}, {"facilities", {{1.0}, {6.0}}}};
    j["lower"] = {1, 1};
    j["upper"] = {2, 2};
    j["k"] = 2;
    Instance pts = instanceFromJson(j);
    CHECK(pts.clientFacility == inst.clientFacility);
    CHECK(pts.facilityFacility == inst.facilityFacility);

    j["format"] = 2;
    CHECK_THROWS_AS(instanceFromJson(j), ConfigError);
}

TEST_CASE("check_feasibility enforces loads and cardinality") {
    Instance inst = lineInstance({0.0, 1.0, 2.0, 3.0}, {1.0, 2.0}, {2, 2}, {2, 2}, 1);
    Solution sol{{0, 1}, {0, 0, 1, 1}};
    CHECK(!check_feasibility(inst, sol, {1, 1}).ok());  // |open| > k
    inst.k = 2;
    CHECK(check_feasibility(inst, sol, {1, 1}).ok());
    Solution skew{{0, 1}, {0, 0, 0, 1}};
    CHECK(!check_feasibility(inst, skew, {1, 1}).ok());   // load 3 > U and load 1 < L
    CHECK(!check_feasibility(inst, skew, {2, 1}).ok());   // lower bound still broken
}
