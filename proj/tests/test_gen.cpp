#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "lucluster/combine.hpp"
#include "lucluster/gen.hpp"
#include "lucluster/runner.hpp"

using namespace luc;

namespace {

bool hasTypeIV(const CombineTrace& trace) {
    for (const auto& e : trace.clients)
        if (e.type == AssignType::TypeIV) return true;
    return false;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
    GenSpec spec;
    spec.seed = 123;
    Instance a = generate(spec);
    Instance b = generate(spec);
    CHECK(a.clientFacility == b.clientFacility);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.k == b.k);
    spec.seed = 124;
    Instance c = generate(spec);
    CHECK(a.clientFacility != c.clientFacility);
}

TEST_CASE("generated instances are valid metrics with feasible bounds") {
    for (auto geo : {Geometry::EuclideanPlane, Geometry::Line, Geometry::GraphShortestPath}) {
        for (auto bm : {BoundMode::UniformL, BoundMode::UniformU, BoundMode::BothUniform,
                        BoundMode::TwoLLeU}) {
            for (std::uint64_t seed = 1; seed <= 6; ++seed) {
                GenSpec spec;
                spec.seed = seed;
                spec.n = 10;
                spec.m = 4;
                spec.geometry = geo;
                spec.boundMode = bm;
                Instance inst = generate(spec);
                auto rep = validate_instance(inst, true);
                INFO(geometryName(geo), " ", boundModeName(bm), " seed ", seed,
                     rep.ok() ? "" : (": " + rep.violations.front()));
                CHECK(rep.ok());
                CHECK(rep.coarseFeasible);
                if (bm == BoundMode::UniformL || bm == BoundMode::BothUniform)
                    CHECK(rep.uniformLower);
                if (bm == BoundMode::UniformU || bm == BoundMode::BothUniform ||
                    bm == BoundMode::TwoLLeU)
                    CHECK(rep.uniformUpper);
                if (bm == BoundMode::TwoLLeU) CHECK(rep.twoLowerLeUpper);
                for (int i = 0; i < inst.numFacilities; ++i)
                    CHECK(inst.lower[i] <= inst.upper[i]);
            }
        }
    }
}

TEST_CASE("problem kind defaults") {
    GenSpec spec;
    spec.seed = 4;
    spec.kind = ProblemKind::LUkC;
    Instance c = generate(spec);
    CHECK(c.numClients == c.numFacilities);
    CHECK(c.objective == Objective::MaxService);
    CHECK(c.clientFacility == c.facilityFacility);

    spec.kind = ProblemKind::LUFL;
    spec.fMin = 1;
    spec.fMax = 5;
    Instance f = generate(spec);
    CHECK(f.k == f.numFacilities);
    bool anyOpening = false;
    for (Cost oc : f.openingCost) anyOpening |= oc > 0;
    CHECK(anyOpening);

    spec.kind = ProblemKind::LUkS;
    Instance s = generate(spec);
    CHECK(s.objective == Objective::MaxService);
}

TEST_CASE("adversarial overflow forces a Type-IV assignment") {
    GenSpec spec;
    spec.boundMode = BoundMode::TwoLLeU;
    RunConfig cfg;
    cfg.lowerSolver = "exact";
    cfg.upperSolver = "exact";
    cfg.variant = Variant::Relaxed;
    cfg.eps = {1, 4};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        spec.seed = seed;
        Instance inst = adversarial_overflow(spec, cfg.eps);
        auto r = run_pipeline(inst, cfg);
        INFO("seed ", seed);
        CHECK(hasTypeIV(r.combined.trace));
        CHECK(r.report.allHardPass());

        Instance mild = adversarial_overflow(spec, cfg.eps, true);
        auto rm = run_pipeline(mild, cfg);
        CHECK(!hasTypeIV(rm.combined.trace));
    }
}

TEST_CASE("adversarial overflow determinism and bad configs") {
    GenSpec spec;
    spec.boundMode = BoundMode::TwoLLeU;
    spec.seed = 8;
    Instance a = adversarial_overflow(spec, {1, 4});
    Instance b = adversarial_overflow(spec, {1, 4});
    CHECK(a.clientFacility == b.clientFacility);

    spec.boundMode = BoundMode::BothUniform;
    CHECK_THROWS_AS(adversarial_overflow(spec, {1, 4}), GenError);
    spec.boundMode = BoundMode::TwoLLeU;
    // overflow is unreachable at eps >= 1/2 when the subsolvers keep beta = 1
    CHECK_THROWS_AS(adversarial_overflow(spec, {1, 2}), GenError);
}

TEST_CASE("infeasible request errors out") {
    GenSpec spec;
    spec.n = 1000;
    spec.m = 2;
    spec.uMin = 1;
    spec.uMax = 1;  // even 100 retries of stretching U cannot reach n
    spec.k = 1;
    spec.lMin = 0;
    spec.lMax = 0;
    CHECK_THROWS_AS(generate(spec), GenError);
}
