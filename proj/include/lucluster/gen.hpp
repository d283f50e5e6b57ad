#pragma once

#include <cstdint>
#include <string>

#include "lucluster/model.hpp"

namespace luc {

enum class Geometry { EuclideanPlane, Line, GraphShortestPath };
enum class BoundMode { UniformL, UniformU, BothUniform, TwoLLeU };

std::string geometryName(Geometry g);
std::string boundModeName(BoundMode b);
Geometry parseGeometry(const std::string& s);
BoundMode parseBoundMode(const std::string& s);

struct GenSpec {
    std::uint64_t seed = 1;
    int n = 12;
    int m = 4;
    Geometry geometry = Geometry::EuclideanPlane;
    BoundMode boundMode = BoundMode::BothUniform;
    int lMin = 1, lMax = 3;
    int uMin = 4, uMax = 10;
    int k = 0;  // 0: smallest k covering n by capacity, plus one slack
    Cost fMin = 0, fMax = 0;  // whole cost units, scaled at materialization
    ProblemKind kind = ProblemKind::LUkM;
};

struct GenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic under seed; the result always passes validate_instance and
// admits a solution meeting both bound sides. Throws GenError when bound
// rescaling cannot reach feasibility within 100 attempts.
Instance generate(const GenSpec& spec);

// Engineered TwoLLeU instance whose combine run (exact subsolvers, Relaxed
// variant at eps) drives a star's terminal bag past (beta+eps)*U, exercising
// the two-facility overflow branch. halvedMasses shrinks the carried cluster
// so the overflow does not trigger.
Instance adversarial_overflow(const GenSpec& spec, Rational eps, bool halvedMasses = false);

}  // namespace luc
