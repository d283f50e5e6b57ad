#include "lucluster/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace luc {

std::string geometryName(Geometry g) {
    switch (g) {
        case Geometry::EuclideanPlane: return "plane";
        case Geometry::Line: return "line";
        case Geometry::GraphShortestPath: return "graph";
    }
    return "?";
}

std::string boundModeName(BoundMode b) {
    switch (b) {
        case BoundMode::UniformL: return "uniform_l";
        case BoundMode::UniformU: return "uniform_u";
        case BoundMode::BothUniform: return "both_uniform";
        case BoundMode::TwoLLeU: return "two_l_le_u";
    }
    return "?";
}

Geometry parseGeometry(const std::string& s) {
    if (s == "plane") return Geometry::EuclideanPlane;
    if (s == "line") return Geometry::Line;
    if (s == "graph") return Geometry::GraphShortestPath;
    throw ConfigError("unknown geometry: " + s);
}

BoundMode parseBoundMode(const std::string& s) {
    if (s == "uniform_l") return BoundMode::UniformL;
    if (s == "uniform_u") return BoundMode::UniformU;
    if (s == "both_uniform") return BoundMode::BothUniform;
    if (s == "two_l_le_u") return BoundMode::TwoLLeU;
    throw ConfigError("unknown bound mode: " + s);
}

namespace {

int randInt(std::mt19937_64& rng, int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Cost scaled(double v, Cost scale) {
    return static_cast<Cost>(std::llround(v * static_cast<double>(scale)));
}

// Coordinates in [0, 1000]^dim; distances materialized under the fixed-point
// scale, which keeps the rounded metric within the default triangle tolerance.
void euclidean(std::mt19937_64& rng, int n, int m, int dim, Instance& inst) {
    auto drawPoint = [&](std::vector<double>& p) {
        p.resize(dim);
        for (int d = 0; d < dim; ++d)
            p[d] = static_cast<double>(rng() % 1000001) / 1000.0;
    };
    std::vector<std::vector<double>> clients(n), facilities(m);
    for (auto& p : clients) drawPoint(p);
    for (auto& p : facilities) drawPoint(p);
    if (inst.kind == ProblemKind::LUkC) clients = facilities;

    auto d2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (int d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
        return std::sqrt(s);
    };
    inst.clientFacility.assign(n, std::vector<Cost>(m));
    inst.facilityFacility.assign(m, std::vector<Cost>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            inst.facilityFacility[a][b] =
                a == b ? 0 : scaled(d2(facilities[a], facilities[b]), inst.scale);
    for (int a = 0; a < m; ++a)  // enforce exact symmetry after rounding
        for (int b = a + 1; b < m; ++b) inst.facilityFacility[b][a] = inst.facilityFacility[a][b];
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            inst.clientFacility[j][i] =
                inst.kind == ProblemKind::LUkC && j == i
                    ? 0
                    : scaled(d2(clients[j], facilities[i]), inst.scale);
    if (inst.kind == ProblemKind::LUkC)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < m; ++i) inst.clientFacility[j][i] = inst.facilityFacility[j][i];
}

// Shortest-path closure of a random connected graph on the client and
// facility points; exact integral metric.
void graphMetric(std::mt19937_64& rng, int n, int m, Instance& inst) {
    int total = inst.kind == ProblemKind::LUkC ? m : n + m;
    std::vector<std::vector<Cost>> d(total, std::vector<Cost>(total, INT64_MAX / 4));
    for (int v = 0; v < total; ++v) d[v][v] = 0;
    auto addEdge = [&](int a, int b, Cost w) {
        d[a][b] = std::min(d[a][b], w);
        d[b][a] = d[a][b];
    };
    for (int v = 1; v < total; ++v)
        addEdge(v, randInt(rng, 0, v - 1), static_cast<Cost>(randInt(rng, 1, 1000)) * inst.scale);
    int extra = total;
    for (int e = 0; e < extra; ++e) {
        int a = randInt(rng, 0, total - 1), b = randInt(rng, 0, total - 1);
        if (a != b) addEdge(a, b, static_cast<Cost>(randInt(rng, 1, 1000)) * inst.scale);
    }
    for (int via = 0; via < total; ++via)
        for (int a = 0; a < total; ++a)
            for (int b = 0; b < total; ++b)
                d[a][b] = std::min(d[a][b], d[a][via] + d[via][b]);

    inst.clientFacility.assign(n, std::vector<Cost>(m));
    inst.facilityFacility.assign(m, std::vector<Cost>(m));
    int facBase = inst.kind == ProblemKind::LUkC ? 0 : n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) inst.clientFacility[j][i] = d[j][facBase + i];
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) inst.facilityFacility[a][b] = d[facBase + a][facBase + b];
}

void drawBounds(std::mt19937_64& rng, const GenSpec& spec, int attempt, Instance& inst) {
    const int m = inst.numFacilities;
    // Retries relax the lower range toward zero and stretch the upper range.
    int lMax = std::max(0, spec.lMax >> attempt);
    int lMin = std::min(std::max(0, spec.lMin), lMax);
    int uMin = std::max(1, spec.uMin);
    int uMax = std::max(uMin, spec.uMax * (1 + attempt));
    inst.lower.assign(m, 0);
    inst.upper.assign(m, 1);
    switch (spec.boundMode) {
        case BoundMode::UniformL: {
            int L = randInt(rng, lMin, lMax);
            for (int i = 0; i < m; ++i) {
                inst.lower[i] = L;
                inst.upper[i] = randInt(rng, std::max({1, L, uMin}), std::max({1, L, uMax}));
            }
            break;
        }
        case BoundMode::UniformU: {
            int U = randInt(rng, uMin, uMax);
            for (int i = 0; i < m; ++i) {
                inst.lower[i] = randInt(rng, std::min(lMin, U), std::min(lMax, U));
                inst.upper[i] = U;
            }
            break;
        }
        case BoundMode::BothUniform: {
            int L = randInt(rng, lMin, lMax);
            int U = randInt(rng, std::max({1, L, uMin}), std::max({1, L, uMax}));
            for (int i = 0; i < m; ++i) {
                inst.lower[i] = L;
                inst.upper[i] = U;
            }
            break;
        }
        case BoundMode::TwoLLeU: {
            int U = std::max(2, randInt(rng, uMin, uMax));
            for (int i = 0; i < m; ++i) {
                inst.upper[i] = U;
                inst.lower[i] = randInt(rng, std::min(lMin, U / 2), std::min(lMax, U / 2));
            }
            break;
        }
    }
}

// Some p <= k facilities (taken largest-capacity first) with total capacity
// >= n and total lower bound <= n; such a prefix admits a bounded assignment.
bool boundsFeasible(const Instance& inst) {
    const int n = inst.numClients;
    const int m = inst.numFacilities;
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return inst.upper[a] != inst.upper[b] ? inst.upper[a] > inst.upper[b] : a < b;
    });
    std::int64_t sumU = 0, sumL = 0;
    for (int p = 1; p <= std::min(inst.k, m); ++p) {
        sumU += inst.upper[idx[p - 1]];
        sumL += inst.lower[idx[p - 1]];
        if (sumU >= n && sumL <= n) return true;
    }
    return n == 0;
}

}  // namespace

Instance generate(const GenSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw GenError("n and m must be positive");
    std::mt19937_64 rng(spec.seed);

    Instance inst;
    inst.kind = spec.kind;
    inst.objective = (spec.kind == ProblemKind::LUkC || spec.kind == ProblemKind::LUkS)
                         ? Objective::MaxService
                         : Objective::SumService;
    inst.numFacilities = spec.m;
    inst.numClients = spec.kind == ProblemKind::LUkC ? spec.m : spec.n;

    switch (spec.geometry) {
        case Geometry::EuclideanPlane:
            euclidean(rng, inst.numClients, inst.numFacilities, 2, inst);
            break;
        case Geometry::Line:
            euclidean(rng, inst.numClients, inst.numFacilities, 1, inst);
            break;
        case Geometry::GraphShortestPath:
            graphMetric(rng, inst.numClients, inst.numFacilities, inst);
            break;
    }

    inst.openingCost.assign(inst.numFacilities, 0);
    if (spec.kind == ProblemKind::LUFL || spec.kind == ProblemKind::LUkFL)
        for (auto& f : inst.openingCost)
            f = static_cast<Cost>(randInt(rng, static_cast<int>(spec.fMin),
                                          static_cast<int>(std::max(spec.fMin, spec.fMax)))) *
                inst.scale;

    for (int attempt = 0; attempt < 100; ++attempt) {
        drawBounds(rng, spec, attempt, inst);
        if (spec.kind == ProblemKind::LUFL) {
            inst.k = inst.numFacilities;
        } else if (spec.k > 0) {
            inst.k = std::min(spec.k, inst.numFacilities);
        } else {
            // Smallest capacity-covering k plus one slack facility.
            std::vector<int> us = inst.upper;
            std::sort(us.begin(), us.end(), std::greater<int>());
            std::int64_t sum = 0;
            int need = inst.numFacilities;
            for (int p = 1; p <= inst.numFacilities; ++p) {
                sum += us[p - 1];
                if (sum >= inst.numClients) {
                    need = p;
                    break;
                }
            }
            inst.k = std::min(inst.numFacilities, need + 1);
        }
        if (boundsFeasible(inst)) return inst;
    }
    throw GenError("could not rescale bounds to a feasible instance within 100 attempts");
}

Instance adversarial_overflow(const GenSpec& spec, Rational eps, bool halvedMasses) {
    if (spec.boundMode != BoundMode::TwoLLeU)
        throw GenError("adversarial_overflow requires the two_l_le_u bound mode");
    if (eps.num <= 0) throw GenError("adversarial_overflow requires eps > 0");
    std::mt19937_64 rng(spec.seed);

    // One big cluster of U clients at the main facility A, a small carried
    // cluster of c clients near the never-opened member B, and an optional
    // far self-contained region. Overflow needs eps*U < c < L = U/2.
    int U = 0, carried = 0;
    for (int cand = 6; cand <= 40; cand += 2) {
        std::int64_t lo = static_cast<std::int64_t>(eps.num) * cand;  // need c*den > num*U
        int c = cand / 2 - 1;
        if (static_cast<std::int64_t>(c) * eps.den > lo) {
            U = cand;
            carried = c;
            break;
        }
    }
    if (U == 0)
        throw GenError("no overflow configuration exists at eps = " + eps.str() +
                       " with unit-capacity subsolvers");
    U += 2 * randInt(rng, 0, 4);
    carried = U / 2 - 1;
    if (halvedMasses) carried = std::max(1, carried / 2);
    const int L = U / 2;

    const bool farRegion = spec.m >= 3;
    Instance inst;
    inst.kind = ProblemKind::LUkM;
    inst.objective = Objective::SumService;
    inst.numFacilities = farRegion ? 3 : 2;
    inst.numClients = U + carried + (farRegion ? U : 0);

    double base = static_cast<double>(randInt(rng, 0, 100));
    double delta1 = 1.0 + randInt(rng, 0, 2);
    // delta2 = 2*delta1 keeps the single-facility lower-side optimum while
    // pricing the carried clients high enough that the Type-IV cost stays
    // within 1/eps of the Type-III cost.
    double delta2 = 2.0 * delta1;
    double farX = base + 100000.0;
    std::vector<double> fx = {base, base + delta2};
    if (farRegion) fx.push_back(farX);
    std::vector<double> cx;
    for (int j = 0; j < U; ++j) cx.push_back(base);
    for (int j = 0; j < carried; ++j) cx.push_back(base + delta1);
    if (farRegion)
        for (int j = 0; j < U; ++j) cx.push_back(farX);

    const int n = inst.numClients, m = inst.numFacilities;
    inst.clientFacility.assign(n, std::vector<Cost>(m));
    inst.facilityFacility.assign(m, std::vector<Cost>(m));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            inst.clientFacility[j][i] = scaled(std::abs(cx[j] - fx[i]), inst.scale);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            inst.facilityFacility[a][b] = scaled(std::abs(fx[a] - fx[b]), inst.scale);

    inst.openingCost.assign(m, 0);
    inst.lower.assign(m, L);
    inst.upper.assign(m, U);
    inst.k = farRegion ? 3 : 2;
    return inst;
}

}  // namespace luc
