#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace luc {

// Distances and costs are fixed-point scaled 64-bit integers so every
// inequality the verifier asserts is exact.
using Cost = std::int64_t;
constexpr Cost kDefaultScale = 1'000'000;

// Exact rational for violation factors (beta, epsilon). den > 0 always.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    static Rational fromDecimal(const std::string& text);
    std::string str() const;
    double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational ratAdd(Rational a, Rational b);
// a <=> b as -1/0/1
int ratCmp(Rational a, Rational b);
// value <= r * scale, exact in 128-bit
bool leScaled(std::int64_t value, Rational r, std::int64_t scale);

enum class Objective { SumService, MaxService };
enum class ProblemKind { LUkM, LUFL, LUkFL, LUkC, LUkS };

std::string objectiveName(Objective o);
std::string kindName(ProblemKind p);
Objective parseObjective(const std::string& s);
ProblemKind parseKind(const std::string& s);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instance {
    int numClients = 0;
    int numFacilities = 0;
    // clientFacility[j][i], facilityFacility[i1][i2]; both scaled.
    std::vector<std::vector<Cost>> clientFacility;
    std::vector<std::vector<Cost>> facilityFacility;
    std::vector<Cost> openingCost;
    std::vector<int> lower;
    std::vector<int> upper;
    int k = 1;
    Objective objective = Objective::SumService;
    ProblemKind kind = ProblemKind::LUkM;
    Cost scale = kDefaultScale;

    Cost dist(int client, int facility) const { return clientFacility[client][facility]; }
    Cost fdist(int a, int b) const { return facilityFacility[a][b]; }
};

struct Solution {
    std::vector<int> open;    // sorted, unique facility ids
    std::vector<int> assign;  // assign[j] = facility id, size numClients

    std::vector<int> loads(const Instance& inst) const;
};

struct CostBreakdown {
    Cost facilityCost = 0;
    Cost serviceSum = 0;
    Cost serviceMax = 0;
    Cost total = 0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool uniformLower = false;
    bool uniformUpper = false;
    bool twoLowerLeUpper = false;
    bool maxLowerLeMinUpper = false;
    bool coarseFeasible = false;

    bool ok() const { return violations.empty(); }
};

// Never throws; every broken invariant lands in the report. The cubic
// triangle-inequality scan only runs when checkTriangle is set.
ValidationReport validate_instance(const Instance& inst, bool checkTriangle = false,
                                   Cost triangleTol = 2);

// Throws StructuralError on unknown facility/client ids.
CostBreakdown evaluate_cost(const Instance& inst, const Solution& sol);

struct FeasibilityReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Per facility: lower[i] <= load(i) (hard) and load(i) <= ubFactor*upper[i],
// plus |open| <= k.
FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol, Rational ubFactor);

}  // namespace luc
