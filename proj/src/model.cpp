#include "lucluster/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace luc {

namespace {
std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

Rational normalize(Rational r) {
    if (r.den < 0) {
        r.num = -r.num;
        r.den = -r.den;
    }
    std::int64_t g = gcd64(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}
}  // namespace

Rational Rational::fromDecimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = fromDecimal(s.substr(0, slash));
        Rational den = fromDecimal(s.substr(slash + 1));
        if (num.den != 1 || den.den != 1 || den.num == 0)
            throw ConfigError("bad rational: " + text);
        return normalize({neg ? -num.num : num.num, den.num});
    }
    auto dot = s.find('.');
    std::string intPart = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fracPart = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (intPart.empty() && fracPart.empty()) throw ConfigError("bad rational: " + text);
    for (char c : intPart + fracPart)
        if (c < '0' || c > '9') throw ConfigError("bad rational: " + text);
    if (fracPart.size() > 12) throw ConfigError("rational precision cap exceeded: " + text);
    std::int64_t den = 1;
    for (size_t i = 0; i < fracPart.size(); ++i) den *= 10;
    std::int64_t num = 0;
    for (char c : intPart + fracPart) num = num * 10 + (c - '0');
    if (neg) num = -num;
    return normalize({num, den});
}

std::string Rational::str() const {
    Rational r = normalize(*this);
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational ratAdd(Rational a, Rational b) {
    return normalize({a.num * b.den + b.num * a.den, a.den * b.den});
}

int ratCmp(Rational a, Rational b) {
    __int128 lhs = static_cast<__int128>(a.num) * b.den;
    __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

bool leScaled(std::int64_t value, Rational r, std::int64_t scale) {
    return static_cast<__int128>(value) * r.den <= static_cast<__int128>(r.num) * scale;
}

std::string objectiveName(Objective o) {
    return o == Objective::SumService ? "sum" : "max";
}

std::string kindName(ProblemKind p) {
    switch (p) {
        case ProblemKind::LUkM: return "LUkM";
        case ProblemKind::LUFL: return "LUFL";
        case ProblemKind::LUkFL: return "LUkFL";
        case ProblemKind::LUkC: return "LUkC";
        case ProblemKind::LUkS: return "LUkS";
    }
    return "?";
}

Objective parseObjective(const std::string& s) {
    if (s == "sum") return Objective::SumService;
    if (s == "max") return Objective::MaxService;
    throw ConfigError("unknown objective: " + s);
}

ProblemKind parseKind(const std::string& s) {
    if (s == "LUkM") return ProblemKind::LUkM;
    if (s == "LUFL") return ProblemKind::LUFL;
    if (s == "LUkFL") return ProblemKind::LUkFL;
    if (s == "LUkC") return ProblemKind::LUkC;
    if (s == "LUkS") return ProblemKind::LUkS;
    throw ConfigError("unknown problem kind: " + s);
}

std::vector<int> Solution::loads(const Instance& inst) const {
    std::vector<int> out(inst.numFacilities, 0);
    for (int f : assign) {
        if (f >= 0 && f < inst.numFacilities) out[f]++;
    }
    return out;
}

ValidationReport validate_instance(const Instance& inst, bool checkTriangle, Cost triangleTol) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    const int n = inst.numClients;
    const int m = inst.numFacilities;
    if (m <= 0) bad("no facilities");
    if (n < 0) bad("negative client count");
    if (static_cast<int>(inst.clientFacility.size()) != n) bad("clientFacility row count mismatch");
    for (const auto& row : inst.clientFacility)
        if (static_cast<int>(row.size()) != m) bad("clientFacility column count mismatch");
    if (static_cast<int>(inst.facilityFacility.size()) != m) bad("facilityFacility row count mismatch");
    for (const auto& row : inst.facilityFacility)
        if (static_cast<int>(row.size()) != m) bad("facilityFacility column count mismatch");
    if (static_cast<int>(inst.lower.size()) != m || static_cast<int>(inst.upper.size()) != m ||
        static_cast<int>(inst.openingCost.size()) != m)
        bad("bound/cost vector size mismatch");
    if (!rep.violations.empty()) return rep;  // shapes broken, nothing below is meaningful

    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            if (inst.clientFacility[j][i] < 0) {
                bad("negative distance at client " + std::to_string(j) + ", facility " +
                    std::to_string(i));
                j = n;
                break;
            }
    for (int a = 0; a < m; ++a) {
        if (inst.facilityFacility[a][a] != 0)
            bad("nonzero facility self-distance at " + std::to_string(a));
        for (int b = 0; b < m; ++b) {
            if (inst.facilityFacility[a][b] < 0) bad("negative facility distance");
            if (inst.facilityFacility[a][b] != inst.facilityFacility[b][a]) {
                bad("asymmetric facility distance at pair (" + std::to_string(a) + "," +
                    std::to_string(b) + ")");
                a = m;
                break;
            }
        }
    }

    for (int i = 0; i < m; ++i) {
        if (inst.lower[i] < 0) bad("negative lower bound at facility " + std::to_string(i));
        if (inst.upper[i] <= 0) bad("nonpositive upper bound at facility " + std::to_string(i));
        if (inst.lower[i] > inst.upper[i])
            bad("lower bound exceeds upper bound at facility " + std::to_string(i));
        if (inst.openingCost[i] < 0) bad("negative opening cost at facility " + std::to_string(i));
    }
    if (inst.k <= 0) bad("nonpositive k");

    if (inst.kind == ProblemKind::LUkM || inst.kind == ProblemKind::LUkC ||
        inst.kind == ProblemKind::LUkS) {
        for (int i = 0; i < m; ++i)
            if (inst.openingCost[i] != 0) {
                bad("nonzero opening cost in " + kindName(inst.kind));
                break;
            }
    }
    if (inst.kind == ProblemKind::LUFL && inst.k != m) bad("LUFL requires k = |F|");
    if (inst.kind == ProblemKind::LUkC) {
        if (n != m) {
            bad("LUkC requires clients and facilities to index the same point set");
        } else {
            for (int j = 0; j < n && rep.violations.empty(); ++j)
                for (int i = 0; i < m; ++i)
                    if (inst.clientFacility[j][i] != inst.facilityFacility[j][i]) {
                        bad("LUkC client/facility distance mismatch at (" + std::to_string(j) +
                            "," + std::to_string(i) + ")");
                        j = n;
                        break;
                    }
        }
    }
    if ((inst.kind == ProblemKind::LUkM || inst.kind == ProblemKind::LUkS ||
         inst.kind == ProblemKind::LUkFL || inst.kind == ProblemKind::LUFL) &&
        inst.kind != ProblemKind::LUkC) {
        // F and C disjoint for these kinds; dense indexing keeps them disjoint
        // by construction, so there is nothing to check here.
    }

    if (checkTriangle) {
        // Triangles with all three sides representable: (c, f, f') and (f, f', f'').
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (inst.clientFacility[j][a] >
                        inst.clientFacility[j][b] + inst.facilityFacility[b][a] + triangleTol) {
                        bad("triangle inequality violated at client " + std::to_string(j) +
                            ", facilities " + std::to_string(a) + "," + std::to_string(b));
                        j = n;
                        a = m;
                        break;
                    }
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (inst.facilityFacility[a][b] >
                        inst.facilityFacility[a][c] + inst.facilityFacility[c][b] + triangleTol) {
                        bad("triangle inequality violated at facilities " + std::to_string(a) +
                            "," + std::to_string(b) + "," + std::to_string(c));
                        a = m;
                        b = m;
                        break;
                    }
    }

    rep.uniformLower =
        std::all_of(inst.lower.begin(), inst.lower.end(), [&](int v) { return v == inst.lower[0]; });
    rep.uniformUpper =
        std::all_of(inst.upper.begin(), inst.upper.end(), [&](int v) { return v == inst.upper[0]; });
    int maxL = *std::max_element(inst.lower.begin(), inst.lower.end());
    int minU = *std::min_element(inst.upper.begin(), inst.upper.end());
    rep.maxLowerLeMinUpper = maxL <= minU;
    rep.twoLowerLeUpper = true;
    for (int i = 0; i < m; ++i)
        if (2 * inst.lower[i] > inst.upper[i]) rep.twoLowerLeUpper = false;

    // Coarse feasibility: some p <= k with the p smallest L summing <= n and
    // the p largest U summing >= n.
    std::vector<int> ls = inst.lower, us = inst.upper;
    std::sort(ls.begin(), ls.end());
    std::sort(us.begin(), us.end(), std::greater<int>());
    rep.coarseFeasible = (n == 0);
    std::int64_t sumL = 0, sumU = 0;
    for (int p = 1; p <= std::min(inst.k, m); ++p) {
        sumL += ls[p - 1];
        sumU += us[p - 1];
        if (sumL <= n && sumU >= n) {
            rep.coarseFeasible = true;
            break;
        }
    }
    return rep;
}

CostBreakdown evaluate_cost(const Instance& inst, const Solution& sol) {
    CostBreakdown out;
    if (static_cast<int>(sol.assign.size()) != inst.numClients)
        throw StructuralError("assignment size does not match client count");
    std::vector<bool> openMask(inst.numFacilities, false);
    for (int f : sol.open) {
        if (f < 0 || f >= inst.numFacilities)
            throw StructuralError("unknown facility id in open set: " + std::to_string(f));
        openMask[f] = true;
        out.facilityCost += inst.openingCost[f];
    }
    for (int j = 0; j < inst.numClients; ++j) {
        int f = sol.assign[j];
        if (f < 0 || f >= inst.numFacilities)
            throw StructuralError("unknown facility id in assignment: " + std::to_string(f));
        if (!openMask[f])
            throw StructuralError("client " + std::to_string(j) + " assigned to closed facility " +
                                  std::to_string(f));
        Cost d = inst.dist(j, f);
        out.serviceSum += d;
        out.serviceMax = std::max(out.serviceMax, d);
    }
    out.total = inst.objective == Objective::SumService ? out.facilityCost + out.serviceSum
                                                        : out.serviceMax;
    return out;
}

FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol, Rational ubFactor) {
    FeasibilityReport rep;
    auto loads = sol.loads(inst);
    std::vector<bool> openMask(inst.numFacilities, false);
    for (int f : sol.open) openMask[f] = true;
    for (int i = 0; i < inst.numFacilities; ++i) {
        if (openMask[i] && loads[i] < inst.lower[i])
            rep.violations.push_back("facility " + std::to_string(i) + " load " +
                                     std::to_string(loads[i]) + " below lower bound " +
                                     std::to_string(inst.lower[i]));
        if (!leScaled(loads[i], ubFactor, inst.upper[i]))
            rep.violations.push_back("facility " + std::to_string(i) + " load " +
                                     std::to_string(loads[i]) + " above " + ubFactor.str() +
                                     " * upper bound " + std::to_string(inst.upper[i]));
        if (!openMask[i] && loads[i] > 0)
            rep.violations.push_back("closed facility " + std::to_string(i) + " has load");
    }
    if (static_cast<int>(sol.open.size()) > inst.k)
        rep.violations.push_back("cardinality " + std::to_string(sol.open.size()) + " exceeds k = " +
                                 std::to_string(inst.k));
    return rep;
}

}  // namespace luc
