#include "lucluster/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lucluster/flow.hpp"

namespace luc {

bool GuaranteeReport::allHardPass() const {
    for (const auto& p : properties)
        if (p.hard && !p.pass) return false;
    return true;
}

const PropertyCheck* GuaranteeReport::find(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

std::optional<Solution> brute_force_opt(const Instance& inst, int facilityCap, int clientCap) {
    if (inst.numFacilities > facilityCap || inst.numClients > clientCap)
        throw SizeCapError("brute_force_opt caps exceeded (" + std::to_string(inst.numFacilities) +
                           " facilities, " + std::to_string(inst.numClients) + " clients)");
    if (inst.numClients == 0) return Solution{{}, {}};

    const int m = inst.numFacilities;
    std::optional<Solution> best;
    Cost bestCost = 0;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) > inst.k) continue;
        flow::AssignmentProblem prob;
        prob.inst = &inst;
        prob.objective = inst.objective;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) {
                prob.openSet.push_back(i);
                prob.lowerEff.push_back(inst.lower[i]);
                prob.upperEff.push_back(inst.upper[i]);
            }
        auto res = flow::optimal_assignment(prob);
        if (!res) continue;
        Cost cost = res->cost;
        if (inst.objective == Objective::SumService)
            for (int f : prob.openSet) cost += inst.openingCost[f];
        if (!best || cost < bestCost || (cost == bestCost && prob.openSet < best->open)) {
            best = Solution{prob.openSet, res->assign};
            bestCost = cost;
        }
    }
    return best;
}

namespace {

struct Checker {
    GuaranteeReport& rep;
    void add(const std::string& name, bool pass, bool hard, const std::string& witness) {
        rep.properties.push_back({name, pass, hard, pass ? "" : witness});
    }
};

}  // namespace

GuaranteeReport check_guarantees(const Instance& inst, const SubSolution& as1,
                                 const SubSolution& as2, const Solution& asI,
                                 const CombineTrace& trace, const CheckOptions& opts) {
    GuaranteeReport rep;
    Checker chk{rep};
    const int n = inst.numClients;

    ValidationReport val = validate_instance(inst);
    const bool theoremPre = (val.uniformLower || val.uniformUpper) && val.maxLowerLeMinUpper;

    rep.betaEmpirical = empirical_beta(inst, as2.solution);
    rep.betaUsed = as2.declaredBeta;
    if (opts.strictBeta && ratCmp(rep.betaEmpirical, rep.betaUsed) > 0)
        rep.betaUsed = rep.betaEmpirical;

    Instance subLower = derive_sub_instance(inst, Side::LowerBounded);
    Instance subUpper = derive_sub_instance(inst, Side::UpperBounded);
    CostBreakdown cost1 = evaluate_cost(subLower, as1.solution);
    CostBreakdown cost2 = evaluate_cost(subUpper, as2.solution);
    CostBreakdown costI = evaluate_cost(inst, asI);
    rep.costAs1 = cost1.total;
    rep.costAs2 = cost2.total;
    rep.costAsI = costI.total;

    auto loads = asI.loads(inst);
    const auto& sigma1 = as1.solution.assign;
    const auto& sigma2 = as2.solution.assign;
    const auto& sigmaHat = trace.sigmaHat;

    // 1. Lower bounds on every opened facility.
    {
        bool pass = true;
        std::string wit;
        for (int f : asI.open)
            if (loads[f] < inst.lower[f]) {
                pass = false;
                wit = "facility " + std::to_string(f) + " load " + std::to_string(loads[f]) +
                      " < L = " + std::to_string(inst.lower[f]);
                break;
            }
        chk.add("lower-bounds", pass, true, wit);
    }

    // 2. Upper-bound violation cap: (beta+1) basic, (beta+eps) relaxed.
    {
        Rational cap = opts.variant == Variant::Basic ? ratAdd(rep.betaUsed, {1, 1})
                                                      : ratAdd(rep.betaUsed, opts.eps);
        bool pass = true;
        std::string wit;
        for (int f : asI.open)
            if (!leScaled(loads[f], cap, inst.upper[f])) {
                pass = false;
                wit = "facility " + std::to_string(f) + " load " + std::to_string(loads[f]) +
                      " > " + cap.str() + " * U = " + cap.str() + "*" +
                      std::to_string(inst.upper[f]);
                break;
            }
        chk.add("upper-bound-cap", pass, theoremPre, wit);
    }

    // 3. Cardinality: at most |F2| facilities, and at most k.
    {
        bool pass = asI.open.size() <= as2.solution.open.size() &&
                    static_cast<int>(asI.open.size()) <= inst.k;
        chk.add("cardinality", pass, true,
                "opened " + std::to_string(asI.open.size()) + ", |F2| = " +
                    std::to_string(as2.solution.open.size()) + ", k = " + std::to_string(inst.k));
    }

    // 4. Cycle breaking preserves per-facility cardinalities of sigma1.
    {
        bool pass = sigmaHat.size() == sigma1.size();
        std::string wit = "sigmaHat size mismatch";
        if (pass) {
            std::map<int, int> c1, ch;
            for (int f : sigma1) c1[f]++;
            for (int f : sigmaHat) ch[f]++;
            if (c1 != ch) {
                pass = false;
                wit = "per-facility cardinalities differ between sigma1 and sigmaHat";
            }
        }
        chk.add("cycle-cardinality-preservation", pass, true, wit);
    }

    // 5. Reroute cost lemma: d(j, sigmaHat(j)) <= d(j, sigma1(j)) + 2 d(j, sigma2(j)).
    {
        bool pass = true;
        std::string wit;
        for (int j = 0; j < n; ++j)
            if (inst.dist(j, sigmaHat[j]) >
                inst.dist(j, sigma1[j]) + 2 * inst.dist(j, sigma2[j])) {
                pass = false;
                wit = "client " + std::to_string(j);
                break;
            }
        chk.add("reroute-cost-lemma", pass, true, wit);
    }

    // 6. Per-client output bound for Type I/II/III assignments.
    Cost serviceTypeIII = 0, serviceTypeIV = 0;
    {
        bool pass = true;
        std::string wit;
        for (int j = 0; j < n; ++j) {
            const TraceEntry& e = trace.clients[j];
            Cost d = inst.dist(j, asI.assign[j]);
            if (e.type == AssignType::TypeIII) serviceTypeIII += d;
            if (e.type == AssignType::TypeIV) {
                serviceTypeIV += d;
                continue;
            }
            if (d > 2 * inst.dist(j, sigma1[j]) + 7 * inst.dist(j, sigma2[j])) {
                pass = false;
                if (wit.empty())
                    wit = "client " + std::to_string(j) + " type " + assignTypeName(e.type) +
                          ": " + std::to_string(d) + " > 2*" +
                          std::to_string(inst.dist(j, sigma1[j])) + " + 7*" +
                          std::to_string(inst.dist(j, sigma2[j]));
            }
        }
        chk.add("per-client-cost", pass, theoremPre, wit);
    }

    // 7. Aggregates.
    chk.add("aggregate-facility-cost", costI.facilityCost <= cost1.facilityCost + cost2.facilityCost,
            true,
            std::to_string(costI.facilityCost) + " > " +
                std::to_string(cost1.facilityCost + cost2.facilityCost));
    if (opts.variant == Variant::Basic) {
        chk.add("aggregate-service-cost",
                costI.serviceSum <= 2 * cost1.serviceSum + 7 * cost2.serviceSum, theoremPre,
                std::to_string(costI.serviceSum) + " > 2*" + std::to_string(cost1.serviceSum) +
                    " + 7*" + std::to_string(cost2.serviceSum));
    } else {
        // 8. Relaxed charging: Type-IV total at most (1/eps) of Type-III total,
        // and the implied global service bound.
        bool charge = static_cast<__int128>(serviceTypeIV) * opts.eps.num <=
                      static_cast<__int128>(serviceTypeIII) * opts.eps.den;
        chk.add("relaxed-type4-charging", charge, theoremPre,
                "type-IV " + std::to_string(serviceTypeIV) + " vs type-III " +
                    std::to_string(serviceTypeIII) + " at eps = " + opts.eps.str());
        // SCost <= (1 + 1/eps) * (2 S1 + 7 S2), exact in 128-bit:
        // eps*SCost <= (eps + 1) * (2 S1 + 7 S2).
        __int128 lhs = static_cast<__int128>(opts.eps.num) * costI.serviceSum;
        __int128 rhs = static_cast<__int128>(opts.eps.num + opts.eps.den) *
                       (2 * cost1.serviceSum + 7 * cost2.serviceSum);
        chk.add("relaxed-aggregate-service-cost", lhs <= rhs, theoremPre,
                "global relaxed service bound violated");
    }

    // 9. Almost-DAG and stored edge weights match a recomputation.
    {
        bool pass = true;
        std::string wit;
        if (n > 0) {
            StarForest sf = build_star_forest(as1.solution.open, as2.solution.open, inst);
            DependencyGraph g = build_dependency_graph(sf, sigmaHat, sigma2);
            if (!g.isAlmostDag()) {
                pass = false;
                wit = "non-self-loop cycle remains";
            } else {
                std::map<std::pair<int, int>, std::int64_t> stored;
                for (const auto& e : trace.finalEdges) stored[{static_cast<int>(e[0]),
                                                               static_cast<int>(e[1])}] = e[2];
                std::map<std::pair<int, int>, std::int64_t> recomputed;
                for (const auto& [edge, w] : g.weights)
                    if (w > 0) recomputed[edge] = w;
                if (stored != recomputed) {
                    pass = false;
                    wit = "stored dependency weights differ from recomputation";
                }
            }
        }
        chk.add("almost-dag", pass, true, wit);
    }

    // 10. Settlement: the trace covers every client exactly once and matches
    // the output assignment.
    {
        bool pass = static_cast<int>(trace.clients.size()) == n;
        std::string wit = "trace size mismatch";
        for (int j = 0; pass && j < n; ++j) {
            if (trace.clients[j].facility < 0) {
                pass = false;
                wit = "client " + std::to_string(j) + " unsettled";
            } else if (trace.clients[j].facility != asI.assign[j]) {
                pass = false;
                wit = "client " + std::to_string(j) + " trace/assignment mismatch";
            }
        }
        chk.add("settlement", pass, true, wit);
    }

    // 11. MaxService corollary.
    if (inst.objective == Objective::MaxService) {
        bool pass = costI.serviceMax <= 2 * cost1.serviceMax + 7 * cost2.serviceMax;
        chk.add("max-service-bound", pass, theoremPre,
                std::to_string(costI.serviceMax) + " > 2*" + std::to_string(cost1.serviceMax) +
                    " + 7*" + std::to_string(cost2.serviceMax));
    }

    // Oracle sandwich checks, asserted only for exact subsolvers.
    if (opts.opt) rep.costOpt = evaluate_cost(inst, *opts.opt).total;
    if (opts.opt && opts.exactSubsolvers) {
        CostBreakdown costO = evaluate_cost(inst, *opts.opt);
        chk.add("sandwich-as1", cost1.total <= costO.total, true,
                std::to_string(cost1.total) + " > OPT " + std::to_string(costO.total));
        chk.add("sandwich-as2", cost2.total <= costO.total, true,
                std::to_string(cost2.total) + " > OPT " + std::to_string(costO.total));
        if (inst.objective == Objective::SumService && opts.variant == Variant::Basic)
            chk.add("nine-opt", costI.total <= 9 * costO.total, theoremPre,
                    std::to_string(costI.total) + " > 9 * " + std::to_string(costO.total));
    }

    return rep;
}

}  // namespace luc
