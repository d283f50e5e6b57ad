#include "lucluster/subsolve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lucluster/flow.hpp"

namespace luc {

namespace {

flow::AssignmentProblem makeProblem(const Instance& sub, std::vector<int> openSet) {
    flow::AssignmentProblem prob;
    prob.inst = &sub;
    prob.objective = sub.objective;
    prob.lowerEff.reserve(openSet.size());
    prob.upperEff.reserve(openSet.size());
    for (int f : openSet) {
        prob.lowerEff.push_back(sub.lower[f]);
        prob.upperEff.push_back(sub.upper[f]);
    }
    prob.openSet = std::move(openSet);
    return prob;
}

Cost totalCost(const Instance& sub, const std::vector<int>& open, Cost serviceCost) {
    if (sub.objective == Objective::MaxService) return serviceCost;
    Cost fc = 0;
    for (int f : open) fc += sub.openingCost[f];
    return fc + serviceCost;
}

}  // namespace

std::string sideName(Side s) {
    return s == Side::LowerBounded ? "lower" : "upper";
}

Instance derive_sub_instance(const Instance& inst, Side side) {
    Instance sub = inst;
    if (side == Side::LowerBounded) {
        std::fill(sub.upper.begin(), sub.upper.end(),
                  std::max(1, inst.numClients));  // finite sentinel: no load can exceed n
        if (inst.objective == Objective::SumService) sub.k = inst.numFacilities;
        if (inst.kind == ProblemKind::LUkM)
            std::fill(sub.openingCost.begin(), sub.openingCost.end(), 0);
    } else {
        std::fill(sub.lower.begin(), sub.lower.end(), 0);
    }
    return sub;
}

std::optional<SubSolution> solve_exact(const Instance& sub, Side side) {
    const int m = sub.numFacilities;
    if (m > 20) throw SizeCapError("solve_exact supports at most 20 facilities");
    if (sub.numClients == 0) return SubSolution{Solution{{}, {}}, {1, 1}, side};

    std::optional<Solution> best;
    Cost bestCost = 0;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) > sub.k) continue;
        std::vector<int> open;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) open.push_back(i);
        auto res = flow::optimal_assignment(makeProblem(sub, open));
        if (!res) continue;
        Cost cost = totalCost(sub, open, res->cost);
        // Lexicographically smallest open set wins ties; subsets are visited
        // in mask order, which is not lex order, so compare explicitly.
        if (!best || cost < bestCost || (cost == bestCost && open < best->open)) {
            best = Solution{open, res->assign};
            bestCost = cost;
        }
    }
    if (!best) return std::nullopt;
    return SubSolution{*best, {1, 1}, side};
}

std::optional<SubSolution> solve_greedy_lower(const Instance& sub) {
    const int m = sub.numFacilities;
    const int n = sub.numClients;
    if (n == 0) return SubSolution{Solution{{}, {}}, {1, 1}, Side::LowerBounded};

    // Gonzalez-style farthest-first ordering over the facility set.
    std::vector<int> order;
    order.push_back(0);
    std::vector<Cost> minDist(m);
    for (int i = 0; i < m; ++i) minDist[i] = sub.fdist(i, 0);
    while (static_cast<int>(order.size()) < m) {
        int pick = -1;
        for (int i = 0; i < m; ++i) {
            if (std::find(order.begin(), order.end(), i) != order.end()) continue;
            if (pick < 0 || minDist[i] > minDist[pick]) pick = i;
        }
        order.push_back(pick);
        for (int i = 0; i < m; ++i) minDist[i] = std::min(minDist[i], sub.fdist(i, pick));
    }

    // Largest p <= k whose chosen lower bounds fit n clients.
    int pMax = 0;
    std::int64_t sumL = 0;
    for (int p = 1; p <= std::min(sub.k, m); ++p) {
        sumL += sub.lower[order[p - 1]];
        if (sumL > n) break;
        pMax = p;
    }
    for (int p = pMax; p >= 1; --p) {
        std::vector<int> open(order.begin(), order.begin() + p);
        std::sort(open.begin(), open.end());
        auto res = flow::optimal_assignment(makeProblem(sub, open));
        if (res) return SubSolution{Solution{open, res->assign}, {1, 1}, Side::LowerBounded};
    }
    // The first seed's lower bound may not fit even though another facility's
    // does; fall back to the single smallest-L facility before giving up.
    int fallback = static_cast<int>(std::min_element(sub.lower.begin(), sub.lower.end()) -
                                    sub.lower.begin());
    if (sub.lower[fallback] <= n) {
        std::vector<int> open{fallback};
        auto res = flow::optimal_assignment(makeProblem(sub, open));
        if (res) return SubSolution{Solution{open, res->assign}, {1, 1}, Side::LowerBounded};
    }
    return std::nullopt;
}

std::optional<SubSolution> solve_greedy_upper(const Instance& sub) {
    const int m = sub.numFacilities;
    const int n = sub.numClients;
    if (n == 0) return SubSolution{Solution{{}, {}}, {1, 1}, Side::UpperBounded};

    std::vector<bool> opened(m, false), covered(n, false);
    std::vector<int> open;
    int uncovered = n;
    while (uncovered > 0 && static_cast<int>(open.size()) < sub.k) {
        int pick = -1;
        Cost pickCost = 0;
        int pickCover = 0;
        std::vector<int> pickClients;
        for (int i = 0; i < m; ++i) {
            if (opened[i]) continue;
            std::vector<int> cand;
            cand.reserve(n);
            for (int j = 0; j < n; ++j)
                if (!covered[j]) cand.push_back(j);
            int take = std::min<int>(sub.upper[i], static_cast<int>(cand.size()));
            std::partial_sort(cand.begin(), cand.begin() + take, cand.end(),
                              [&](int a, int b) {
                                  Cost da = sub.dist(a, i), db = sub.dist(b, i);
                                  return da != db ? da < db : a < b;
                              });
            Cost cost = sub.openingCost[i];
            for (int q = 0; q < take; ++q) cost += sub.dist(cand[q], i);
            // Prefer larger coverage, then cheaper, then lower index.
            if (pick < 0 || take > pickCover || (take == pickCover && cost < pickCost)) {
                pick = i;
                pickCost = cost;
                pickCover = take;
                pickClients.assign(cand.begin(), cand.begin() + take);
            }
        }
        if (pick < 0 || pickCover == 0) break;
        opened[pick] = true;
        open.push_back(pick);
        for (int j : pickClients) covered[j] = true;
        uncovered -= pickCover;
    }
    if (uncovered > 0) return std::nullopt;

    std::sort(open.begin(), open.end());
    auto res = flow::optimal_assignment(makeProblem(sub, open));
    if (!res) return std::nullopt;
    return SubSolution{Solution{open, res->assign}, {1, 1}, Side::UpperBounded};
}

std::optional<SubSolution> solve_side(const Instance& original, Side side,
                                      const std::string& backend) {
    Instance sub = derive_sub_instance(original, side);
    if (backend == "exact") return solve_exact(sub, side);
    if (backend == "greedy")
        return side == Side::LowerBounded ? solve_greedy_lower(sub) : solve_greedy_upper(sub);
    throw ConfigError("unknown subsolver backend: " + backend);
}

}  // namespace luc
