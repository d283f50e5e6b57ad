#pragma once

#include <optional>
#include <vector>

#include "lucluster/model.hpp"

namespace luc::flow {

// Successive-shortest-path min-cost flow. Deterministic: arcs are relaxed in
// insertion order and augmentation follows the first shortest path found.
class MinCostFlow {
  public:
    explicit MinCostFlow(int numNodes);

    // Returns the edge index; the reverse edge is index ^ 1.
    int addEdge(int from, int to, std::int64_t cap, std::int64_t cost);

    // Push up to maxFlow units from s to t; returns {flow, cost}.
    std::pair<std::int64_t, std::int64_t> solve(int s, int t,
                                                std::int64_t maxFlow = INT64_MAX);

    std::int64_t flowOn(int edgeIndex) const;

  private:
    struct Edge {
        int to;
        std::int64_t cap;
        std::int64_t cost;
    };
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Assignment of all clients onto a fixed open facility set with effective
// per-facility bounds. Realizes the framework's bound-dropped sub-instances:
// lowerEff all zero when lower bounds are dropped, upperEff = n when upper
// bounds are dropped.
struct AssignmentProblem {
    const Instance* inst = nullptr;
    std::vector<int> openSet;    // facility ids, sorted
    std::vector<int> lowerEff;   // aligned with openSet
    std::vector<int> upperEff;   // aligned with openSet
    Objective objective = Objective::SumService;
};

struct AssignmentResult {
    std::vector<int> assign;  // client -> facility id
    Cost cost = 0;            // service sum (SumService) or threshold (MaxService)
};

// SumService: exact min-cost transportation plan. MaxService: smallest
// distance threshold admitting a feasible bounded assignment, searched over
// the sorted distinct client-facility distances. nullopt when infeasible.
std::optional<AssignmentResult> optimal_assignment(const AssignmentProblem& prob);

// True iff a feasible integral assignment exists using only edges of
// distance <= t.
bool feasible_at_threshold(const AssignmentProblem& prob, Cost t);

}  // namespace luc::flow
