#include "lucluster/flow.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>

namespace luc::flow {

MinCostFlow::MinCostFlow(int numNodes) : n_(numNodes), adj_(numNodes) {}

int MinCostFlow::addEdge(int from, int to, std::int64_t cap, std::int64_t cost) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap, cost});
    edges_.push_back({from, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
}

std::pair<std::int64_t, std::int64_t> MinCostFlow::solve(int s, int t, std::int64_t maxFlow) {
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::int64_t flow = 0, cost = 0;
    std::vector<std::int64_t> dist(n_);
    std::vector<int> prevEdge(n_);
    std::vector<bool> inQueue(n_);

    while (flow < maxFlow) {
        // SPFA; costs from lower-bound reductions stay nonnegative but the
        // residual network carries negative reverse arcs.
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prevEdge.begin(), prevEdge.end(), -1);
        std::fill(inQueue.begin(), inQueue.end(), false);
        dist[s] = 0;
        std::deque<int> queue{s};
        inQueue[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            inQueue[u] = false;
            for (int id : adj_[u]) {
                const Edge& e = edges_[id];
                if (e.cap <= 0) continue;
                std::int64_t nd = dist[u] + e.cost;
                if (nd < dist[e.to]) {
                    dist[e.to] = nd;
                    prevEdge[e.to] = id;
                    if (!inQueue[e.to]) {
                        queue.push_back(e.to);
                        inQueue[e.to] = true;
                    }
                }
            }
        }
        if (dist[t] >= kInf) break;

        std::int64_t push = maxFlow - flow;
        for (int v = t; v != s;) {
            int id = prevEdge[v];
            push = std::min(push, edges_[id].cap);
            v = edges_[id ^ 1].to;
        }
        for (int v = t; v != s;) {
            int id = prevEdge[v];
            edges_[id].cap -= push;
            edges_[id ^ 1].cap += push;
            v = edges_[id ^ 1].to;
        }
        flow += push;
        cost += push * dist[t];
    }
    return {flow, cost};
}

std::int64_t MinCostFlow::flowOn(int edgeIndex) const {
    return edges_[edgeIndex ^ 1].cap;
}

namespace {

// Bipartite assignment network with per-facility load bounds, built as a
// circulation with the standard lower-bound reduction. Edges above the
// distance threshold are dropped when threshold >= 0.
//
// Nodes: 0 = s, 1..n = clients, n+1..n+p = facilities, n+p+1 = t,
//        n+p+2 = superSource, n+p+3 = superSink.
struct Network {
    MinCostFlow mcf;
    std::int64_t required;                 // flow superSource -> superSink at feasibility
    std::vector<std::vector<int>> cfEdge;  // client x open-facility -> edge id (-1 if absent)
    int superSource, superSink;

    Network(const AssignmentProblem& prob, bool withCosts, Cost threshold)
        : mcf(prob.inst->numClients + static_cast<int>(prob.openSet.size()) + 4),
          required(0),
          cfEdge(prob.inst->numClients,
                 std::vector<int>(prob.openSet.size(), -1)) {
        const int n = prob.inst->numClients;
        const int p = static_cast<int>(prob.openSet.size());
        const int s = 0, t = n + p + 1;
        superSource = n + p + 2;
        superSink = n + p + 3;

        // s -> client, lower bound 1: mandatory unit via the super pair.
        for (int j = 0; j < n; ++j) {
            mcf.addEdge(superSource, 1 + j, 1, 0);
            mcf.addEdge(s, superSink, 1, 0);
            required += 1;
        }
        for (int j = 0; j < n; ++j) {
            for (int q = 0; q < p; ++q) {
                Cost d = prob.inst->dist(j, prob.openSet[q]);
                if (threshold >= 0 && d > threshold) continue;
                cfEdge[j][q] = mcf.addEdge(1 + j, n + 1 + q, 1, withCosts ? d : 0);
            }
        }
        for (int q = 0; q < p; ++q) {
            int lo = prob.lowerEff[q];
            int hi = prob.upperEff[q];
            if (lo > 0) {
                mcf.addEdge(superSource, t, lo, 0);
                mcf.addEdge(n + 1 + q, superSink, lo, 0);
                required += lo;
            }
            if (hi > lo) mcf.addEdge(n + 1 + q, t, hi - lo, 0);
        }
        mcf.addEdge(t, s, n, 0);
    }
};

std::optional<AssignmentResult> solveAt(const AssignmentProblem& prob, Cost threshold,
                                        bool withCosts) {
    Network net(prob, withCosts, threshold);
    auto [flow, cost] = net.mcf.solve(net.superSource, net.superSink);
    if (flow != net.required) return std::nullopt;
    AssignmentResult out;
    out.assign.assign(prob.inst->numClients, -1);
    out.cost = cost;
    for (int j = 0; j < prob.inst->numClients; ++j)
        for (size_t q = 0; q < prob.openSet.size(); ++q) {
            int id = net.cfEdge[j][q];
            if (id >= 0 && net.mcf.flowOn(id) > 0) out.assign[j] = prob.openSet[q];
        }
    return out;
}

}  // namespace

bool feasible_at_threshold(const AssignmentProblem& prob, Cost t) {
    if (prob.inst->numClients == 0) return true;
    if (prob.openSet.empty()) return false;
    return solveAt(prob, t, false).has_value();
}

std::optional<AssignmentResult> optimal_assignment(const AssignmentProblem& prob) {
    const int n = prob.inst->numClients;
    if (n == 0) return AssignmentResult{{}, 0};
    if (prob.openSet.empty()) return std::nullopt;

    std::int64_t sumLo = std::accumulate(prob.lowerEff.begin(), prob.lowerEff.end(), 0LL);
    std::int64_t sumHi = std::accumulate(prob.upperEff.begin(), prob.upperEff.end(), 0LL);
    if (sumLo > n || sumHi < n) return std::nullopt;

    if (prob.objective == Objective::SumService) return solveAt(prob, -1, true);

    // MaxService: the optimum threshold is always an input distance.
    std::vector<Cost> values;
    for (int j = 0; j < n; ++j)
        for (int f : prob.openSet) values.push_back(prob.inst->dist(j, f));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    int lo = 0, hi = static_cast<int>(values.size()) - 1;
    if (!feasible_at_threshold(prob, values[hi])) return std::nullopt;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible_at_threshold(prob, values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    // Min-cost assignment under the winning threshold keeps the output
    // deterministic and the realized maximum equal to the threshold bound.
    auto res = solveAt(prob, values[lo], true);
    assert(res.has_value());
    res->cost = values[lo];
    return res;
}

}  // namespace luc::flow
