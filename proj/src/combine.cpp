#include "lucluster/combine.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <sstream>

namespace luc {

namespace {

std::int64_t floorMul(Rational r, std::int64_t v) {
    return static_cast<std::int64_t>(static_cast<__int128>(r.num) * v / r.den);
}

// value <= r * bound, exact
bool withinFactor(std::int64_t value, Rational r, std::int64_t bound) {
    return leScaled(value, r, bound);
}

// Members in decreasing distance from the center. Ties put the duplicate
// occurrence of the center last (it sits at distance zero and must be the
// terminal member), then lower facility index first.
std::vector<int> orderedMembers(int center, const StarForest& sf, const Instance& inst) {
    std::vector<int> mem = sf.stars.at(center);
    std::stable_sort(mem.begin(), mem.end(), [&](int a, int b) {
        Cost da = inst.fdist(a, center), db = inst.fdist(b, center);
        if (da != db) return da > db;
        bool dupA = sf.duplicates.count(a) > 0, dupB = sf.duplicates.count(b) > 0;
        if (dupA != dupB) return dupB;  // duplicate sorts later
        return a < b;
    });
    return mem;
}

struct StarWork {
    std::vector<int> members;              // sweep order
    std::map<int, std::vector<int>> need;  // member -> unsettled sigma2 clients, ascending
    std::vector<int> reserved;
};

StarWork prepareStar(int center, const StarForest& sf, CombineState& state, const Instance& inst,
                     const std::vector<int>& sigma2) {
    StarWork work;
    work.members = orderedMembers(center, sf, inst);
    for (int m : work.members) work.need[m] = {};
    for (int j = 0; j < inst.numClients; ++j)
        if (!state.settled[j] && work.need.count(sigma2[j])) work.need[sigma2[j]].push_back(j);

    int last = work.members.back();
    int lackOfLast = inst.lower[center] - static_cast<int>(work.need[last].size());
    if (lackOfLast > 0) {
        const auto& lastNeed = work.need[last];
        std::vector<int> pool;
        for (int j = 0; j < inst.numClients; ++j) {
            if (state.settled[j] || state.sigmaHat[j] != center) continue;
            if (std::binary_search(lastNeed.begin(), lastNeed.end(), j)) continue;
            pool.push_back(j);
        }
        if (static_cast<int>(pool.size()) < lackOfLast)
            throw std::logic_error("reserve shortage at star " + std::to_string(center) +
                                   ": ordering contract breached");
        work.reserved.assign(pool.begin(), pool.begin() + lackOfLast);
        for (auto& [m, clients] : work.need) {
            std::vector<int> kept;
            for (int j : clients)
                if (!std::binary_search(work.reserved.begin(), work.reserved.end(), j))
                    kept.push_back(j);
            clients = std::move(kept);
        }
    }
    return work;
}

void settle(CombineState& state, int client, int facility, AssignType type, bool reserved,
            int star) {
    state.settled[client] = true;
    state.trace.clients[client] = {facility, type, reserved, star};
}

void settleGroup(CombineState& state, const std::vector<int>& bag, const std::vector<int>& lastNeed,
                 const std::vector<int>& reserved, int facility, AssignType type, int star) {
    for (int j : bag) settle(state, j, facility, type, false, star);
    for (int j : lastNeed) settle(state, j, facility, type, false, star);
    for (int j : reserved) settle(state, j, facility, type, true, star);
}

}  // namespace

std::string variantName(Variant v) {
    return v == Variant::Basic ? "basic" : "relaxed";
}

Variant parseVariant(const std::string& s) {
    if (s == "basic") return Variant::Basic;
    if (s == "relaxed") return Variant::Relaxed;
    throw ConfigError("unknown variant: " + s);
}

std::string assignTypeName(AssignType t) {
    switch (t) {
        case AssignType::TypeI: return "I";
        case AssignType::TypeII: return "II";
        case AssignType::TypeIII: return "III";
        case AssignType::TypeIV: return "IV";
    }
    return "?";
}

AssignType parseAssignType(const std::string& s) {
    if (s == "I") return AssignType::TypeI;
    if (s == "II") return AssignType::TypeII;
    if (s == "III") return AssignType::TypeIII;
    if (s == "IV") return AssignType::TypeIV;
    throw ConfigError("unknown assignment type: " + s);
}

StarForest build_star_forest(const std::vector<int>& f1, const std::vector<int>& f2,
                             const Instance& inst) {
    if (f1.empty() && !f2.empty())
        throw StructuralError("star forest needs a nonempty lower-side facility set");
    StarForest sf;
    sf.members = f2;
    std::sort(sf.members.begin(), sf.members.end());
    std::set<int> f1set(f1.begin(), f1.end());
    for (int node : sf.members) {
        int center;
        if (f1set.count(node)) {
            sf.duplicates.insert(node);
            center = node;  // zero self-distance occurrence
        } else {
            center = -1;
            for (int c : f1set)
                if (center < 0 || inst.fdist(node, c) < inst.fdist(node, center)) center = c;
        }
        sf.eta[node] = center;
        sf.stars[center].push_back(node);
    }
    return sf;
}

DependencyGraph build_dependency_graph(const StarForest& sf, const std::vector<int>& sigma1,
                                       const std::vector<int>& sigma2) {
    DependencyGraph g;
    for (const auto& [center, members] : sf.stars) g.centers.push_back(center);
    g.sigmaHat = sigma1;
    std::set<int> centerSet(g.centers.begin(), g.centers.end());
    for (size_t j = 0; j < sigma1.size(); ++j) {
        int from = sigma1[j];
        if (!centerSet.count(from)) continue;  // starless lower-side facility
        int to = sf.eta.at(sigma2[j]);
        g.weights[{from, to}]++;
    }
    return g;
}

namespace {

// First non-self-loop directed cycle, searched from the lowest center with
// neighbors scanned in ascending order; empty when the graph is an almost-DAG.
std::vector<int> findCycle(const DependencyGraph& g) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [edge, w] : g.weights) {
        if (w <= 0 || edge.first == edge.second) continue;
        adj[edge.first].push_back(edge.second);
    }
    std::map<int, int> color;  // 0 white, 1 on stack, 2 done
    std::vector<int> stack;
    std::vector<int> cycle;

    std::function<bool(int)> dfs = [&](int u) {
        color[u] = 1;
        stack.push_back(u);
        for (int v : adj[u]) {
            if (color[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (color[v] == 0 && dfs(v)) return true;
        }
        stack.pop_back();
        color[u] = 2;
        return false;
    };
    for (int c : g.centers)
        if (color[c] == 0 && dfs(c)) return cycle;
    return {};
}

}  // namespace

bool DependencyGraph::isAlmostDag() const {
    return findCycle(*this).empty();
}

DependencyGraph break_cycles(const StarForest& sf, DependencyGraph g,
                             const std::vector<int>& sigma2) {
    while (true) {
        std::vector<int> cycle = findCycle(g);
        if (cycle.empty()) return g;
        const int len = static_cast<int>(cycle.size());

        // Rotate so the minimum-weight edge leads; earliest position on ties.
        int minPos = 0;
        std::int64_t kappa = -1;
        for (int r = 0; r < len; ++r) {
            std::int64_t w = g.weights.at({cycle[r], cycle[(r + 1) % len]});
            if (kappa < 0 || w < kappa) {
                kappa = w;
                minPos = r;
            }
        }
        std::rotate(cycle.begin(), cycle.begin() + minPos, cycle.end());

        for (int r = 0; r < len; ++r) {
            int from = cycle[r], to = cycle[(r + 1) % len];
            std::int64_t moved = 0;
            for (size_t j = 0; j < g.sigmaHat.size() && moved < kappa; ++j) {
                if (g.sigmaHat[j] != from) continue;
                if (sf.eta.at(sigma2[j]) != to) continue;
                g.sigmaHat[j] = to;  // reroute; per-center cardinality preserved around the cycle
                ++moved;
            }
            if (moved != kappa)
                throw std::logic_error("cycle edge weight inconsistent with assignments");
        }
        // Rebuild so stored weights stay equal to the recomputed intersection
        // cardinalities (rerouted clients now feed self-loops).
        auto sigmaHat = std::move(g.sigmaHat);
        g = build_dependency_graph(sf, sigmaHat, sigma2);
    }
}

std::vector<int> topological_order(const DependencyGraph& g) {
    std::map<int, int> indeg;
    for (int c : g.centers) indeg[c] = 0;
    for (const auto& [edge, w] : g.weights)
        if (w > 0 && edge.first != edge.second) indeg[edge.second]++;
    std::set<int> ready;
    for (auto& [c, d] : indeg)
        if (d == 0) ready.insert(c);
    std::vector<int> order;
    while (!ready.empty()) {
        int u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (const auto& [edge, w] : g.weights) {
            if (edge.first != u || w <= 0 || edge.second == u) continue;
            if (--indeg[edge.second] == 0) ready.insert(edge.second);
        }
    }
    if (order.size() != g.centers.size())
        throw std::logic_error("dependency graph is not an almost-DAG");
    return order;
}

void process_star(int center, const StarForest& sf, CombineState& state, const Instance& inst,
                  Rational beta, const std::vector<int>& sigma2) {
    StarWork work = prepareStar(center, sf, state, inst, sigma2);
    const int last = work.members.back();

    std::vector<int> bag;
    for (size_t q = 0; q + 1 < work.members.size(); ++q) {
        int y = work.members[q];
        const auto& need = work.need[y];
        bag.insert(bag.end(), need.begin(), need.end());
        if (static_cast<int>(bag.size()) >= inst.lower[y]) {
            state.opened.insert(y);
            for (int j : bag) settle(state, j, y, AssignType::TypeI, false, center);
            state.trace.events.push_back("star " + std::to_string(center) + ": opened member " +
                                         std::to_string(y) + " with " +
                                         std::to_string(bag.size()) + " clients (I)");
            bag.clear();
        }
    }

    std::int64_t groupSize = static_cast<std::int64_t>(bag.size()) + work.need[last].size() +
                             work.reserved.size();
    if (groupSize == 0) return;
    Rational cap = ratAdd(beta, {1, 1});
    int t = center;
    AssignType type = AssignType::TypeII;
    if (!withinFactor(groupSize, cap, inst.upper[center])) {  // strictly above (beta+1)*U_i
        t = last;
        type = AssignType::TypeIII;
    }
    state.opened.insert(t);
    settleGroup(state, bag, work.need[last], work.reserved, t, type, center);
    state.trace.events.push_back("star " + std::to_string(center) + ": terminal " +
                                 std::to_string(groupSize) + " clients to " + std::to_string(t) +
                                 " (" + assignTypeName(type) + ")");
}

void process_star_relaxed(int center, const StarForest& sf, CombineState& state,
                          const Instance& inst, Rational beta, Rational eps,
                          const std::vector<int>& sigma2) {
    StarWork work = prepareStar(center, sf, state, inst, sigma2);
    const int last = work.members.back();

    std::vector<int> bag;
    int prev = -1;
    for (size_t q = 0; q + 1 < work.members.size(); ++q) {
        int y = work.members[q];
        const auto& need = work.need[y];
        bag.insert(bag.end(), need.begin(), need.end());
        if (static_cast<int>(bag.size()) >= inst.lower[y]) {
            state.opened.insert(y);
            std::int64_t take = std::min<std::int64_t>(
                static_cast<std::int64_t>(bag.size()),
                std::max<std::int64_t>(floorMul(beta, inst.upper[y]), inst.lower[y]));
            for (std::int64_t r = 0; r < take; ++r)
                settle(state, bag[r], y, AssignType::TypeI, false, center);
            bag.erase(bag.begin(), bag.begin() + take);  // carry the rest forward
            state.trace.events.push_back("star " + std::to_string(center) + ": opened member " +
                                         std::to_string(y) + ", assigned " + std::to_string(take) +
                                         ", carried " + std::to_string(bag.size()));
        } else {
            prev = y;
        }
    }

    std::vector<int> group = bag;
    group.insert(group.end(), work.need[last].begin(), work.need[last].end());
    std::set<int> reservedSet(work.reserved.begin(), work.reserved.end());
    group.insert(group.end(), work.reserved.begin(), work.reserved.end());
    if (group.empty()) return;
    std::int64_t groupSize = static_cast<std::int64_t>(group.size());
    Rational cap = ratAdd(beta, eps);

    auto settleAll = [&](int facility, AssignType type) {
        state.opened.insert(facility);
        for (int j : group)
            settle(state, j, facility, type, reservedSet.count(j) > 0, center);
        state.trace.events.push_back("star " + std::to_string(center) + ": terminal " +
                                     std::to_string(groupSize) + " clients to " +
                                     std::to_string(facility) + " (" + assignTypeName(type) + ")");
    };
    if (withinFactor(groupSize, cap, inst.upper[center])) {
        settleAll(center, AssignType::TypeII);
        return;
    }
    if (withinFactor(groupSize, cap, inst.upper[last])) {
        settleAll(last, AssignType::TypeIII);
        return;
    }
    if (prev < 0)
        throw std::logic_error("overflow branch without an unopened member at star " +
                               std::to_string(center));
    state.opened.insert(prev);
    state.opened.insert(last);
    std::sort(group.begin(), group.end());  // quota drawn lowest client index first
    int quota = inst.lower[prev];
    for (size_t r = 0; r < group.size(); ++r) {
        int j = group[r];
        if (static_cast<int>(r) < quota)
            settle(state, j, prev, AssignType::TypeIV, reservedSet.count(j) > 0, center);
        else
            settle(state, j, last, AssignType::TypeIII, reservedSet.count(j) > 0, center);
    }
    state.trace.events.push_back("star " + std::to_string(center) + ": overflow, opened prev " +
                                 std::to_string(prev) + " (quota " + std::to_string(quota) +
                                 ", IV) and last " + std::to_string(last) + " (III)");
}

Rational empirical_beta(const Instance& inst, const Solution& sol) {
    auto loads = sol.loads(inst);
    Rational best{0, 1};
    for (int f : sol.open) {
        Rational r{loads[f], inst.upper[f]};
        if (ratCmp(r, best) > 0) best = r;
    }
    return best;
}

CombineResult combine(const SubSolution& as1, const SubSolution& as2, const Instance& inst,
                      Variant variant, Rational eps, bool strictBeta) {
    if (as1.side != Side::LowerBounded || as2.side != Side::UpperBounded)
        throw ConfigError("combine expects a lower-bounded and an upper-bounded subsolution");

    Rational beta = as2.declaredBeta;
    if (strictBeta) {
        Rational emp = empirical_beta(inst, as2.solution);
        if (ratCmp(emp, beta) > 0) beta = emp;
    }
    if (variant == Variant::Relaxed) {
        if (eps.num <= 0) throw ConfigError("relaxed variant requires eps > 0");
        if (ratCmp(ratAdd(beta, eps), {1, 1}) < 0)
            throw ConfigError("relaxed variant requires beta + eps >= 1");
        for (int i = 0; i < inst.numFacilities; ++i)
            if (2 * inst.lower[i] > inst.upper[i])
                throw ConfigError("relaxed variant requires 2L <= U for every facility");
    }

    CombineResult out;
    out.betaUsed = beta;
    out.trace.clients.resize(inst.numClients);
    if (inst.numClients == 0) return out;

    const auto& sigma1 = as1.solution.assign;
    const auto& sigma2 = as2.solution.assign;
    StarForest sf = build_star_forest(as1.solution.open, as2.solution.open, inst);
    DependencyGraph g = build_dependency_graph(sf, sigma1, sigma2);
    g = break_cycles(sf, g, sigma2);
    std::vector<int> order = topological_order(g);

    CombineState state;
    state.settled.assign(inst.numClients, false);
    state.sigmaHat = g.sigmaHat;
    state.trace.clients.resize(inst.numClients);

    for (int center : order) {
        if (variant == Variant::Basic)
            process_star(center, sf, state, inst, beta, sigma2);
        else
            process_star_relaxed(center, sf, state, inst, beta, eps, sigma2);
    }
    for (int j = 0; j < inst.numClients; ++j)
        if (!state.settled[j])
            throw std::logic_error("client " + std::to_string(j) + " left unsettled");

    out.trace = std::move(state.trace);
    out.trace.sigmaHat = state.sigmaHat;
    for (const auto& [edge, w] : g.weights)
        if (w > 0) out.trace.finalEdges.push_back({edge.first, edge.second, w});

    out.solution.open.assign(state.opened.begin(), state.opened.end());
    out.solution.assign.resize(inst.numClients);
    for (int j = 0; j < inst.numClients; ++j)
        out.solution.assign[j] = out.trace.clients[j].facility;
    return out;
}

}  // namespace luc
