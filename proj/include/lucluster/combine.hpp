#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lucluster/model.hpp"
#include "lucluster/subsolve.hpp"

namespace luc {

enum class Variant { Basic, Relaxed };
enum class AssignType { TypeI, TypeII, TypeIII, TypeIV };

std::string variantName(Variant v);
Variant parseVariant(const std::string& s);
std::string assignTypeName(AssignType t);
AssignType parseAssignType(const std::string& s);

struct TraceEntry {
    int facility = -1;
    AssignType type = AssignType::TypeI;
    bool reserved = false;
    int star = -1;  // star center facility
};

struct CombineTrace {
    std::vector<TraceEntry> clients;  // indexed by client; facility = -1 means unsettled
    std::vector<int> sigmaHat;        // rerouted lower-side assignment
    // Dependency edges surviving cycle breaking: (from-center, to-center, weight).
    std::vector<std::array<std::int64_t, 3>> finalEdges;
    std::vector<std::string> events;  // per-star event log
};

// Star forest over F1 (centers) and F2 (members). A facility present in both
// solutions appears as a duplicate member node mapped to itself.
struct StarForest {
    std::vector<int> members;             // F2 facility ids, sorted
    std::set<int> duplicates;             // members also present in F1
    std::map<int, int> eta;               // member facility -> center facility
    std::map<int, std::vector<int>> stars;  // center -> members, sorted by id
};

StarForest build_star_forest(const std::vector<int>& f1, const std::vector<int>& f2,
                             const Instance& inst);

struct DependencyGraph {
    std::vector<int> centers;  // sorted star centers
    std::map<std::pair<int, int>, std::int64_t> weights;
    std::vector<int> sigmaHat;

    bool isAlmostDag() const;
};

DependencyGraph build_dependency_graph(const StarForest& sf, const std::vector<int>& sigma1,
                                       const std::vector<int>& sigma2);

// Repeatedly reroutes kappa clients around a discovered cycle and drops the
// zeroed minimum edge until only self-loops remain. Per-center cardinalities
// of sigmaHat are preserved.
DependencyGraph break_cycles(const StarForest& sf, DependencyGraph g,
                             const std::vector<int>& sigma2);

// Kahn's ordering ignoring self-loops; ready centers taken lowest index first.
std::vector<int> topological_order(const DependencyGraph& g);

struct CombineState {
    std::vector<bool> settled;
    std::vector<int> sigmaHat;
    std::set<int> opened;
    CombineTrace trace;
};

void process_star(int center, const StarForest& sf, CombineState& state, const Instance& inst,
                  Rational beta, const std::vector<int>& sigma2);

void process_star_relaxed(int center, const StarForest& sf, CombineState& state,
                          const Instance& inst, Rational beta, Rational eps,
                          const std::vector<int>& sigma2);

struct CombineResult {
    Solution solution;
    CombineTrace trace;
    Rational betaUsed{1, 1};
};

// Full pipeline: star forest, dependency graph, cycle breaking, topological
// order, star processing. strictBeta replaces the declared beta with the
// empirical maximum load ratio of as2 when that is larger.
CombineResult combine(const SubSolution& as1, const SubSolution& as2, const Instance& inst,
                      Variant variant, Rational eps = {1, 4}, bool strictBeta = false);

// Empirical upper-bound violation of a solution: max_i load(i)/upper(i).
Rational empirical_beta(const Instance& inst, const Solution& sol);

}  // namespace luc
