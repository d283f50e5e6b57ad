#pragma once

#include <optional>
#include <string>

#include "lucluster/model.hpp"

namespace luc {

enum class Side { LowerBounded, UpperBounded };

std::string sideName(Side s);

struct SubSolution {
    Solution solution;
    Rational declaredBeta{1, 1};
    Side side = Side::LowerBounded;
};

// Realizes the framework's bound-dropping. LowerBounded: upper bounds become
// the n sentinel; the cardinality constraint is dropped (k = m) for the sum
// objective kinds and preserved for the max objective kinds; opening costs
// are zeroed for LUkM. UpperBounded: lower bounds become 0, all else kept.
Instance derive_sub_instance(const Instance& inst, Side side);

// Exhaustive optimum over facility subsets (|S| <= sub.k), assignment by
// min-cost flow. Ties broken to the lexicographically smallest open set.
// Throws SizeCapError when sub.numFacilities > 20.
std::optional<SubSolution> solve_exact(const Instance& sub, Side side);

// Farthest-point-first seeding up to the largest p <= k whose summed lower
// bounds fit n, then an optimal flow assignment; shrinks p on infeasibility.
std::optional<SubSolution> solve_greedy_lower(const Instance& sub);

// Greedily opens facilities minimizing the marginal cost of covering their
// nearest still-uncovered clients (up to capacity), then a final optimal
// flow assignment onto the chosen set.
std::optional<SubSolution> solve_greedy_upper(const Instance& sub);

// Derives the sub-instance for `side` and dispatches by backend name
// ("exact" or "greedy").
std::optional<SubSolution> solve_side(const Instance& original, Side side,
                                      const std::string& backend);

}  // namespace luc
