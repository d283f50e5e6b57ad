#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lucluster/combine.hpp"
#include "lucluster/model.hpp"
#include "lucluster/subsolve.hpp"

namespace luc {

struct PropertyCheck {
    std::string name;
    bool pass = true;
    bool hard = true;  // soft checks downgrade to warnings
    std::string witness;
};

struct GuaranteeReport {
    std::vector<PropertyCheck> properties;
    Rational betaUsed{1, 1};
    Rational betaEmpirical{0, 1};
    Cost costAs1 = 0;
    Cost costAs2 = 0;
    Cost costAsI = 0;
    std::optional<Cost> costOpt;

    bool allHardPass() const;
    const PropertyCheck* find(const std::string& name) const;
};

// Exact optimum of the full lower-and-upper-bounded instance by subset
// enumeration plus optimal flow assignment. Throws SizeCapError above the
// caps; nullopt when no subset admits a feasible assignment.
std::optional<Solution> brute_force_opt(const Instance& inst, int facilityCap = 12,
                                        int clientCap = 40);

struct CheckOptions {
    Variant variant = Variant::Basic;
    Rational eps{1, 4};
    bool exactSubsolvers = false;
    bool strictBeta = false;
    std::optional<Solution> opt;
};

// Evaluates every combine-module guarantee against the three solutions plus
// the trace; pure and report-producing.
GuaranteeReport check_guarantees(const Instance& inst, const SubSolution& as1,
                                 const SubSolution& as2, const Solution& asI,
                                 const CombineTrace& trace, const CheckOptions& opts);

}  // namespace luc
