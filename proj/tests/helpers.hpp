#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "lucluster/model.hpp"

namespace luc::test {

// 1-D instance with exact fixed-point distances; the workhorse for
// hand-checkable cases.
inline Instance lineInstance(const std::vector<double>& clientX, const std::vector<double>& facX,
                             std::vector<int> lower, std::vector<int> upper, int k,
                             std::vector<Cost> opening = {},
                             Objective obj = Objective::SumService,
                             ProblemKind kind = ProblemKind::LUkM) {
    Instance inst;
    inst.kind = kind;
    inst.objective = obj;
    inst.numClients = static_cast<int>(clientX.size());
    inst.numFacilities = static_cast<int>(facX.size());
    inst.clientFacility.assign(inst.numClients, std::vector<Cost>(inst.numFacilities));
    inst.facilityFacility.assign(inst.numFacilities, std::vector<Cost>(inst.numFacilities));
    auto d = [](double a, double b) {
        return static_cast<Cost>(std::llround(std::abs(a - b) * static_cast<double>(kDefaultScale)));
    };
    for (int j = 0; j < inst.numClients; ++j)
        for (int i = 0; i < inst.numFacilities; ++i)
            inst.clientFacility[j][i] = d(clientX[j], facX[i]);
    for (int a = 0; a < inst.numFacilities; ++a)
        for (int b = 0; b < inst.numFacilities; ++b)
            inst.facilityFacility[a][b] = d(facX[a], facX[b]);
    inst.lower = std::move(lower);
    inst.upper = std::move(upper);
    inst.openingCost = opening.empty() ? std::vector<Cost>(inst.numFacilities, 0)
                                       : std::move(opening);
    inst.k = k;
    return inst;
}

inline Cost unit(double v) {
    return static_cast<Cost>(std::llround(v * static_cast<double>(kDefaultScale)));
}

}  // namespace luc::test
