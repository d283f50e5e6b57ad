// Acceptance suite: one pass/fail line per criterion; exit code = number of
// failed criteria. argv[1] (optional) = path to the CLI binary, needed for
// the determinism criterion.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lucluster/combine.hpp"
#include "lucluster/flow.hpp"
#include "lucluster/gen.hpp"
#include "lucluster/json_io.hpp"
#include "lucluster/runner.hpp"
#include "lucluster/verify.hpp"

using namespace luc;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion-%d %s: %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

bool propPasses(const GuaranteeReport& rep, const char* name, std::string& why) {
    const auto* p = rep.find(name);
    if (!p) {
        why = std::string("missing property ") + name;
        return false;
    }
    if (!p->pass) {
        why = std::string(name) + ": " + p->witness;
        return false;
    }
    return true;
}

// shared across criteria 1-3: the reroute lemma and cardinality preservation
// must hold on every instance of every suite
long lemmaChecked = 0;
long lemmaViolations = 0;

bool checkSuiteInstance(const GuaranteeReport& rep, const std::vector<const char*>& props,
                        std::string& why) {
    ++lemmaChecked;
    std::string w;
    if (!propPasses(rep, "reroute-cost-lemma", w) ||
        !propPasses(rep, "cycle-cardinality-preservation", w)) {
        ++lemmaViolations;
        why = w;
        return false;
    }
    for (const char* name : props)
        if (!propPasses(rep, name, why)) return false;
    if (!rep.allHardPass()) {
        for (const auto& p : rep.properties)
            if (p.hard && !p.pass) why = p.name + ": " + p.witness;
        return false;
    }
    return true;
}

GenSpec suiteSpec(std::uint64_t seed, BoundMode bm, int nCap, int mCap) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = 8 + static_cast<int>((seed * 7) % static_cast<std::uint64_t>(nCap - 7));
    spec.m = 2 + static_cast<int>((seed * 3) % static_cast<std::uint64_t>(mCap - 1));
    spec.geometry = seed % 3 == 0 ? Geometry::Line
                    : seed % 3 == 1 ? Geometry::EuclideanPlane
                                    : Geometry::GraphShortestPath;
    spec.boundMode = bm;
    spec.uMin = 3;
    spec.uMax = 6 + static_cast<int>(seed % 5);
    return spec;
}

void criterion1() {
    const std::vector<const char*> props = {
        "lower-bounds",       "upper-bound-cap", "cardinality",
        "per-client-cost",    "aggregate-facility-cost", "aggregate-service-cost",
        "almost-dag",         "settlement"};
    long count = 0;
    for (BoundMode bm : {BoundMode::UniformL, BoundMode::UniformU, BoundMode::BothUniform}) {
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            GenSpec spec = suiteSpec(seed, bm, 60, 10);
            RunConfig cfg;  // greedy subsolvers, basic variant
            std::string why;
            try {
                auto r = run_pipeline(generate(spec), cfg);
                if (!checkSuiteInstance(r.report, props, why)) {
                    report(1, false,
                           boundModeName(bm) + " seed " + std::to_string(seed) + ": " + why);
                    return;
                }
            } catch (const std::exception& e) {
                report(1, false, boundModeName(bm) + " seed " + std::to_string(seed) + ": " +
                                     e.what());
                return;
            }
            ++count;
        }
    }
    report(1, true, std::to_string(count) + " basic-variant instances, all properties hold");
}

void criterion2() {
    const std::vector<const char*> props = {"lower-bounds", "upper-bound-cap", "cardinality",
                                            "relaxed-type4-charging",
                                            "relaxed-aggregate-service-cost", "almost-dag",
                                            "settlement"};
    long count = 0;
    for (Rational eps : {Rational{1, 4}, Rational{1, 2}, Rational{1, 1}}) {
        for (std::uint64_t seed = 1; seed <= 500; ++seed) {
            GenSpec spec = suiteSpec(seed, BoundMode::TwoLLeU, 60, 10);
            RunConfig cfg;
            cfg.variant = Variant::Relaxed;
            cfg.eps = eps;
            std::string why;
            try {
                auto r = run_pipeline(generate(spec), cfg);
                if (!checkSuiteInstance(r.report, props, why)) {
                    report(2, false, "eps " + eps.str() + " seed " + std::to_string(seed) +
                                         ": " + why);
                    return;
                }
            } catch (const std::exception& e) {
                report(2, false,
                       "eps " + eps.str() + " seed " + std::to_string(seed) + ": " + e.what());
                return;
            }
            ++count;
        }
    }

    int typeIV = 0;
    const int adversarial = 50;
    for (std::uint64_t seed = 1; seed <= adversarial; ++seed) {
        GenSpec spec;
        spec.seed = seed;
        spec.m = 2 + static_cast<int>(seed % 2);  // exercises the extra far star
        spec.boundMode = BoundMode::TwoLLeU;
        RunConfig cfg;
        cfg.lowerSolver = "exact";
        cfg.upperSolver = "exact";
        cfg.variant = Variant::Relaxed;
        cfg.eps = {1, 4};
        std::string why;
        try {
            auto r = run_pipeline(adversarial_overflow(spec, cfg.eps), cfg);
            if (!checkSuiteInstance(r.report, props, why)) {
                report(2, false, "adversarial seed " + std::to_string(seed) + ": " + why);
                return;
            }
            for (const auto& e : r.combined.trace.clients)
                if (e.type == AssignType::TypeIV) {
                    ++typeIV;
                    break;
                }
        } catch (const std::exception& e) {
            report(2, false, "adversarial seed " + std::to_string(seed) + ": " + e.what());
            return;
        }
        ++count;
    }
    bool enough = typeIV * 10 >= adversarial * 9;
    report(2, enough,
           std::to_string(count) + " relaxed-variant instances; Type-IV in " +
               std::to_string(typeIV) + "/" + std::to_string(adversarial) + " adversarial runs");
}

void criterion3() {
    long count = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GenSpec spec = suiteSpec(seed, BoundMode::BothUniform, 20, 8);
        bool maxKind = seed % 2 == 0;
        if (maxKind) spec.kind = ProblemKind::LUkS;
        RunConfig cfg;
        cfg.lowerSolver = "exact";
        cfg.upperSolver = "exact";
        cfg.oracle = true;
        std::string why;
        try {
            Instance inst = generate(spec);
            auto r = run_pipeline(inst, cfg);
            if (!checkSuiteInstance(r.report, {}, why)) {
                report(3, false, "seed " + std::to_string(seed) + ": " + why);
                return;
            }
            if (maxKind) {
                auto cI = evaluate_cost(inst, r.combined.solution);
                Cost c1 = evaluate_cost(derive_sub_instance(inst, Side::LowerBounded),
                                        r.as1.solution).serviceMax;
                Cost c2 = evaluate_cost(derive_sub_instance(inst, Side::UpperBounded),
                                        r.as2.solution).serviceMax;
                if (cI.serviceMax > 2 * c1 + 7 * c2) {
                    report(3, false, "seed " + std::to_string(seed) + ": max objective " +
                                         std::to_string(cI.serviceMax) + " above 2/7 bound");
                    return;
                }
            } else {
                if (!r.report.costOpt) {
                    report(3, false, "seed " + std::to_string(seed) + ": oracle missing");
                    return;
                }
                if (r.report.costAsI > 9 * *r.report.costOpt) {
                    report(3, false, "seed " + std::to_string(seed) + ": cost " +
                                         std::to_string(r.report.costAsI) + " > 9 * " +
                                         std::to_string(*r.report.costOpt));
                    return;
                }
            }
        } catch (const std::exception& e) {
            report(3, false, "seed " + std::to_string(seed) + ": " + e.what());
            return;
        }
        ++count;
    }
    report(3, true, std::to_string(count) + " exact-subsolver instances within the oracle bounds");
}

void criterion4() {
    bool pass = lemmaViolations == 0 && lemmaChecked > 0;
    report(4, pass,
           "reroute lemma + cardinality preservation on " + std::to_string(lemmaChecked) +
               " suite instances, " + std::to_string(lemmaViolations) + " violations");
}

void criterion5() {
    // three stars on a line, one member each; sigma2 routes every client into
    // the next star, giving the directed triangle with weights 1, 3, 2
    Instance inst;
    inst.kind = ProblemKind::LUkM;
    inst.objective = Objective::SumService;
    inst.numClients = 6;
    inst.numFacilities = 6;
    std::vector<double> cx{0, 100, 100, 100, 200, 200};
    std::vector<double> fx{0, 100, 200, 1, 101, 201};
    inst.clientFacility.assign(6, std::vector<Cost>(6));
    inst.facilityFacility.assign(6, std::vector<Cost>(6));
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i)
            inst.clientFacility[j][i] = static_cast<Cost>(std::abs(cx[j] - fx[i])) * inst.scale;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            inst.facilityFacility[a][b] = static_cast<Cost>(std::abs(fx[a] - fx[b])) * inst.scale;
    inst.lower.assign(6, 0);
    inst.upper.assign(6, 6);
    inst.openingCost.assign(6, 0);
    inst.k = 6;

    std::vector<int> sigma1{0, 1, 1, 1, 2, 2};
    std::vector<int> sigma2{4, 5, 5, 5, 3, 3};
    auto sf = build_star_forest({0, 1, 2}, {3, 4, 5}, inst);
    auto g = build_dependency_graph(sf, sigma1, sigma2);
    bool pass = g.weights.size() == 3 && g.weights.at({0, 1}) == 1 &&
                g.weights.at({1, 2}) == 3 && g.weights.at({2, 0}) == 2;

    auto broken = break_cycles(sf, g, sigma2);
    std::multiset<std::int64_t> surviving;
    for (const auto& [e, w] : broken.weights)
        if (e.first != e.second) surviving.insert(w);
    pass = pass && broken.isAlmostDag() && broken.weights.count({0, 1}) == 0 &&
           surviving == std::multiset<std::int64_t>{1, 2};
    report(5, pass, "3-star cycle: kappa = 1, weight-1 edge removed, surviving weights {2, 1}");
}

void criterion6() {
    std::mt19937_64 rng(2026);
    long checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        int m = 1 + static_cast<int>(rng() % 3);
        Instance inst;
        inst.numClients = n;
        inst.numFacilities = m;
        inst.clientFacility.assign(n, std::vector<Cost>(m));
        inst.facilityFacility.assign(m, std::vector<Cost>(m, 0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < m; ++i)
                inst.clientFacility[j][i] = static_cast<Cost>(rng() % 1000) * inst.scale;
        inst.lower.assign(m, 0);
        inst.upper.assign(m, 0);
        inst.openingCost.assign(m, 0);
        inst.k = m;
        flow::AssignmentProblem p;
        p.inst = &inst;
        for (int i = 0; i < m; ++i) {
            p.openSet.push_back(i);
            p.lowerEff.push_back(static_cast<int>(rng() % 2));
            p.upperEff.push_back(p.lowerEff.back() + 1 + static_cast<int>(rng() % n));
        }
        for (Objective obj : {Objective::SumService, Objective::MaxService}) {
            p.objective = obj;
            auto viaFlow = flow::optimal_assignment(p);

            // exhaustive reference over every bounded assignment
            std::vector<int> pick(n, 0);
            std::optional<Cost> best;
            while (true) {
                std::vector<int> load(m, 0);
                for (int j = 0; j < n; ++j) ++load[pick[j]];
                bool ok = true;
                for (int i = 0; i < m; ++i)
                    if (load[i] < p.lowerEff[i] || load[i] > p.upperEff[i]) ok = false;
                if (ok) {
                    Cost sum = 0, mx = 0;
                    for (int j = 0; j < n; ++j) {
                        sum += inst.dist(j, pick[j]);
                        mx = std::max(mx, inst.dist(j, pick[j]));
                    }
                    Cost val = obj == Objective::SumService ? sum : mx;
                    if (!best || val < *best) best = val;
                }
                int j = 0;
                while (j < n && pick[j] == m - 1) pick[j++] = 0;
                if (j == n) break;
                ++pick[j];
            }

            if (viaFlow.has_value() != best.has_value() ||
                (viaFlow && viaFlow->cost != *best)) {
                report(6, false, "trial " + std::to_string(trial) + " " + objectiveName(obj) +
                                     ": flow disagrees with enumeration");
                return;
            }
            ++checked;
        }
    }
    report(6, true, std::to_string(checked) + " flow-vs-enumeration comparisons, exact match");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion7(const char* cliPath) {
    if (!cliPath) {
        report(7, false, "CLI path not supplied");
        return;
    }
    fs::path tmp = fs::temp_directory_path() / "lucluster-acceptance";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    GenSpec spec;
    spec.seed = 99;
    spec.n = 18;
    spec.m = 5;
    spec.boundMode = BoundMode::UniformU;
    writeJsonFile((tmp / "spec.json").string(), genSpecToJson(spec));

    auto runOnce = [&](const std::string& outDir) {
        std::string cmd = std::string(cliPath) + " run --gen-spec " +
                          (tmp / "spec.json").string() + " --oracle --out " + outDir +
                          " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    if (runOnce((tmp / "a").string()) != 0 || runOnce((tmp / "b").string()) != 0) {
        report(7, false, "cmd_run did not exit cleanly");
        return;
    }
    bool pass = true;
    std::string detail;
    for (const char* f : {"solution.json", "trace.json", "report.json", "instance.json"}) {
        fs::path a, b;
        for (const auto& e : fs::directory_iterator(tmp / "a")) a = e.path() / f;
        for (const auto& e : fs::directory_iterator(tmp / "b")) b = e.path() / f;
        if (slurp(a).empty() || slurp(a) != slurp(b)) {
            pass = false;
            detail = std::string(f) + " differs between repeated runs";
            break;
        }
    }
    report(7, pass, pass ? "repeated cmd_run artifacts byte-identical" : detail);
    fs::remove_all(tmp);
}

}  // namespace

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(argc > 1 ? argv[1] : nullptr);
    return failures;
}
