#include "lucluster/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lucluster/json_io.hpp"

namespace fs = std::filesystem;

namespace luc {

namespace {

json runConfigToJson(const RunConfig& cfg) {
    json j;
    j["format"] = 1;
    if (!cfg.instancePath.empty()) j["instance"] = cfg.instancePath;
    if (cfg.genSpec) j["gen_spec"] = genSpecToJson(*cfg.genSpec);
    j["lower_solver"] = cfg.lowerSolver;
    j["upper_solver"] = cfg.upperSolver;
    j["variant"] = variantName(cfg.variant);
    j["eps"] = cfg.eps.str();
    j["strict_beta"] = cfg.strictBeta;
    j["oracle"] = cfg.oracle;
    return j;
}

RunConfig runConfigFromJson(const json& j) {
    RunConfig cfg;
    cfg.instancePath = j.value("instance", "");
    if (j.contains("gen_spec")) cfg.genSpec = genSpecFromJson(j.at("gen_spec"));
    cfg.lowerSolver = j.value("lower_solver", cfg.lowerSolver);
    cfg.upperSolver = j.value("upper_solver", cfg.upperSolver);
    cfg.variant = parseVariant(j.value("variant", "basic"));
    if (j.contains("eps")) cfg.eps = Rational::fromDecimal(j.at("eps").get<std::string>());
    cfg.strictBeta = j.value("strict_beta", false);
    cfg.oracle = j.value("oracle", false);
    return cfg;
}

json subSolutionToJson(const SubSolution& ss) {
    json j = solutionToJson(ss.solution);
    j["declared_beta"] = ss.declaredBeta.str();
    j["side"] = sideName(ss.side);
    return j;
}

SubSolution subSolutionFromJson(const json& j) {
    SubSolution ss;
    ss.solution = solutionFromJson(j);
    ss.declaredBeta = Rational::fromDecimal(j.at("declared_beta").get<std::string>());
    ss.side = j.at("side").get<std::string>() == "lower" ? Side::LowerBounded
                                                         : Side::UpperBounded;
    return ss;
}

std::string costStr(Cost c, Cost scale) {
    std::ostringstream os;
    os << c << " (" << std::fixed << std::setprecision(6)
       << static_cast<double>(c) / static_cast<double>(scale) << ")";
    return os.str();
}

double ratDouble(Rational r) {
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

Instance resolveInstance(const RunConfig& cfg) {
    if (!cfg.instancePath.empty() && cfg.genSpec)
        throw ConfigError("give either --instance or --gen-spec, not both");
    if (!cfg.instancePath.empty()) return instanceFromJson(loadJsonFile(cfg.instancePath));
    if (cfg.genSpec) return generate(*cfg.genSpec);
    throw ConfigError("no instance source: need --instance or --gen-spec");
}

std::string summaryText(const RunConfig& cfg, const PipelineResult& r) {
    const Instance& inst = r.instance;
    std::ostringstream os;
    os << "problem " << kindName(inst.kind) << " objective " << objectiveName(inst.objective)
       << " n " << inst.numClients << " m " << inst.numFacilities << " k " << inst.k << "\n";
    os << "variant " << variantName(cfg.variant);
    if (cfg.variant == Variant::Relaxed) os << " eps " << cfg.eps.str();
    os << " lower_solver " << cfg.lowerSolver << " upper_solver " << cfg.upperSolver << "\n";
    os << "cost_as1 " << costStr(r.report.costAs1, inst.scale) << "\n";
    os << "cost_as2 " << costStr(r.report.costAs2, inst.scale) << "\n";
    os << "cost_asI " << costStr(r.report.costAsI, inst.scale) << "\n";
    if (r.report.costOpt) os << "cost_opt " << costStr(*r.report.costOpt, inst.scale) << "\n";
    os << "beta_used " << r.report.betaUsed.str() << "\n";
    os << "beta_empirical " << r.report.betaEmpirical.str() << "\n";
    os << "max_load_ratio " << r.report.betaEmpirical.str() << "\n";
    os << "properties\n";
    for (const auto& p : r.report.properties) {
        os << "  " << (p.pass ? "pass" : (p.hard ? "FAIL" : "warn")) << " " << p.name;
        if (!p.pass && !p.witness.empty()) os << " (" << p.witness << ")";
        os << "\n";
    }
    os << "hard_guarantees " << (r.report.allHardPass() ? "pass" : "FAIL") << "\n";
    return os.str();
}

int mapException(const std::exception& e, std::string& err) {
    err = e.what();
    if (dynamic_cast<const SizeCapError*>(&e)) return kExitSizeCap;
    if (dynamic_cast<const InfeasibleError*>(&e)) return kExitInfeasible;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const GenError*>(&e))
        return kExitConfig;
    if (dynamic_cast<const json::exception*>(&e)) return kExitIo;
    if (dynamic_cast<const fs::filesystem_error*>(&e)) return kExitIo;
    return kExitConfig;
}

}  // namespace

std::string configHash(const RunConfig& cfg) {
    std::string text = runConfigToJson(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

PipelineResult run_pipeline(const Instance& inst, const RunConfig& cfg) {
    PipelineResult r;
    r.instance = inst;
    auto report = validate_instance(inst);
    if (!report.ok()) throw ConfigError("invalid instance: " + report.violations.front());

    auto s1 = solve_side(inst, Side::LowerBounded, cfg.lowerSolver);
    if (!s1) throw InfeasibleError("lower-bounded sub-instance is infeasible");
    auto s2 = solve_side(inst, Side::UpperBounded, cfg.upperSolver);
    if (!s2) throw InfeasibleError("upper-bounded sub-instance is infeasible");
    r.as1 = *s1;
    r.as2 = *s2;

    r.combined = combine(r.as1, r.as2, inst, cfg.variant, cfg.eps, cfg.strictBeta);

    CheckOptions opts;
    opts.variant = cfg.variant;
    opts.eps = cfg.eps;
    opts.exactSubsolvers = cfg.lowerSolver == "exact" && cfg.upperSolver == "exact";
    opts.strictBeta = cfg.strictBeta;
    if (cfg.oracle) {
        try {
            opts.opt = brute_force_opt(inst);
        } catch (const SizeCapError&) {
            // oracle silently off above the enumeration caps
        }
    }
    r.report = check_guarantees(inst, r.as1, r.as2, r.combined.solution, r.combined.trace, opts);
    return r;
}

int cmd_run(const RunConfig& cfg, std::string& runDir, std::string& err) {
    try {
        Instance inst = resolveInstance(cfg);
        PipelineResult r = run_pipeline(inst, cfg);

        fs::path dir = fs::path(cfg.outDir) / configHash(cfg);
        fs::create_directories(dir);
        runDir = dir.string();
        writeJsonFile((dir / "config.json").string(), runConfigToJson(cfg));
        writeJsonFile((dir / "instance.json").string(), instanceToJson(inst));
        writeJsonFile((dir / "as1.json").string(), subSolutionToJson(r.as1));
        writeJsonFile((dir / "as2.json").string(), subSolutionToJson(r.as2));
        writeJsonFile((dir / "solution.json").string(), solutionToJson(r.combined.solution));
        writeJsonFile((dir / "trace.json").string(), traceToJson(r.combined.trace));
        writeJsonFile((dir / "report.json").string(), reportToJson(r.report));
        std::ofstream sum(dir / "summary.txt", std::ios::binary);
        if (!sum) throw ConfigError("cannot write summary");
        sum << summaryText(cfg, r);

        return r.report.allHardPass() ? kExitOk : kExitGuaranteeFail;
    } catch (const std::exception& e) {
        return mapException(e, err);
    }
}

int cmd_gen(const GenSpec& spec, const std::string& outPath, std::string& err) {
    try {
        Instance inst = generate(spec);
        json j = instanceToJson(inst);
        j["gen_spec"] = genSpecToJson(spec);
        writeJsonFile(outPath, j);
        return kExitOk;
    } catch (const std::exception& e) {
        return mapException(e, err);
    }
}

int cmd_verify(const std::string& runDir, std::string& err) {
    try {
        fs::path dir(runDir);
        RunConfig cfg = runConfigFromJson(loadJsonFile((dir / "config.json").string()));
        Instance inst = instanceFromJson(loadJsonFile((dir / "instance.json").string()));
        SubSolution as1 = subSolutionFromJson(loadJsonFile((dir / "as1.json").string()));
        SubSolution as2 = subSolutionFromJson(loadJsonFile((dir / "as2.json").string()));
        Solution asI = solutionFromJson(loadJsonFile((dir / "solution.json").string()));
        CombineTrace trace = traceFromJson(loadJsonFile((dir / "trace.json").string()));
        json stored = loadJsonFile((dir / "report.json").string());

        CheckOptions opts;
        opts.variant = cfg.variant;
        opts.eps = cfg.eps;
        opts.exactSubsolvers = cfg.lowerSolver == "exact" && cfg.upperSolver == "exact";
        opts.strictBeta = cfg.strictBeta;
        if (cfg.oracle) {
            try {
                opts.opt = brute_force_opt(inst);
            } catch (const SizeCapError&) {
            }
        }
        GuaranteeReport report = check_guarantees(inst, as1, as2, asI, trace, opts);
        json recomputed = reportToJson(report);
        if (recomputed.dump(2) != stored.dump(2)) {
            err = "recomputed report differs from stored report";
            return kExitGuaranteeFail;
        }
        return report.allHardPass() ? kExitOk : kExitGuaranteeFail;
    } catch (const std::exception& e) {
        return mapException(e, err);
    }
}

int cmd_bench(const BenchConfig& cfg, const std::string& csvPath, std::string& err) {
    try {
        std::ofstream csv(csvPath, std::ios::binary);
        if (!csv) throw ConfigError("cannot write " + csvPath);
        csv << "seed,n,m,bound_mode,variant,eps,beta_declared,beta_empirical,max_load_ratio,"
               "cost_as1,cost_as2,cost_asI,cost_opt,ratio_vs_bound\n";
        csv << std::fixed << std::setprecision(6);
        for (int s = 0; s < cfg.seeds; ++s) {
            GenSpec spec = cfg.base;
            spec.seed = cfg.base.seed + static_cast<std::uint64_t>(s);
            Instance inst = generate(spec);
            RunConfig rc = cfg.run;
            rc.instancePath.clear();
            rc.genSpec = spec;
            PipelineResult r = run_pipeline(inst, rc);
            const auto& rep = r.report;
            double scale = static_cast<double>(inst.scale);
            Cost bound = 2 * rep.costAs1 + 7 * rep.costAs2;
            csv << spec.seed << "," << inst.numClients << "," << inst.numFacilities << ","
                << boundModeName(spec.boundMode) << "," << variantName(rc.variant) << ","
                << ratDouble(rc.eps) << "," << ratDouble(rep.betaUsed) << ","
                << ratDouble(rep.betaEmpirical) << "," << ratDouble(rep.betaEmpirical) << ","
                << rep.costAs1 / scale << "," << rep.costAs2 / scale << ","
                << rep.costAsI / scale << ",";
            if (rep.costOpt) csv << *rep.costOpt / scale;
            csv << ",";
            if (bound > 0)
                csv << static_cast<double>(rep.costAsI) / static_cast<double>(bound);
            csv << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return mapException(e, err);
    }
}

}  // namespace luc
