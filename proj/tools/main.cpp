#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lucluster/json_io.hpp"
#include "lucluster/runner.hpp"

using namespace luc;

namespace {

struct Cli {
    std::string instance;
    std::string genSpecPath;
    std::string lowerSolver = "greedy";
    std::string upperSolver = "greedy";
    std::string variant = "basic";
    std::string eps = "0.25";
    bool strictBeta = false;
    bool oracle = false;
    std::string out = "runs";
    std::uint64_t seed = 0;  // 0: keep the spec/file seed
};

void addRunFlags(CLI::App* app, Cli& c) {
    app->add_option("--instance", c.instance, "instance JSON path");
    app->add_option("--gen-spec", c.genSpecPath, "generator spec JSON path");
    app->add_option("--lower-solver", c.lowerSolver, "lower-side solver: exact|greedy");
    app->add_option("--upper-solver", c.upperSolver, "upper-side solver: exact|greedy");
    app->add_option("--variant", c.variant, "combine variant: basic|relaxed");
    app->add_option("--eps", c.eps, "relaxed-variant epsilon (decimal or a/b)");
    app->add_flag("--strict-beta", c.strictBeta, "error instead of warn on beta overruns");
    app->add_flag("--oracle", c.oracle, "brute-force optimum when within size caps");
    app->add_option("--out", c.out, "output directory (run) / file (gen, bench)");
    app->add_option("--seed", c.seed, "override the generator seed");
}

RunConfig toRunConfig(const Cli& c) {
    RunConfig cfg;
    cfg.instancePath = c.instance;
    if (!c.genSpecPath.empty()) {
        cfg.genSpec = genSpecFromJson(loadJsonFile(c.genSpecPath));
        if (c.seed != 0) cfg.genSpec->seed = c.seed;
    }
    cfg.lowerSolver = c.lowerSolver;
    cfg.upperSolver = c.upperSolver;
    cfg.variant = parseVariant(c.variant);
    cfg.eps = Rational::fromDecimal(c.eps);
    cfg.strictBeta = c.strictBeta;
    cfg.oracle = c.oracle;
    cfg.outDir = c.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower/upper bounded clustering pipeline"};
    app.require_subcommand(1);

    Cli c;
    std::string runDir, benchOut = "bench.csv";
    int seeds = 10;

    auto* run = app.add_subcommand("run", "solve one instance end to end");
    addRunFlags(run, c);

    auto* gen = app.add_subcommand("gen", "generate an instance JSON");
    addRunFlags(gen, c);

    auto* verify = app.add_subcommand("verify", "re-check stored run artifacts");
    verify->add_option("--run-dir", runDir, "directory written by `run`")->required();

    auto* bench = app.add_subcommand("bench", "seed sweep, emits a CSV");
    addRunFlags(bench, c);
    bench->add_option("--seeds", seeds, "number of consecutive seeds");

    CLI11_PARSE(app, argc, argv);

    std::string err;
    int code = kExitConfig;
    try {
        if (run->parsed()) {
            RunConfig cfg = toRunConfig(c);
            std::string dir;
            code = cmd_run(cfg, dir, err);
            if (!dir.empty()) std::cout << dir << "\n";
        } else if (gen->parsed()) {
            GenSpec spec;
            if (!c.genSpecPath.empty()) spec = genSpecFromJson(loadJsonFile(c.genSpecPath));
            if (c.seed != 0) spec.seed = c.seed;
            std::string out = c.out == "runs" ? "instance.json" : c.out;
            code = cmd_gen(spec, out, err);
            if (code == kExitOk) std::cout << out << "\n";
        } else if (verify->parsed()) {
            code = cmd_verify(runDir, err);
        } else if (bench->parsed()) {
            BenchConfig bc;
            bc.run = toRunConfig(c);
            if (bc.run.genSpec) bc.base = *bc.run.genSpec;
            if (c.seed != 0) bc.base.seed = c.seed;
            bc.seeds = seeds;
            std::string out = c.out == "runs" ? benchOut : c.out;
            code = cmd_bench(bc, out, err);
            if (code == kExitOk) std::cout << out << "\n";
        }
    } catch (const ConfigError& e) {
        err = e.what();
        code = kExitConfig;
    } catch (const std::exception& e) {
        err = e.what();
        code = kExitIo;
    }
    if (code != kExitOk && !err.empty()) std::cerr << "error: " << err << "\n";
    return code;
}
