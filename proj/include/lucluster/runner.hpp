#pragma once

#include <optional>
#include <string>

#include "lucluster/combine.hpp"
#include "lucluster/gen.hpp"
#include "lucluster/model.hpp"
#include "lucluster/subsolve.hpp"
#include "lucluster/verify.hpp"

namespace luc {

// Process exit codes shared by all subcommands.
enum ExitCode {
    kExitOk = 0,
    kExitGuaranteeFail = 1,
    kExitInfeasible = 2,
    kExitSizeCap = 3,
    kExitConfig = 4,
    kExitIo = 5,
};

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string instancePath;         // exactly one of instancePath / genSpec
    std::optional<GenSpec> genSpec;
    std::string lowerSolver = "greedy";
    std::string upperSolver = "greedy";
    Variant variant = Variant::Basic;
    Rational eps{1, 4};
    bool strictBeta = false;
    bool oracle = false;
    std::string outDir = "runs";
};

std::string configHash(const RunConfig& cfg);

struct PipelineResult {
    Instance instance;
    SubSolution as1;
    SubSolution as2;
    CombineResult combined;
    GuaranteeReport report;
};

// Steps 1-5 on an in-memory instance: split, solve both sides, combine,
// check guarantees. Throws on infeasible sides / config violations.
PipelineResult run_pipeline(const Instance& inst, const RunConfig& cfg);

// Full run: resolve instance, pipeline, persist artifacts into
// outDir/<config hash>/. Returns an ExitCode; error text goes to err.
int cmd_run(const RunConfig& cfg, std::string& runDir, std::string& err);

int cmd_gen(const GenSpec& spec, const std::string& outPath, std::string& err);

// Recomputes the guarantee report from artifacts stored by cmd_run and
// compares it byte-for-byte against the stored one.
int cmd_verify(const std::string& runDir, std::string& err);

struct BenchConfig {
    GenSpec base;
    int seeds = 10;
    RunConfig run;  // solver/variant/eps/oracle knobs; out dir unused
};

int cmd_bench(const BenchConfig& cfg, const std::string& csvPath, std::string& err);

}  // namespace luc
