// Command-line driver: run programs, erase configurations at an observation
// label, and run the non-interference check suites.
//
// Exit codes: 0 success / no violation; 1 parse or usage error; 2 at least
// one violation; 3 checks produced only inconclusive verdicts.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ifc/check.hpp"
#include "ifc/heap.hpp"
#include "ifc/parse.hpp"

using namespace ifc;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonFlags {
    std::string scheduler;
    std::string engine;
    std::string kappa;
    std::string restrict_;
    int maxSteps = -1;
    std::string format = "pretty";
};

void addCommon(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--scheduler", f.scheduler, "rr or seq (overrides the program header)");
    cmd->add_option("--engine", f.engine, "abstract or concrete");
    cmd->add_option("--kappa", f.kappa, "identity or empty (sandbox store policy)");
    cmd->add_option("--restrict", f.restrict_, "comma-separated families: norefs,clearance");
    cmd->add_option("--max-steps", f.maxSteps, "step budget");
    cmd->add_option("--format", f.format, "pretty or records")
        ->check(CLI::IsMember({"pretty", "records"}));
}

std::vector<std::string> splitComma(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

RunSettings mergeSettings(RunSettings base, const CommonFlags& f) {
    if (!f.scheduler.empty()) base.scheduler = f.scheduler;
    if (!f.engine.empty()) base.engine = f.engine;
    if (!f.kappa.empty()) base.kappa = f.kappa == "empty" ? Kappa::Empty : Kappa::Identity;
    if (!f.restrict_.empty()) base.restrictions = splitComma(f.restrict_);
    if (f.maxSteps >= 0) base.maxSteps = f.maxSteps;
    return base;
}

ordered_json traceRecord(const TraceEntry& e) {
    ordered_json rec;
    rec["step"] = e.step;
    rec["rule"] = e.rule;
    rec["task"] = e.task;
    rec["label"] = e.label.str();
    if (!e.configAfter.empty()) rec["config"] = e.configAfter;
    return rec;
}

const char* endName(RunEnd e) {
    switch (e) {
        case RunEnd::Terminal: return "terminal";
        case RunEnd::BudgetExhausted: return "budget-exhausted";
        case RunEnd::HeadLivelock: return "head-livelock";
    }
    return "?";
}

template <class Trace>
void emitTrace(const Trace& trace, RunEnd end, const std::string& format, bool capture) {
    if (format == "records") {
        for (const auto& e : trace) std::cout << traceRecord(e).dump() << "\n";
        ordered_json fin;
        fin["outcome"] = endName(end);
        fin["steps"] = trace.size();
        std::cout << fin.dump() << "\n";
        return;
    }
    for (const auto& e : trace) {
        std::cout << e.step << "  " << e.rule << "  task " << e.task << " @" << e.label.str();
        if (capture) std::cout << "  " << e.configAfter;
        std::cout << "\n";
    }
    std::cout << "outcome: " << endName(end) << " after " << trace.size() << " step(s)\n";
}

int cmdRun(const std::string& path, const CommonFlags& flags, bool capture) {
    ParsedProgram prog = parseProgram(readFile(path));
    RunSettings rs = mergeSettings(prog.settings, flags);
    RestrictionFamily fam = familiesByName(rs.restrictions);
    StepOptions opts;
    opts.kappa = rs.kappa;
    if (!fam.empty()) opts.restrictions = &fam;
    SchedulerPolicy alpha = schedulerByName(rs.scheduler);

    if (rs.engine == "concrete") {
        ConcreteRunResult r = runConcrete(isoFInv(prog.config), alpha, opts, rs.maxSteps, capture);
        emitTrace(r.trace, r.end, flags.format, capture);
        if (flags.format == "pretty") std::cout << printConcrete(r.final) << "\n";
        return 0;
    }
    RunResult r = run(prog.config, alpha, opts, rs.maxSteps, capture);
    emitTrace(r.trace, r.end, flags.format, capture);
    if (flags.format == "pretty") std::cout << printConfig(r.final) << "\n";
    return 0;
}

int cmdErase(const std::string& path, const CommonFlags& flags, const std::string& at,
             int after) {
    ParsedProgram prog = parseProgram(readFile(path));
    RunSettings rs = mergeSettings(prog.settings, flags);
    auto obs = Label::parse(at);
    if (!obs || obs->lattice() != rs.lattice) {
        std::cerr << "erase: --at needs a label from the program lattice\n";
        return 1;
    }
    RestrictionFamily fam = familiesByName(rs.restrictions);
    StepOptions opts;
    opts.kappa = rs.kappa;
    if (!fam.empty()) opts.restrictions = &fam;
    SchedulerPolicy alpha = schedulerByName(rs.scheduler);

    int steps = after >= 0 ? after : rs.maxSteps;
    Configuration final;
    if (rs.engine == "concrete") {
        ConcreteRunResult r = runConcrete(isoFInv(prog.config), alpha, opts, steps, false);
        ConcreteConfiguration erased = eraseConcrete(r.final, *obs);
        if (flags.format == "records") {
            ordered_json rec;
            rec["at"] = obs->str();
            rec["erased"] = printConcrete(erased);
            std::cout << rec.dump() << "\n";
        } else {
            std::cout << printConcrete(erased) << "\n";
        }
        return 0;
    }
    RunResult r = run(prog.config, alpha, opts, steps, false);
    ErasedConfiguration erased = eraseConfig(r.final, *obs);
    if (flags.format == "records") {
        ordered_json rec;
        rec["at"] = obs->str();
        rec["erased"] = printConfig(erased.config);
        std::cout << rec.dump() << "\n";
    } else {
        std::cout << printConfig(erased.config) << "\n";
    }
    return 0;
}

struct CheckFlags {
    std::string mode = "tsni";
    int pairs = 100;
    std::uint64_t seed = 0;
    bool seedSet = false;
    int budget = 500;
    std::string at = "pub";
    std::string lattice = "twopoint";
    bool extensions = false;
    bool brokenRecv = false;
};

int cmdCheck(const CommonFlags& flags, const CheckFlags& cf) {
    GenParams gen;
    gen.lattice = cf.lattice == "powerset" ? LatticeKind::Powerset : LatticeKind::TwoPoint;
    gen.extensions = cf.extensions;
    auto obs = Label::parse(cf.at);
    if (!obs || obs->lattice() != gen.lattice) {
        std::cerr << "check: --at needs a label from the selected lattice\n";
        return 1;
    }

    std::uint64_t seed = cf.seed;
    if (!cf.seedSet) {
        if (const char* env = std::getenv("IFC_SEED")) {
            seed = std::strtoull(env, nullptr, 10);
        }
    }

    RestrictionFamily fam = familiesByName(splitComma(flags.restrict_));
    gen.clearance = !flags.restrict_.empty() &&
                    flags.restrict_.find("clearance") != std::string::npos;
    StepOptions opts;
    if (!fam.empty()) opts.restrictions = &fam;
    opts.filterRecv = !cf.brokenRecv;
    SchedulerPolicy alpha = schedulerByName(flags.scheduler.empty() ? "rr" : flags.scheduler);

    auto emit = [&](const SuiteStats& s, const std::string& mode) -> int {
        if (flags.format == "records") {
            ordered_json rec;
            rec["mode"] = mode;
            rec["pairs"] = s.pairs;
            rec["passes"] = s.passes;
            rec["violations"] = s.violations;
            rec["inconclusive"] = s.inconclusive;
            rec["mutually_terminating"] = s.mutuallyTerminating;
            rec["seed"] = seed;
            rec["violating_seeds"] = s.violatingSeeds;
            std::cout << rec.dump() << "\n";
        } else {
            std::cout << mode << ": " << s.passes << " pass, " << s.violations << " violation(s), "
                      << s.inconclusive << " inconclusive";
            if (mode == "tini") std::cout << ", " << s.mutuallyTerminating << " both-terminating";
            std::cout << " over " << s.pairs << " pairs (seed " << seed << ")\n";
            for (auto vs : s.violatingSeeds) std::cout << "  violating pair seed: " << vs << "\n";
        }
        if (s.violations > 0) return 2;
        if (s.passes == 0 && s.inconclusive > 0) return 3;
        return 0;
    };

    bool concreteEngine = flags.engine == "concrete";
    if (cf.mode == "tsni") {
        return emit(runTsniSuite(cf.pairs, seed, *obs, alpha, opts, cf.budget, gen,
                                 concreteEngine),
                    "tsni");
    }
    if (cf.mode == "tini") {
        return emit(runTiniSuite(cf.pairs, seed, *obs, alpha, opts, cf.budget, gen,
                                 concreteEngine),
                    "tini");
    }
    if (cf.mode == "iso") {
        Rng rng(seed ? seed : 1);
        int roundTrips = 0, squares = 0, wfFailures = 0;
        std::vector<Label> probes;
        if (gen.lattice == LatticeKind::TwoPoint) {
            probes = {Label::pub(), Label::sec()};
        } else {
            probes = {Label::principals({}), Label::powersetTop()};
        }
        for (int i = 0; i < cf.pairs; ++i) {
            ConcreteConfiguration c = genConcrete(rng, gen);
            for (int s = rng.below(20); s > 0; --s) {
                if (stepConcrete(c, alpha, {}, nullptr) == StepStatus::Terminal) break;
            }
            if (!wf(c)) {
                wfFailures++;
                continue;
            }
            if (printConcrete(isoFInv(isoF(c))) == printConcrete(c)) roundTrips++;
            if (checkFunctorial(c, alpha, probes)) squares++;
        }
        bool ok = roundTrips == cf.pairs && squares == cf.pairs && wfFailures == 0;
        if (flags.format == "records") {
            ordered_json rec;
            rec["mode"] = "iso";
            rec["configs"] = cf.pairs;
            rec["roundtrips"] = roundTrips;
            rec["commuting_squares"] = squares;
            rec["wf_failures"] = wfFailures;
            std::cout << rec.dump() << "\n";
        } else {
            std::cout << "iso: " << roundTrips << "/" << cf.pairs << " roundtrips, " << squares
                      << "/" << cf.pairs << " commuting squares, " << wfFailures
                      << " wf failures\n";
        }
        return ok ? 0 : 2;
    }
    std::cerr << "check: unknown --mode " << cf.mode << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-grained dynamic IFC runtime"};
    app.require_subcommand(1);

    CommonFlags runFlags, eraseFlags, checkFlags;
    std::string runPath, erasePath;
    bool capture = false;
    CLI::App* runCmd = app.add_subcommand("run", "run a program and print its trace");
    runCmd->add_option("program", runPath, "program file")->required();
    runCmd->add_flag("--configs", capture, "include a configuration snapshot per step");
    addCommon(runCmd, runFlags);

    std::string at = "pub";
    int after = -1;
    CLI::App* eraseCmd = app.add_subcommand("erase", "run, then print the erased configuration");
    eraseCmd->add_option("program", erasePath, "program file")->required();
    eraseCmd->add_option("--at", at, "observation label")->required();
    eraseCmd->add_option("--after", after, "erase after N steps (default: run to the budget)");
    addCommon(eraseCmd, eraseFlags);

    CheckFlags cf;
    CLI::App* checkCmd = app.add_subcommand("check", "run the non-interference suites");
    checkCmd->add_option("--mode", cf.mode, "tsni, tini or iso")
        ->check(CLI::IsMember({"tsni", "tini", "iso"}));
    checkCmd->add_option("--pairs", cf.pairs, "number of generated pairs / configs");
    auto* seedOpt = checkCmd->add_option("--seed", cf.seed, "suite seed (default: IFC_SEED)");
    checkCmd->add_option("--budget", cf.budget, "step budget per run");
    checkCmd->add_option("--at", cf.at, "observation label");
    checkCmd->add_option("--lattice", cf.lattice, "twopoint or powerset")
        ->check(CLI::IsMember({"twopoint", "powerset"}));
    checkCmd->add_flag("--extensions", cf.extensions, "generate labeled values and references");
    checkCmd->add_flag("--broken-recv", cf.brokenRecv,
                       "use the deliberately unfiltered receive (sensitivity check)");
    addCommon(checkCmd, checkFlags);

    CLI11_PARSE(app, argc, argv);
    cf.seedSet = seedOpt->count() > 0;

    try {
        if (runCmd->parsed()) return cmdRun(runPath, runFlags, capture);
        if (eraseCmd->parsed()) return cmdErase(erasePath, eraseFlags, at, after);
        if (checkCmd->parsed()) return cmdCheck(checkFlags, cf);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
