#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ifc/engine.hpp"
#include "ifc/erase.hpp"
#include "ifc/generate.hpp"

namespace ifc {

// How an observed run ended.
//
//   Terminal:    no further transitions possible
//   Livelock:    sequential scheduler holding a stuck head forever
//   CycleStable: the raw machine revisited an exact earlier state without
//                the observation changing in between, so the observer's view
//                is frozen from here on
//   Open:        budget or size limit hit first; the future is unknown
enum class RunEndKind { Terminal, Livelock, CycleStable, Open };

struct ObservedRun {
    std::vector<std::string> sigs;  // stutter-collapsed erased snapshots
    RunEndKind end = RunEndKind::Open;
    int steps = 0;
    bool decisive() const { return end != RunEndKind::Open; }
};

enum class Outcome { Pass, Violation, Inconclusive };

struct NIVerdict {
    Outcome outcome;
    int index = -1;  // first divergent collapsed snapshot
    std::string witnessA, witnessB;
    RunEndKind endA = RunEndKind::Open;
    RunEndKind endB = RunEndKind::Open;
    // both observed traces, kept when the comparison found a violation
    std::vector<std::string> traceA, traceB;
};

// Drives one run while recording the observer's view after every step.
// EngineTraits supplies: Config, step(Config&, alpha, opts, StepRecord*),
// sig(Config, Label), raw(Config), oversize(Config).
template <class EngineTraits>
ObservedRun observeRun(typename EngineTraits::Config c, const SchedulerPolicy& alpha,
                       const StepOptions& opts, const Label& l, int budget) {
    ObservedRun out;
    out.sigs.push_back(EngineTraits::sig(c, l));
    std::unordered_map<std::string, std::size_t> seen;
    seen.emplace(EngineTraits::raw(c), out.sigs.size());
    for (int i = 0; i < budget; ++i) {
        StepRecord rec;
        if (EngineTraits::step(c, alpha, opts, &rec) == StepStatus::Terminal) {
            out.end = RunEndKind::Terminal;
            return out;
        }
        out.steps = i + 1;
        std::string s = EngineTraits::sig(c, l);
        if (s != out.sigs.back()) out.sigs.push_back(std::move(s));
        if (alpha.name == "seq" && rec.rule == "I-noStep") {
            out.end = RunEndKind::Livelock;
            return out;
        }
        if (EngineTraits::oversize(c)) {
            out.end = RunEndKind::Open;
            return out;
        }
        auto [it, fresh] = seen.emplace(EngineTraits::raw(c), out.sigs.size());
        if (!fresh) {
            // Exact revisit: the future is periodic. Only a cycle that kept
            // the observation still justifies a verdict.
            out.end = it->second == out.sigs.size() ? RunEndKind::CycleStable : RunEndKind::Open;
            return out;
        }
    }
    out.end = RunEndKind::Open;
    return out;
}

// Bounded decision for the two noninterference properties, built from the
// two observed runs. A decisive shorter run is padded with its final
// snapshot (that view genuinely persists forever), so any index mismatch is
// a real counterexample; Pass is only claimed when both futures are known.
NIVerdict compareTsni(const ObservedRun& a, const ObservedRun& b);
NIVerdict compareTini(const ObservedRun& a, const ObservedRun& b);

struct AbstractEngineTraits {
    using Config = Configuration;
    static StepStatus step(Config& c, const SchedulerPolicy& alpha, const StepOptions& opts,
                           StepRecord* rec) {
        return stepConfig(c, alpha, opts, rec);
    }
    static std::string sig(const Config& c, const Label& l) {
        return canonicalSignature(eraseConfig(c, l));
    }
    static std::string raw(const Config& c) { return printConfig(c); }
    static bool oversize(const Config& c);
};

// Termination-sensitive check: erased-trace containment with stuttering.
NIVerdict checkTsni(const Configuration& c1, const Configuration& c2, const Label& l,
                    const SchedulerPolicy& alpha, const StepOptions& opts, int budget);

// Termination-insensitive check: only mutually terminating runs decide.
NIVerdict checkTini(const Configuration& c1, const Configuration& c2, const Label& l,
                    const SchedulerPolicy& alpha, const StepOptions& opts, int budget);

struct SuiteStats {
    int pairs = 0;
    int passes = 0;
    int violations = 0;
    int inconclusive = 0;
    int mutuallyTerminating = 0;  // TINI suites: both runs reached Terminal
    std::vector<std::uint64_t> violatingSeeds;
};

std::uint64_t pairSeed(std::uint64_t suiteSeed, int index);

// The suites run over generated pairs; `concreteEngine` transports each pair
// through the isomorphism and drives the single-heap machine instead.
SuiteStats runTsniSuite(int pairs, std::uint64_t seed, const Label& l,
                        const SchedulerPolicy& alpha, const StepOptions& opts, int budget,
                        const GenParams& gen, bool concreteEngine = false);
SuiteStats runTiniSuite(int pairs, std::uint64_t seed, const Label& l,
                        const SchedulerPolicy& alpha, const StepOptions& opts, int budget,
                        const GenParams& gen, bool concreteEngine = false);

}  // namespace ifc
