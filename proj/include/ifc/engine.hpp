#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifc/config.hpp"
#include "ifc/restrict.hpp"

namespace ifc {

// What a freshly sandboxed task starts its target store from.
enum class Kappa { Identity, Empty };

TargetStore kappaIdentity(const TargetStore& s);
TargetStore kappaEmpty(const TargetStore& s);

struct StepOptions {
    Kappa kappa = Kappa::Identity;
    const RestrictionFamily* restrictions = nullptr;
    // Selects the deliberately broken receive (no queue filtering); exists so
    // the non-interference harness can prove it would notice a leak.
    bool filterRecv = true;
};

struct StepRecord {
    std::string rule;
    int task = 0;
    Label label;
};

enum class StepStatus { Stepped, Terminal };

// One global step: the head task acts, the scheduler rearranges. Terminal
// when the task list is empty or a sequential singleton has reduced to a
// value; the configuration is left untouched in that case.
StepStatus stepConfig(Configuration& c, const SchedulerPolicy& alpha, const StepOptions& opts,
                      StepRecord* record = nullptr);

enum class RunEnd { Terminal, BudgetExhausted, HeadLivelock };

struct TraceEntry {
    int step;
    std::string rule;
    int task;
    Label label;
    std::string configAfter;  // filled when capture is requested
};

struct RunResult {
    std::vector<TraceEntry> trace;
    RunEnd end;
    Configuration final;
};

// Runs up to maxSteps global steps. A sequential scheduler that keeps a stuck
// head is reported as HeadLivelock rather than burning the whole budget.
RunResult run(Configuration c, const SchedulerPolicy& alpha, const StepOptions& opts,
              int maxSteps, bool captureConfigs = false);

// The blocking-receive macro: spins on recv through a cross-language
// fixpoint until a message arrives.
TermPtr blockingRecvMacro(const std::string& x1, const std::string& x2, const TermPtr& body);

}  // namespace ifc
