#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ifc/check.hpp"
#include "ifc/engine.hpp"

namespace ifc {

// A task in the single-heap variant: no private store, only a freshness
// counter for the addresses it owns.
struct ConcreteTask {
    TermPtr expr;
    int id = 0;
    Label label;
    Label clearance;
    int nextAddr = 0;
};

// The optimized machine: one global heap keyed by (owning task, address).
// Addresses in terms carry their owner, rendered (i:aN). Sandboxing and
// sending refuse address-bearing terms outright, which is what keeps the
// shared heap morally equivalent to isolated ones.
struct ConcreteConfiguration {
    QueueMap queues;
    std::map<std::pair<int, int>, TermPtr> heap;
    std::vector<ConcreteTask> tasks;
    LabeledStore labeledStore;
    std::map<int, Label> labelRegistry;
    int nextTaskId = 1;
    int nextLabeledAddr = 0;
    LatticeKind lattice = LatticeKind::TwoPoint;
};

ConcreteConfiguration makeConcreteConfiguration(std::vector<ConcreteTask> tasks,
                                                LatticeKind lattice = LatticeKind::TwoPoint);

// Every address a task mentions must carry that task's id; heap cells may
// only mention their owner's addresses; messages and labeled cells carry no
// target addresses at all.
bool wf(const ConcreteConfiguration& c);

StepStatus stepConcrete(ConcreteConfiguration& c, const SchedulerPolicy& alpha,
                        const StepOptions& opts, StepRecord* record = nullptr);

struct ConcreteRunResult {
    std::vector<TraceEntry> trace;
    RunEnd end;
    ConcreteConfiguration final;
};

ConcreteRunResult runConcrete(ConcreteConfiguration c, const SchedulerPolicy& alpha,
                              const StepOptions& opts, int maxSteps,
                              bool captureConfigs = false);

// The two directions of the isomorphism with the address-restricted abstract
// machine: f splits the heap into per-task stores and drops owner tags;
// f-inverse tags each task's addresses and collapses the stores.
Configuration isoF(const ConcreteConfiguration& c);
ConcreteConfiguration isoFInv(const Configuration& c);

ConcreteConfiguration eraseConcrete(const ConcreteConfiguration& c, const Label& l);

std::string printConcrete(const ConcreteConfiguration& c);

// One-step commutation with the restricted abstract machine plus agreement
// of the erased images at the probe labels.
bool checkFunctorial(const ConcreteConfiguration& c, const SchedulerPolicy& alpha,
                     const std::vector<Label>& probes);

struct HeapEngineTraits {
    using Config = ConcreteConfiguration;
    static StepStatus step(Config& c, const SchedulerPolicy& alpha, const StepOptions& opts,
                           StepRecord* rec) {
        return stepConcrete(c, alpha, opts, rec);
    }
    static std::string sig(const Config& c, const Label& l);
    static std::string raw(const Config& c) { return printConcrete(c); }
    static bool oversize(const Config& c);
};

// A random well-formed concrete configuration (address-free terms; the heap
// fills in once it runs).
ConcreteConfiguration genConcrete(Rng& rng, const GenParams& params);

}  // namespace ifc
