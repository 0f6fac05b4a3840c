#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ifc/ifc_step.hpp"
#include "ifc/label.hpp"
#include "ifc/target_step.hpp"
#include "ifc/term.hpp"

namespace ifc {

// An isolated unit of execution: its own target store, a mixed expression,
// an identity, a floating label and a clearance bound (top by default).
struct Task {
    TargetStore store;
    TermPtr expr;
    int id = 0;
    Label label;
    Label clearance;
};

// The whole machine: message queues, the ordered task list (only the head
// steps), the shared labeled-reference store, and the freshness counters.
// label_registry records each task's most recent label; queue erasure needs
// it even after the task is gone.
struct Configuration {
    QueueMap queues;
    std::vector<Task> tasks;
    LabeledStore labeledStore;
    std::map<int, Label> labelRegistry;
    int nextTaskId = 1;
    int nextLabeledAddr = 0;
    LatticeKind lattice = LatticeKind::TwoPoint;
};

// Builds a configuration from initial tasks: queues, registry and the id
// counter are derived.
Configuration makeConfiguration(std::vector<Task> tasks,
                                LatticeKind lattice = LatticeKind::TwoPoint);

// A scheduling policy: four transformers over the task list. They reorder,
// drop or keep whole tasks and never look inside them.
struct SchedulerPolicy {
    using Transform = std::function<std::vector<Task>(std::vector<Task>)>;
    std::string name;
    Transform step;
    Transform done;
    Transform noStep;
    Transform sandbox;  // input has the freshly created task appended last
};

SchedulerPolicy schedulerRR();
SchedulerPolicy schedulerSeq();
SchedulerPolicy schedulerByName(const std::string& name);

// Complete, deterministic rendering of a configuration; equal strings mean
// equal machines (used for cycle detection and replay checks).
std::string printConfig(const Configuration& c);
std::string printTask(const Task& t);

}  // namespace ifc
