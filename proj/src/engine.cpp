#include "ifc/engine.hpp"

#include <stdexcept>

#include "ifc/decompose.hpp"

namespace ifc {

TargetStore kappaIdentity(const TargetStore& s) { return s; }
TargetStore kappaEmpty(const TargetStore&) { return TargetStore{}; }

namespace {

bool isTerminal(const Configuration& c, const SchedulerPolicy& alpha) {
    if (c.tasks.empty()) return true;
    // Seq keeps a lone finished task in place forever; classify that fixpoint
    // as terminal instead of looping on it.
    return alpha.name == "seq" && c.tasks.size() == 1 && isIfcValue(c.tasks[0].expr);
}

bool ruleAllowed(const Configuration& c, const StepOptions& opts, const char* rule) {
    if (!opts.restrictions || opts.restrictions->empty()) return true;
    ErasedConfiguration view = eraseConfig(c, c.tasks.front().label);
    return opts.restrictions->allows(rule, view);
}

void commitIfcEffect(Configuration& c, Task& head, const IfcEffect& eff) {
    if (eff.newLabel) {
        head.label = *eff.newLabel;
        c.labelRegistry[head.id] = head.label;
    }
    if (eff.newClearance) head.clearance = *eff.newClearance;
    if (eff.sendTo) c.queues[eff.sendTo->first].push_front(eff.sendTo->second);
    if (eff.replaceOwnQueue) c.queues[head.id] = *eff.replaceOwnQueue;
    if (eff.newCell) {
        c.labeledStore[eff.newCell->first] = eff.newCell->second;
        c.nextLabeledAddr = eff.newCell->first + 1;
    }
    if (eff.writeCell) c.labeledStore[eff.writeCell->first].value = eff.writeCell->second;
}

void finish(Configuration& c, const SchedulerPolicy::Transform& t, StepRecord* record,
            const char* rule, int actorId, const Label& actorLabel) {
    if (record) {
        record->rule = rule;
        record->task = actorId;
        record->label = actorLabel;
    }
    c.tasks = t(std::move(c.tasks));
}

}  // namespace

StepStatus stepConfig(Configuration& c, const SchedulerPolicy& alpha, const StepOptions& opts,
                      StepRecord* record) {
    if (isTerminal(c, alpha)) return StepStatus::Terminal;

    Task& head = c.tasks.front();
    const int actorId = head.id;
    const Label actorLabel = head.label;

    if (isIfcValue(head.expr)) {
        if (ruleAllowed(c, opts, "I-done")) {
            finish(c, alpha.done, record, "I-done", actorId, actorLabel);
        } else {
            finish(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
        }
        return StepStatus::Stepped;
    }

    Decomposition d = decompose(head.expr);
    switch (d.kind) {
        case FocusKind::WholeValue:
            // Unreachable: handled by the I-done branch above.
            throw std::logic_error("decompose returned WholeValue for a non-value");

        case FocusKind::BorderToIfc:
        case FocusKind::BorderToTarget: {
            const char* rule = d.kind == FocusKind::BorderToIfc ? "I-border" : "T-border";
            if (!ruleAllowed(c, opts, rule)) {
                finish(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
                return StepStatus::Stepped;
            }
            head.expr = plug(d, d.focus->kids[0]->kids[0]);
            finish(c, alpha.step, record, rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::SandboxRedex: {
            if (!ruleAllowed(c, opts, "I-sandbox")) {
                finish(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
                return StepStatus::Stepped;
            }
            int childId = c.nextTaskId++;
            Task child;
            child.store = opts.kappa == Kappa::Identity ? kappaIdentity(head.store)
                                                        : kappaEmpty(head.store);
            child.expr = d.focus->kids[0];
            child.id = childId;
            child.label = head.label;
            child.clearance = head.clearance;
            c.queues[childId] = {};
            c.labelRegistry[childId] = child.label;
            head.expr = plug(d, mk::taskIdLit(childId));
            c.tasks.push_back(std::move(child));
            finish(c, alpha.sandbox, record, "I-sandbox", actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::TargetRedex: {
            TaskStoreView view(head.store);
            auto eff = evalTargetRedex(view, d.focus);
            if (!eff || !ruleAllowed(c, opts, eff->rule)) {
                finish(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
                return StepStatus::Stepped;
            }
            commitToStore(head.store, *eff);
            head.expr = plug(d, eff->result);
            finish(c, alpha.step, record, eff->rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::IfcRedex: {
            IfcStepContext ctx{c.queues,   c.labeledStore, head.id,
                               head.label, head.clearance, c.nextLabeledAddr};
            auto eff = evalIfcRedex(ctx, d.focus, opts.filterRecv);
            if (!eff || !ruleAllowed(c, opts, eff->rule)) {
                finish(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
                return StepStatus::Stepped;
            }
            commitIfcEffect(c, head, *eff);
            head.expr = plug(d, eff->result);
            finish(c, alpha.step, record, eff->rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }
    }
    throw std::logic_error("unhandled focus kind");
}

RunResult run(Configuration c, const SchedulerPolicy& alpha, const StepOptions& opts,
              int maxSteps, bool captureConfigs) {
    RunResult result;
    for (int i = 0; i < maxSteps; ++i) {
        StepRecord rec;
        if (stepConfig(c, alpha, opts, &rec) == StepStatus::Terminal) {
            result.end = RunEnd::Terminal;
            result.final = std::move(c);
            return result;
        }
        TraceEntry entry{i, rec.rule, rec.task, rec.label, ""};
        if (captureConfigs) entry.configAfter = printConfig(c);
        result.trace.push_back(std::move(entry));
        // Seq's noStep keeps the stuck head in place, so the configuration
        // cannot change any more; report the livelock instead of spinning.
        if (alpha.name == "seq" && rec.rule == "I-noStep") {
            result.end = RunEnd::HeadLivelock;
            result.final = std::move(c);
            return result;
        }
    }
    if (isTerminal(c, alpha)) {
        result.end = RunEnd::Terminal;
    } else {
        result.end = RunEnd::BudgetExhausted;
    }
    result.final = std::move(c);
    return result;
}

TermPtr blockingRecvMacro(const std::string& x1, const std::string& x2, const TermPtr& body) {
    std::string k = "k";
    auto bodyFree = freeVars(body);
    while (k == x1 || k == x2 || bodyFree.count(k)) k += "'";
    return mk::toIfc(mk::fix(
        mk::lam(k, mk::toTarget(mk::recv(x1, x2, body, mk::toIfc(mk::var(k)))))));
}

}  // namespace ifc
