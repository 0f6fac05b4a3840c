#include "ifc/heap.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

#include "ifc/decompose.hpp"

namespace ifc {

ConcreteConfiguration makeConcreteConfiguration(std::vector<ConcreteTask> tasks,
                                                LatticeKind lattice) {
    ConcreteConfiguration c;
    c.lattice = lattice;
    c.tasks = std::move(tasks);
    for (auto& t : c.tasks) {
        if (c.queues.count(t.id)) throw std::invalid_argument("duplicate task id");
        c.queues[t.id] = {};
        c.labelRegistry[t.id] = t.label;
        c.nextTaskId = std::max(c.nextTaskId, t.id + 1);
    }
    return c;
}

namespace {

bool ownedBy(const TermPtr& e, int id) {
    for (const auto& [owner, addr] : addrVars(e).target) {
        if (owner != id) return false;
    }
    return true;
}

bool targetAddrFree(const TermPtr& e) { return addrVars(e).target.empty(); }

class ConcreteHeapView final : public TargetHeapView {
  public:
    ConcreteHeapView(const ConcreteConfiguration& c, const ConcreteTask& task)
        : c_(c), task_(task) {}
    TermPtr freshAddr() const override { return mk::addr(task_.nextAddr, task_.id); }
    std::optional<TermPtr> load(const Term& addr) const override {
        auto it = c_.heap.find({addr.owner, addr.num});
        if (it == c_.heap.end()) return std::nullopt;
        return it->second;
    }

  private:
    const ConcreteConfiguration& c_;
    const ConcreteTask& task_;
};

std::vector<ConcreteTask> applyPolicy(const SchedulerPolicy::Transform& t,
                                      std::vector<ConcreteTask> ts) {
    // Policies only permute or drop whole entries; running them over
    // placeholder tasks transfers the rearrangement.
    std::vector<Task> shadow(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) shadow[i].id = static_cast<int>(i);
    shadow = t(std::move(shadow));
    std::vector<ConcreteTask> out;
    out.reserve(shadow.size());
    for (const auto& s : shadow) out.push_back(std::move(ts[static_cast<size_t>(s.id)]));
    return out;
}

bool isTerminalConcrete(const ConcreteConfiguration& c, const SchedulerPolicy& alpha) {
    if (c.tasks.empty()) return true;
    return alpha.name == "seq" && c.tasks.size() == 1 && isIfcValue(c.tasks[0].expr);
}

bool ruleAllowedConcrete(const ConcreteConfiguration& c, const StepOptions& opts,
                         const char* rule) {
    if (!opts.restrictions || opts.restrictions->empty()) return true;
    // Extra families still see only an erased view, reached through the
    // isomorphism image.
    ErasedConfiguration view = eraseConfig(isoF(c), c.tasks.front().label);
    return opts.restrictions->allows(rule, view);
}

void commitIfcEffectConcrete(ConcreteConfiguration& c, ConcreteTask& head, const IfcEffect& eff) {
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

void finishConcrete(ConcreteConfiguration& c, const SchedulerPolicy::Transform& t,
                    StepRecord* record, const char* rule, int actorId, const Label& actorLabel) {
    if (record) {
        record->rule = rule;
        record->task = actorId;
        record->label = actorLabel;
    }
    c.tasks = applyPolicy(t, std::move(c.tasks));
    // Collect heap fragments of tasks the policy dropped; the isolated
    // machine freed those stores together with the task. This is what the
    // (owner, address) keying is for.
    std::set<int> live;
    for (const auto& task : c.tasks) live.insert(task.id);
    for (auto it = c.heap.begin(); it != c.heap.end();) {
        it = live.count(it->first.first) ? std::next(it) : c.heap.erase(it);
    }
}

}  // namespace

bool wf(const ConcreteConfiguration& c) {
    for (const auto& t : c.tasks) {
        if (!ownedBy(t.expr, t.id)) return false;
        for (const auto& [owner, addr] : addrVars(t.expr).target) {
            if (owner < 0) return false;  // untagged address in the single heap
        }
    }
    for (const auto& [key, v] : c.heap) {
        if (!ownedBy(v, key.first)) return false;
    }
    for (const auto& [id, q] : c.queues) {
        for (const auto& m : q) {
            if (!targetAddrFree(m.payload)) return false;
        }
    }
    for (const auto& [a, cell] : c.labeledStore) {
        if (!targetAddrFree(cell.value)) return false;
    }
    return true;
}

StepStatus stepConcrete(ConcreteConfiguration& c, const SchedulerPolicy& alpha,
                        const StepOptions& opts, StepRecord* record) {
    if (isTerminalConcrete(c, alpha)) return StepStatus::Terminal;

    ConcreteTask& head = c.tasks.front();
    const int actorId = head.id;
    const Label actorLabel = head.label;

    auto noStep = [&]() {
        finishConcrete(c, alpha.noStep, record, "I-noStep", actorId, actorLabel);
        return StepStatus::Stepped;
    };

    if (isIfcValue(head.expr)) {
        if (!ruleAllowedConcrete(c, opts, "I-done")) return noStep();
        finishConcrete(c, alpha.done, record, "I-done", actorId, actorLabel);
        return StepStatus::Stepped;
    }

    Decomposition d = decompose(head.expr);
    switch (d.kind) {
        case FocusKind::WholeValue:
            throw std::logic_error("decompose returned WholeValue for a non-value");

        case FocusKind::BorderToIfc:
        case FocusKind::BorderToTarget: {
            const char* rule = d.kind == FocusKind::BorderToIfc ? "I-border" : "T-border";
            if (!ruleAllowedConcrete(c, opts, rule)) return noStep();
            head.expr = plug(d, d.focus->kids[0]->kids[0]);
            finishConcrete(c, alpha.step, record, rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::SandboxRedex: {
            // The no-address premise is part of the rule here, not a bolt-on.
            if (!addrVars(d.focus->kids[0]).empty()) return noStep();
            if (!ruleAllowedConcrete(c, opts, "I-sandbox")) return noStep();
            int childId = c.nextTaskId++;
            ConcreteTask child;
            child.expr = d.focus->kids[0];
            child.id = childId;
            child.label = head.label;
            child.clearance = head.clearance;
            c.queues[childId] = {};
            c.labelRegistry[childId] = child.label;
            head.expr = plug(d, mk::taskIdLit(childId));
            c.tasks.push_back(std::move(child));
            finishConcrete(c, alpha.sandbox, record, "C-sandbox", actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::TargetRedex: {
            ConcreteHeapView view(c, head);
            auto eff = evalTargetRedex(view, d.focus);
            if (!eff || !ruleAllowedConcrete(c, opts, eff->rule)) return noStep();
            if (eff->writeAddr) {
                c.heap[{eff->writeAddr->owner, eff->writeAddr->num}] = eff->writeVal;
                if (eff->writeAddr->owner == head.id && eff->writeAddr->num >= head.nextAddr) {
                    head.nextAddr = eff->writeAddr->num + 1;
                }
            }
            head.expr = plug(d, eff->result);
            finishConcrete(c, alpha.step, record, eff->rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }

        case FocusKind::IfcRedex: {
            IfcStepContext ctx{c.queues,   c.labeledStore, head.id,
                               head.label, head.clearance, c.nextLabeledAddr};
            auto eff = evalIfcRedex(ctx, d.focus, opts.filterRecv);
            if (!eff) return noStep();
            const char* rule = eff->rule;
            if (std::string(rule) == "I-send") {
                if (!addrVars(d.focus->kids[2]).empty()) return noStep();
                rule = "C-send";
            }
            if (!ruleAllowedConcrete(c, opts, eff->rule)) return noStep();
            commitIfcEffectConcrete(c, head, *eff);
            head.expr = plug(d, eff->result);
            finishConcrete(c, alpha.step, record, rule, actorId, actorLabel);
            return StepStatus::Stepped;
        }
    }
    throw std::logic_error("unhandled focus kind");
}

ConcreteRunResult runConcrete(ConcreteConfiguration c, const SchedulerPolicy& alpha,
                              const StepOptions& opts, int maxSteps, bool captureConfigs) {
    ConcreteRunResult result;
    for (int i = 0; i < maxSteps; ++i) {
        StepRecord rec;
        if (stepConcrete(c, alpha, opts, &rec) == StepStatus::Terminal) {
            result.end = RunEnd::Terminal;
            result.final = std::move(c);
            return result;
        }
        TraceEntry entry{i, rec.rule, rec.task, rec.label, ""};
        if (captureConfigs) entry.configAfter = printConcrete(c);
        result.trace.push_back(std::move(entry));
        if (alpha.name == "seq" && rec.rule == "I-noStep") {
            result.end = RunEnd::HeadLivelock;
            result.final = std::move(c);
            return result;
        }
    }
    result.end = isTerminalConcrete(c, alpha) ? RunEnd::Terminal : RunEnd::BudgetExhausted;
    result.final = std::move(c);
    return result;
}

namespace {

TermPtr mapAddrs(const TermPtr& t, int newOwner) {
    if (t->kind == TermKind::Addr && t->owner != newOwner) {
        return mk::addr(t->num, newOwner);
    }
    if (t->kids.empty()) return t;
    bool changed = false;
    std::vector<TermPtr> kids;
    kids.reserve(t->kids.size());
    for (const auto& k : t->kids) {
        TermPtr nk = mapAddrs(k, newOwner);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
    }
    if (!changed) return t;
    auto copy = std::make_shared<Term>(*t);
    copy->kids = std::move(kids);
    return copy;
}

}  // namespace

Configuration isoF(const ConcreteConfiguration& c) {
    if (!wf(c)) throw std::invalid_argument("isoF requires a well-formed configuration");
    Configuration out;
    out.lattice = c.lattice;
    out.queues = c.queues;
    out.labeledStore = c.labeledStore;
    out.labelRegistry = c.labelRegistry;
    out.nextTaskId = c.nextTaskId;
    out.nextLabeledAddr = c.nextLabeledAddr;
    for (const auto& t : c.tasks) {
        Task at;
        at.id = t.id;
        at.label = t.label;
        at.clearance = t.clearance;
        at.expr = mapAddrs(t.expr, -1);
        at.store.next = t.nextAddr;
        // Split the heap by owner; fragments of tasks no longer in the list
        // have no abstract home and are dropped (the abstract machine
        // collected them when the task went away).
        for (auto it = c.heap.lower_bound({t.id, 0});
             it != c.heap.end() && it->first.first == t.id; ++it) {
            at.store.cells[it->first.second] = mapAddrs(it->second, -1);
        }
        out.tasks.push_back(std::move(at));
    }
    return out;
}

ConcreteConfiguration isoFInv(const Configuration& c) {
    ConcreteConfiguration out;
    out.lattice = c.lattice;
    out.queues = c.queues;
    out.labeledStore = c.labeledStore;
    out.labelRegistry = c.labelRegistry;
    out.nextTaskId = c.nextTaskId;
    out.nextLabeledAddr = c.nextLabeledAddr;
    for (const auto& [id, q] : out.queues) {
        for (const auto& m : q) {
            if (!targetAddrFree(m.payload)) {
                throw std::invalid_argument("isoFInv: message payload carries an address");
            }
        }
    }
    for (const auto& [a, cell] : out.labeledStore) {
        if (!targetAddrFree(cell.value)) {
            throw std::invalid_argument("isoFInv: labeled cell carries an address");
        }
    }
    for (const auto& t : c.tasks) {
        ConcreteTask ct;
        ct.id = t.id;
        ct.label = t.label;
        ct.clearance = t.clearance;
        ct.nextAddr = t.store.next;
        ct.expr = mapAddrs(t.expr, t.id);
        for (const auto& [a, v] : t.store.cells) {
            out.heap[{t.id, a}] = mapAddrs(v, t.id);
        }
        out.tasks.push_back(std::move(ct));
    }
    return out;
}

ConcreteConfiguration eraseConcrete(const ConcreteConfiguration& c, const Label& l) {
    ConcreteConfiguration e;
    e.lattice = c.lattice;
    e.nextTaskId = c.nextTaskId;
    e.nextLabeledAddr = c.nextLabeledAddr;
    for (const auto& [id, lab] : c.labelRegistry) {
        if (lab.leq(l)) e.labelRegistry[id] = lab;
    }
    std::set<int> visible;
    for (const auto& t : c.tasks) {
        if (!t.label.leq(l)) continue;
        ConcreteTask et = t;
        et.expr = eraseTerm(t.expr, l);
        visible.insert(t.id);
        e.tasks.push_back(std::move(et));
    }
    for (const auto& [key, v] : c.heap) {
        if (!visible.count(key.first)) continue;  // high or collected owner
        e.heap[key] = eraseTerm(v, l);
    }
    for (const auto& [id, q] : c.queues) {
        auto reg = c.labelRegistry.find(id);
        if (reg == c.labelRegistry.end() || !reg->second.leq(l)) continue;
        e.queues[id] = filterQueue(q, l);
    }
    for (const auto& [a, cell] : c.labeledStore) {
        if (!cell.label.leq(l)) continue;
        e.labeledStore[a] = LabeledCell{cell.label, eraseTerm(cell.value, l)};
    }
    return e;
}

std::string printConcrete(const ConcreteConfiguration& c) {
    std::string out = "heap{";
    bool first = true;
    for (const auto& [key, v] : c.heap) {
        if (!first) out += " ";
        out += "(" + std::to_string(key.first) + ":a" + std::to_string(key.second) +
               ")=" + printTerm(v);
        first = false;
    }
    out += "} queues{";
    first = true;
    for (const auto& [id, q] : c.queues) {
        if (!first) out += " ";
        out += std::to_string(id) + ":[";
        bool f2 = true;
        for (const auto& m : q) {
            if (!f2) out += ",";
            out += "(" + m.label.str() + "," + std::to_string(m.sender) + "," +
                   printTerm(m.payload) + ")";
            f2 = false;
        }
        out += "]";
        first = false;
    }
    out += "} lstore{";
    first = true;
    for (const auto& [a, cell] : c.labeledStore) {
        if (!first) out += " ";
        out += "a" + std::to_string(a) + "@" + cell.label.str() + "=" + printTerm(cell.value);
        first = false;
    }
    out += "} registry{";
    first = true;
    for (const auto& [id, l] : c.labelRegistry) {
        if (!first) out += " ";
        out += std::to_string(id) + ":" + l.str();
        first = false;
    }
    out += "} next=" + std::to_string(c.nextTaskId) + "/" + std::to_string(c.nextLabeledAddr);
    out += " tasks[";
    first = true;
    for (const auto& t : c.tasks) {
        if (!first) out += " ";
        out += "<id=" + std::to_string(t.id) + " label=" + t.label.str() +
               " clr=" + t.clearance.str() + " #" + std::to_string(t.nextAddr) +
               " expr=" + printTerm(t.expr) + ">";
        first = false;
    }
    out += "]";
    return out;
}

std::string HeapEngineTraits::sig(const Config& c, const Label& l) {
    // Observation through the isomorphism image of the erased machine; this
    // is the same rendering the abstract side uses, so the transport suites
    // compare like with like.
    ConcreteConfiguration e = eraseConcrete(c, l);
    return canonicalSignature(ErasedConfiguration{isoF(e), l});
}

bool HeapEngineTraits::oversize(const Config& c) {
    std::uint64_t total = 0;
    for (const auto& t : c.tasks) {
        total += treeSize(t.expr, 20000);
        if (total >= 20000) return true;
    }
    return false;
}

bool checkFunctorial(const ConcreteConfiguration& c, const SchedulerPolicy& alpha,
                     const std::vector<Label>& probes) {
    if (!wf(c)) return false;

    RestrictionFamily norefs = pNorefs();
    StepOptions abstractOpts;
    abstractOpts.kappa = Kappa::Empty;  // concrete sandboxing starts from nothing
    abstractOpts.restrictions = &norefs;
    StepOptions concreteOpts;

    ConcreteConfiguration c2 = c;
    Configuration a = isoF(c);
    Configuration a2 = a;

    StepStatus sc = stepConcrete(c2, alpha, concreteOpts, nullptr);
    StepStatus sa = stepConfig(a2, alpha, abstractOpts, nullptr);
    if (sc != sa) return false;
    if (sc == StepStatus::Stepped) {
        if (!wf(c2)) return false;
        if (printConfig(isoF(c2)) != printConfig(a2)) return false;
    }

    for (const Label& l : probes) {
        if (canonicalSignature(ErasedConfiguration{isoF(eraseConcrete(c, l)), l}) !=
            canonicalSignature(eraseConfig(isoF(c), l))) {
            return false;
        }
        if (sc == StepStatus::Stepped &&
            canonicalSignature(ErasedConfiguration{isoF(eraseConcrete(c2, l)), l}) !=
                canonicalSignature(eraseConfig(a2, l))) {
            return false;
        }
    }
    return true;
}

ConcreteConfiguration genConcrete(Rng& rng, const GenParams& params) {
    Configuration a = genConfig(rng, params);
    return isoFInv(a);
}

ObservedRun heapObserveRun(const Configuration& c, const SchedulerPolicy& alpha,
                           const StepOptions& opts, const Label& l, int budget) {
    return observeRun<HeapEngineTraits>(isoFInv(c), alpha, opts, l, budget);
}

}  // namespace ifc
