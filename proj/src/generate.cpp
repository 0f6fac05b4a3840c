#include "ifc/generate.hpp"

#include <cassert>

#include "ifc/erase.hpp"

namespace ifc {

std::uint64_t Rng::next() {
    // xorshift64*; fixed algorithm so seeds mean the same thing everywhere
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
}

int Rng::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

bool Rng::chance(double p) {
    return static_cast<double>(next() >> 11) / 9007199254740992.0 < p;  // 2^53
}

namespace {

struct ScopeVar {
    std::string name;
    bool targetMode;  // language of the binder; used in its own mode directly
};

struct GenCtx {
    Rng& rng;
    const GenParams& params;
    std::vector<int> taskIds;
    Label taskLabel;
    std::vector<ScopeVar> scope;
    int nameCounter = 0;

    std::string freshVar() { return "v" + std::to_string(nameCounter++); }

    Label randLabel() {
        if (params.lattice == LatticeKind::TwoPoint) {
            return rng.chance(0.5) ? Label::pub() : Label::sec();
        }
        static const char* pool[] = {"A", "B", "C"};
        std::set<std::string> names;
        int n = rng.below(3);
        for (int i = 0; i < n; ++i) names.insert(pool[rng.below(3)]);
        return Label::principals(std::move(names));
    }

    // A label the task can legally act at (send label, setLabel target, ...).
    Label randUpLabel() { return taskLabel.join(randLabel()); }

    int randTaskId() { return taskIds[static_cast<size_t>(rng.below(static_cast<int>(taskIds.size())))]; }
};

TermPtr genIfc(GenCtx& ctx, int depth);
TermPtr genTarget(GenCtx& ctx, int depth);

TermPtr genIfcValue(GenCtx& ctx) {
    switch (ctx.rng.below(6)) {
        case 0: return mk::unit();
        case 1: return mk::tru();
        case 2: return mk::fls();
        case 3: return mk::labelLit(ctx.randLabel());
        case 4: return mk::taskIdLit(ctx.randTaskId());
        default:
            for (auto it = ctx.scope.rbegin(); it != ctx.scope.rend(); ++it) {
                if (!it->targetMode && ctx.rng.chance(0.6)) return mk::var(it->name);
            }
            return mk::tru();
    }
}

TermPtr genTargetValue(GenCtx& ctx, int depth) {
    switch (ctx.rng.below(5)) {
        case 0: return mk::tru();
        case 1: return mk::fls();
        case 2:
            for (auto it = ctx.scope.rbegin(); it != ctx.scope.rend(); ++it) {
                if (it->targetMode && ctx.rng.chance(0.6)) return mk::var(it->name);
            }
            return mk::fls();
        default: {
            if (depth <= 1) return mk::tru();
            std::string x = ctx.freshVar();
            ctx.scope.push_back({x, true});
            TermPtr body = genTarget(ctx, depth - 1);
            ctx.scope.pop_back();
            return mk::lam(x, body);
        }
    }
}

TermPtr genBoolish(GenCtx& ctx, int depth) {
    if (depth <= 1 || ctx.rng.chance(0.5)) return ctx.rng.chance(0.5) ? mk::tru() : mk::fls();
    switch (ctx.rng.below(3)) {
        case 0: return mk::deref(mk::ref(ctx.rng.chance(0.5) ? mk::tru() : mk::fls()));
        case 1: {
            std::string x = ctx.freshVar();
            return mk::app(mk::lam(x, mk::var(x)), genBoolish(ctx, depth - 1));
        }
        default: {
            TermPtr lhs = mk::labelLit(ctx.randLabel());
            TermPtr rhs = mk::labelLit(ctx.randLabel());
            return mk::toTarget(mk::labelOp(LatticeOp::Leq, std::move(lhs), std::move(rhs)));
        }
    }
}

TermPtr genWildTargetStub(GenCtx& ctx, int depth);

TermPtr genWildIfc(GenCtx& ctx, int depth) {
    switch (ctx.rng.below(5)) {
        case 0: return mk::setLabel(mk::labelLit(ctx.randLabel()));   // may refuse to go down
        case 1: {
            TermPtr msgLabel = mk::labelLit(ctx.randLabel());
            TermPtr payload = genIfcValue(ctx);
            return mk::send(mk::tru(), std::move(msgLabel), std::move(payload));
        }
        case 2: return mk::labelOp(LatticeOp::Leq, mk::tru(), mk::unit());
        case 3: return mk::toIfc(genWildTargetStub(ctx, depth));
        default: return mk::var("free" + std::to_string(ctx.rng.below(3)));
    }
}

enum class IfcProd {
    Value, Nullary, LabelOp, SetLabel, Send, Recv, Sandbox, IntoTarget,
    MakeLabeled, UnlabelChain, LabelOfChain, RefChain, ClearanceRead, ClearanceSet,
};

TermPtr genIfc(GenCtx& ctx, int depth) {
    if (depth <= 0) return genIfcValue(ctx);
    if (ctx.rng.chance(ctx.params.wildShare * 0.5)) return genWildIfc(ctx, depth);

    std::vector<IfcProd> menu = {
        IfcProd::Value,   IfcProd::Value,      IfcProd::Nullary,    IfcProd::LabelOp,
        IfcProd::SetLabel, IfcProd::Send,      IfcProd::Recv,       IfcProd::Sandbox,
        IfcProd::IntoTarget, IfcProd::IntoTarget, IfcProd::IntoTarget, IfcProd::IntoTarget,
    };
    if (ctx.params.extensions) {
        menu.insert(menu.end(), {IfcProd::MakeLabeled, IfcProd::UnlabelChain,
                                 IfcProd::LabelOfChain, IfcProd::RefChain});
    }
    if (ctx.params.clearance) {
        menu.insert(menu.end(), {IfcProd::ClearanceRead, IfcProd::ClearanceSet});
    }

    switch (menu[static_cast<size_t>(ctx.rng.below(static_cast<int>(menu.size())))]) {
        case IfcProd::Value: return genIfcValue(ctx);
        case IfcProd::Nullary: return ctx.rng.chance(0.5) ? mk::getLabel() : mk::taskId();
        case IfcProd::LabelOp: {
            LatticeOp op = static_cast<LatticeOp>(ctx.rng.below(3));
            TermPtr a = ctx.rng.chance(0.8) ? mk::labelLit(ctx.randLabel()) : mk::getLabel();
            TermPtr b = mk::labelLit(ctx.randLabel());
            return mk::labelOp(op, a, b);
        }
        case IfcProd::SetLabel: return mk::setLabel(mk::labelLit(ctx.randUpLabel()));
        case IfcProd::Send: {
            TermPtr dest = mk::taskIdLit(ctx.randTaskId());
            TermPtr msgLabel = mk::labelLit(ctx.randUpLabel());
            TermPtr payload = genIfcValue(ctx);
            return mk::send(std::move(dest), std::move(msgLabel), std::move(payload));
        }
        case IfcProd::Recv: {
            std::string x1 = ctx.freshVar(), x2 = ctx.freshVar();
            ctx.scope.push_back({x1, false});
            ctx.scope.push_back({x2, false});
            TermPtr then = genIfc(ctx, depth - 1);
            ctx.scope.pop_back();
            ctx.scope.pop_back();
            return mk::recv(x1, x2, then, genIfc(ctx, depth - 1));
        }
        case IfcProd::Sandbox: return mk::sandbox(genIfc(ctx, depth - 1));
        case IfcProd::IntoTarget: return mk::toIfc(genTarget(ctx, depth - 1));
        case IfcProd::MakeLabeled: {
            TermPtr at = mk::labelLit(ctx.randUpLabel());
            return mk::mkLabel(std::move(at), genIfc(ctx, depth - 1));
        }
        case IfcProd::UnlabelChain: {
            TermPtr at = mk::labelLit(ctx.randUpLabel());
            return mk::unlabel(mk::mkLabel(std::move(at), genIfc(ctx, depth - 1)));
        }
        case IfcProd::LabelOfChain: {
            TermPtr at = mk::labelLit(ctx.randUpLabel());
            return mk::labelOf(mk::mkLabel(std::move(at), genIfcValue(ctx)));
        }
        case IfcProd::RefChain: {
            // allocate a labeled reference, then read or write it through a
            // target-language binding
            Label cell = ctx.randUpLabel();
            std::string r = ctx.freshVar();
            TermPtr use = ctx.rng.chance(0.5)
                              ? mk::readRef(mk::toIfc(mk::var(r)))
                              : mk::writeRef(mk::toIfc(mk::var(r)), genIfcValue(ctx));
            return mk::toIfc(mk::app(mk::lam(r, mk::toTarget(use)),
                                     mk::toTarget(mk::newRef(mk::labelLit(cell), genIfcValue(ctx)))));
        }
        case IfcProd::ClearanceRead: return mk::getClearance();
        case IfcProd::ClearanceSet:
            return mk::setClearance(ctx.rng.chance(0.7) ? mk::getClearance()
                                                        : mk::labelLit(ctx.randLabel()));
    }
    return genIfcValue(ctx);
}

TermPtr genWildTargetStub(GenCtx& ctx, int depth) {
    switch (ctx.rng.below(5)) {
        case 0: return mk::app(mk::tru(), genTargetValue(ctx, 1));
        case 1: return mk::deref(mk::fls());
        case 2: return mk::diverge();
        case 3: return mk::fix(mk::lam("k", mk::app(mk::var("k"), genTargetValue(ctx, 1))));
        default: return depth > 1 ? mk::ifTerm(genBoolish(ctx, depth - 1), mk::diverge(), mk::tru())
                                  : mk::diverge();
    }
}

TermPtr genTarget(GenCtx& ctx, int depth) {
    if (depth <= 0) return genTargetValue(ctx, 1);
    if (ctx.rng.chance(ctx.params.wildShare)) return genWildTargetStub(ctx, depth);

    switch (ctx.rng.below(10)) {
        case 0: return genTargetValue(ctx, depth);
        case 1:
        case 2: {  // let-style application
            std::string x = ctx.freshVar();
            ctx.scope.push_back({x, true});
            TermPtr body = genTarget(ctx, depth - 1);
            ctx.scope.pop_back();
            return mk::app(mk::lam(x, body), genTarget(ctx, depth - 1));
        }
        case 3: {
            TermPtr cond = genBoolish(ctx, depth - 1);
            TermPtr then = genTarget(ctx, depth - 1);
            TermPtr els = genTarget(ctx, depth - 1);
            return mk::ifTerm(std::move(cond), std::move(then), std::move(els));
        }
        case 4: return mk::ref(genTargetValue(ctx, depth - 1));
        case 5: return mk::deref(mk::ref(genTargetValue(ctx, depth - 1)));
        case 6: {
            std::string x = ctx.freshVar();
            ctx.scope.push_back({x, true});
            TermPtr body = ctx.rng.chance(0.5)
                               ? mk::assign(mk::var(x), genTargetValue(ctx, depth - 1))
                               : mk::deref(mk::var(x));
            ctx.scope.pop_back();
            return mk::app(mk::lam(x, body), mk::ref(genTargetValue(ctx, depth - 1)));
        }
        case 7: {
            // fix that immediately discards its recursion hook
            std::string k = ctx.freshVar();
            return mk::fix(mk::lam(k, genTargetValue(ctx, depth - 1)));
        }
        case 8:
        case 9: return mk::toTarget(genIfc(ctx, depth - 1));
    }
    return mk::tru();
}

Label highLabel(Rng& rng, const Label& obs, LatticeKind lattice) {
    if (lattice == LatticeKind::TwoPoint) return Label::sec();
    static const char* pool[] = {"A", "B", "C", "D"};
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::set<std::string> names;
        int n = 1 + rng.below(3);
        for (int i = 0; i < n; ++i) names.insert(pool[rng.below(4)]);
        Label l = Label::principals(std::move(names));
        if (!l.leq(obs)) return l;
    }
    return obs.join(Label::principals({"Z"}));
}

Message genMessage(GenCtx& ctx, const Label& label) {
    return Message{label, ctx.randTaskId(), genIfcValue(ctx)};
}

}  // namespace

Configuration genConfig(Rng& rng, const GenParams& params) {
    int n = 1 + rng.below(params.maxTasks);
    std::vector<int> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(i);

    std::vector<Task> tasks;
    for (int i = 1; i <= n; ++i) {
        Task t;
        t.id = i;
        if (params.lattice == LatticeKind::TwoPoint) {
            // bias the first task low so pairs usually have something visible
            t.label = (i == 1 ? rng.chance(0.75) : rng.chance(0.5)) ? Label::pub() : Label::sec();
        } else {
            GenCtx tmp{rng, params, ids, Label::bottom(params.lattice), {}, 0};
            t.label = tmp.randLabel();
        }
        t.clearance = Label::top(params.lattice);
        if (params.clearance && rng.chance(0.3)) {
            t.clearance = t.label.join(rng.chance(0.5) ? Label::bottom(params.lattice)
                                                       : Label::top(params.lattice));
        }
        GenCtx ctx{rng, params, ids, t.label, {}, 0};
        t.expr = genIfc(ctx, params.maxDepth);
        tasks.push_back(std::move(t));
    }

    Configuration c = makeConfiguration(std::move(tasks), params.lattice);

    // Seed some initial mail so receives and the queue filter get exercised.
    for (int id : ids) {
        GenCtx ctx{rng, params, ids, Label::bottom(params.lattice), {}, 0};
        int low = rng.below(3);
        for (int k = 0; k < low; ++k) {
            c.queues[id].push_front(genMessage(ctx, Label::bottom(params.lattice)));
        }
        if (rng.chance(params.seedHighMessages)) {
            int high = 1 + rng.below(2);
            for (int k = 0; k < high; ++k) {
                Message m = genMessage(ctx, Label::top(params.lattice));
                int pos = rng.below(static_cast<int>(c.queues[id].size()) + 1);
                c.queues[id].insert(c.queues[id].begin() + pos, std::move(m));
            }
        }
    }
    return c;
}

std::pair<Configuration, Configuration> genEquivPair(std::uint64_t seed, const Label& l,
                                                     const GenParams& params) {
    Rng rng(seed);
    Configuration c1 = genConfig(rng, params);
    Configuration c2 = c1;

    std::vector<int> ids;
    for (const auto& t : c1.tasks) ids.push_back(t.id);

    // Regenerate everything the observer cannot see: the contents of tasks
    // above l and all messages above l. Task identities stay put, since
    // whether a queue exists is visible to a sender even when its owner
    // is not.
    for (auto& t : c2.tasks) {
        if (t.label.leq(l)) continue;
        GenCtx ctx{rng, params, ids, t.label, {}, 0};
        t.expr = genIfc(ctx, params.maxDepth);
        if (params.clearance && rng.chance(0.5)) {
            t.clearance = t.label.join(rng.chance(0.5) ? Label::bottom(params.lattice)
                                                       : Label::top(params.lattice));
        }
    }
    for (auto& [id, q] : c2.queues) {
        MessageQueue lows = filterQueue(q, l);
        GenCtx ctx{rng, params, ids, Label::bottom(params.lattice), {}, 0};
        MessageQueue rebuilt = lows;
        int high = rng.below(3);
        for (int k = 0; k < high; ++k) {
            Message m = genMessage(ctx, highLabel(rng, l, params.lattice));
            int pos = rng.below(static_cast<int>(rebuilt.size()) + 1);
            rebuilt.insert(rebuilt.begin() + pos, std::move(m));
        }
        q = std::move(rebuilt);
    }

    assert(lEquiv(c1, c2, l));
    return {c1, c2};
}

}  // namespace ifc
