#include "ifc/ifc_step.hpp"

namespace ifc {

MessageQueue filterQueue(const MessageQueue& q, const Label& l) {
    MessageQueue out;
    for (const Message& m : q) {
        if (m.label.leq(l)) out.push_back(m);
    }
    return out;
}

namespace {

bool isLabel(const TermPtr& t) { return t->kind == TermKind::LabelLit; }

std::optional<IfcEffect> evalRecv(const IfcStepContext& ctx, const TermPtr& redex,
                                  bool filterOnRecv) {
    auto it = ctx.queues.find(ctx.taskId);
    if (it == ctx.queues.end()) return std::nullopt;
    MessageQueue fq = filterOnRecv ? filterQueue(it->second, ctx.label) : it->second;
    IfcEffect eff;
    if (fq.empty()) {
        eff.rule = "I-noRecv";
        eff.result = redex->kids[1];
        eff.replaceOwnQueue = MessageQueue{};
        return eff;
    }
    // The oldest deliverable message is at the back; the queue is replaced by
    // the filtered prefix, permanently dropping anything the filter removed.
    Message m = fq.back();
    fq.pop_back();
    eff.rule = "I-recv";
    // Simultaneous substitution: the sender id goes in first so a payload
    // that happens to mention the sender binder's name is left alone.
    eff.result = subst(subst(redex->kids[0], redex->name2, mk::taskIdLit(m.sender)),
                       redex->name, m.payload);
    eff.replaceOwnQueue = std::move(fq);
    return eff;
}

}  // namespace

std::optional<IfcEffect> evalIfcRedex(const IfcStepContext& ctx, const TermPtr& redex,
                                      bool filterOnRecv) {
    IfcEffect eff;
    switch (redex->kind) {
        case TermKind::TaskId:
            eff.rule = "I-getTaskId";
            eff.result = mk::taskIdLit(ctx.taskId);
            return eff;

        case TermKind::GetLabel:
            eff.rule = "I-getLabel";
            eff.result = mk::labelLit(ctx.label);
            return eff;

        case TermKind::LabelOp: {
            if (!isLabel(redex->kids[0]) || !isLabel(redex->kids[1])) return std::nullopt;
            const Label& l1 = redex->kids[0]->label;
            const Label& l2 = redex->kids[1]->label;
            eff.rule = "I-labelOp";
            switch (redex->op) {
                case LatticeOp::Leq: eff.result = l1.leq(l2) ? mk::tru() : mk::fls(); break;
                case LatticeOp::Join: eff.result = mk::labelLit(l1.join(l2)); break;
                case LatticeOp::Meet: eff.result = mk::labelLit(l1.meet(l2)); break;
            }
            return eff;
        }

        case TermKind::SetLabel: {
            if (!isLabel(redex->kids[0])) return std::nullopt;
            const Label& target = redex->kids[0]->label;
            if (!ctx.label.leq(target)) return std::nullopt;  // labels only go up
            eff.rule = "I-setLabel";
            eff.result = mk::unit();
            eff.newLabel = target;
            return eff;
        }

        case TermKind::Send: {
            if (redex->kids[0]->kind != TermKind::TaskIdLit) return std::nullopt;
            if (!isLabel(redex->kids[1])) return std::nullopt;
            const Label& msgLabel = redex->kids[1]->label;
            if (!ctx.label.leq(msgLabel)) return std::nullopt;
            int dest = redex->kids[0]->num;
            if (!ctx.queues.count(dest)) return std::nullopt;  // no such queue
            eff.rule = "I-send";
            eff.result = mk::unit();
            eff.sendTo = {dest, Message{msgLabel, ctx.taskId, redex->kids[2]}};
            return eff;
        }

        case TermKind::Recv:
            return evalRecv(ctx, redex, filterOnRecv);

        case TermKind::MkLabel: {
            if (!isLabel(redex->kids[0])) return std::nullopt;
            const Label& l = redex->kids[0]->label;
            if (!ctx.label.leq(l)) return std::nullopt;
            eff.rule = "I-label";
            eff.result = mk::labeled(l, redex->kids[1]);
            return eff;
        }

        case TermKind::Unlabel: {
            if (redex->kids[0]->kind != TermKind::Labeled) return std::nullopt;
            eff.rule = "I-unlabel";
            eff.result = redex->kids[0]->kids[0];
            eff.newLabel = ctx.label.join(redex->kids[0]->label);
            return eff;
        }

        case TermKind::LabelOf: {
            const TermPtr& v = redex->kids[0];
            if (v->kind == TermKind::Labeled) {
                eff.rule = "I-labelOf";
            } else if (v->kind == TermKind::LabeledAddr) {
                eff.rule = "I-labelOf2";
            } else {
                return std::nullopt;
            }
            eff.result = mk::labelLit(v->label);
            return eff;
        }

        case TermKind::New: {
            if (!isLabel(redex->kids[0])) return std::nullopt;
            const Label& l = redex->kids[0]->label;
            if (!ctx.label.leq(l)) return std::nullopt;
            int a = ctx.nextLabeledAddr;
            eff.rule = "I-new";
            eff.result = mk::labeledAddr(a, l);
            eff.newCell = {a, LabeledCell{l, redex->kids[1]}};
            return eff;
        }

        case TermKind::Read: {
            if (redex->kids[0]->kind != TermKind::LabeledAddr) return std::nullopt;
            auto it = ctx.labeledStore.find(redex->kids[0]->num);
            if (it == ctx.labeledStore.end()) return std::nullopt;
            eff.rule = "I-read";
            eff.result = it->second.value;
            eff.newLabel = ctx.label.join(it->second.label);
            return eff;
        }

        case TermKind::Write: {
            if (redex->kids[0]->kind != TermKind::LabeledAddr) return std::nullopt;
            auto it = ctx.labeledStore.find(redex->kids[0]->num);
            if (it == ctx.labeledStore.end()) return std::nullopt;
            if (!ctx.label.leq(it->second.label)) return std::nullopt;  // no write-down
            eff.rule = "I-write";
            eff.result = mk::unit();
            eff.writeCell = {redex->kids[0]->num, redex->kids[1]};
            return eff;
        }

        case TermKind::GetClearance:
            eff.rule = "I-getClearance";
            eff.result = mk::labelLit(ctx.clearance);
            return eff;

        case TermKind::SetClearance: {
            if (!isLabel(redex->kids[0])) return std::nullopt;
            eff.rule = "I-setClearance";
            eff.result = mk::unit();
            eff.newClearance = redex->kids[0]->label;
            return eff;
        }

        default:
            return std::nullopt;  // stuck: free variable or malformed mixed term
    }
}

}  // namespace ifc
