#include "ifc/decompose.hpp"

namespace ifc {

namespace {

struct Walker {
    std::vector<std::pair<TermPtr, int>> path;

    Decomposition finish(FocusKind k, const TermPtr& focus) {
        return Decomposition{k, focus, std::move(path)};
    }

    Decomposition ifcExpr(const TermPtr& t) {
        if (isIfcValue(t)) return finish(FocusKind::WholeValue, t);
        switch (t->kind) {
            case TermKind::LabelOp:
            case TermKind::New:
            case TermKind::Write:
                return ifcKids(t, 2);
            case TermKind::Send:
                return ifcKids(t, 3);
            case TermKind::SetLabel:
            case TermKind::Unlabel:
            case TermKind::LabelOf:
            case TermKind::Read:
            case TermKind::SetClearance:
                return ifcKids(t, 1);
            case TermKind::MkLabel:
                return ifcKids(t, 1);  // payload is not an evaluation position
            case TermKind::Sandbox:
                return finish(FocusKind::SandboxRedex, t);
            case TermKind::ToIfc: {
                const TermPtr& inner = t->kids[0];
                if (inner->kind == TermKind::ToTarget) {
                    // (toI (toT e)): reduce e first; border-collapse once it is a value.
                    const TermPtr& e = inner->kids[0];
                    if (isIfcValue(e)) return finish(FocusKind::BorderToIfc, t);
                    path.push_back({t, 0});
                    path.push_back({inner, 0});
                    return ifcExpr(e);
                }
                path.push_back({t, 0});
                return targetExpr(inner);
            }
            default:
                // Recv, GetLabel, TaskId, GetClearance, a free Var, or a
                // target construct out of place: the focus is right here.
                return finish(FocusKind::IfcRedex, t);
        }
    }

    Decomposition targetExpr(const TermPtr& t) {
        if (isTargetValue(t)) return finish(FocusKind::WholeValue, t);
        switch (t->kind) {
            case TermKind::App:
            case TermKind::Assign:
                return targetKids(t, 2);
            case TermKind::If:
            case TermKind::Ref:
            case TermKind::Deref:
            case TermKind::Fix:
                return targetKids(t, 1);
            case TermKind::ToTarget: {
                const TermPtr& inner = t->kids[0];
                if (inner->kind == TermKind::ToIfc) {
                    const TermPtr& e = inner->kids[0];
                    if (isTargetValue(e)) return finish(FocusKind::BorderToTarget, t);
                    path.push_back({t, 0});
                    path.push_back({inner, 0});
                    return targetExpr(e);
                }
                path.push_back({t, 0});
                return ifcExpr(inner);
            }
            default:
                // Diverge, a free Var, or an IFC construct out of place.
                return finish(FocusKind::TargetRedex, t);
        }
    }

    // Left-to-right evaluation of the first `n` kids in IFC mode; the node
    // itself is the redex once they are all values.
    Decomposition ifcKids(const TermPtr& t, int n) {
        for (int i = 0; i < n; ++i) {
            if (!isIfcValue(t->kids[i])) {
                path.push_back({t, i});
                return ifcExpr(t->kids[i]);
            }
        }
        return finish(FocusKind::IfcRedex, t);
    }

    Decomposition targetKids(const TermPtr& t, int n) {
        for (int i = 0; i < n; ++i) {
            if (!isTargetValue(t->kids[i])) {
                path.push_back({t, i});
                return targetExpr(t->kids[i]);
            }
        }
        return finish(FocusKind::TargetRedex, t);
    }
};

}  // namespace

Decomposition decompose(const TermPtr& root) {
    Walker w;
    return w.ifcExpr(root);
}

TermPtr plug(const Decomposition& d, TermPtr replacement) {
    TermPtr acc = std::move(replacement);
    for (auto it = d.path.rbegin(); it != d.path.rend(); ++it) {
        auto copy = std::make_shared<Term>(*it->first);
        copy->kids[static_cast<size_t>(it->second)] = std::move(acc);
        acc = std::move(copy);
    }
    return acc;
}

}  // namespace ifc
