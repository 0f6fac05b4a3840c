#include "ifc/term.hpp"

#include <sstream>
#include <unordered_map>

namespace ifc {

namespace mk {

TermPtr node(TermKind k, std::vector<TermPtr> kids) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->kids = std::move(kids);
    return t;
}

TermPtr var(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->name = name;
    return t;
}

TermPtr tru() { return node(TermKind::True); }
TermPtr fls() { return node(TermKind::False); }
TermPtr hole() { return node(TermKind::Hole); }

TermPtr lam(const std::string& binder, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Lam;
    t->name = binder;
    t->kids = {std::move(body)};
    return t;
}

TermPtr app(TermPtr f, TermPtr a) { return node(TermKind::App, {std::move(f), std::move(a)}); }
TermPtr ifTerm(TermPtr c, TermPtr t, TermPtr e) {
    return node(TermKind::If, {std::move(c), std::move(t), std::move(e)});
}
TermPtr ref(TermPtr e) { return node(TermKind::Ref, {std::move(e)}); }
TermPtr deref(TermPtr e) { return node(TermKind::Deref, {std::move(e)}); }
TermPtr assign(TermPtr t, TermPtr v) { return node(TermKind::Assign, {std::move(t), std::move(v)}); }
TermPtr fix(TermPtr e) { return node(TermKind::Fix, {std::move(e)}); }

TermPtr addr(int num, int owner) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Addr;
    t->num = num;
    t->owner = owner;
    return t;
}

TermPtr diverge() { return node(TermKind::Diverge); }
TermPtr toTarget(TermPtr inner) { return node(TermKind::ToTarget, {std::move(inner)}); }
TermPtr unit() { return node(TermKind::Unit); }

TermPtr taskIdLit(int id) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::TaskIdLit;
    t->num = id;
    return t;
}

TermPtr labelLit(const Label& l) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::LabelLit;
    t->label = l;
    return t;
}

TermPtr labelOp(LatticeOp op, TermPtr a, TermPtr b) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::LabelOp;
    t->op = op;
    t->kids = {std::move(a), std::move(b)};
    return t;
}

TermPtr getLabel() { return node(TermKind::GetLabel); }
TermPtr setLabel(TermPtr e) { return node(TermKind::SetLabel, {std::move(e)}); }
TermPtr taskId() { return node(TermKind::TaskId); }
TermPtr sandbox(TermPtr body) { return node(TermKind::Sandbox, {std::move(body)}); }
TermPtr send(TermPtr target, TermPtr label, TermPtr payload) {
    return node(TermKind::Send, {std::move(target), std::move(label), std::move(payload)});
}

TermPtr recv(const std::string& x1, const std::string& x2, TermPtr then, TermPtr els) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Recv;
    t->name = x1;
    t->name2 = x2;
    t->kids = {std::move(then), std::move(els)};
    return t;
}

TermPtr toIfc(TermPtr inner) { return node(TermKind::ToIfc, {std::move(inner)}); }

TermPtr labeled(const Label& l, TermPtr e) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Labeled;
    t->label = l;
    t->kids = {std::move(e)};
    return t;
}

TermPtr mkLabel(TermPtr labelExpr, TermPtr payload) {
    return node(TermKind::MkLabel, {std::move(labelExpr), std::move(payload)});
}
TermPtr unlabel(TermPtr e) { return node(TermKind::Unlabel, {std::move(e)}); }
TermPtr labelOf(TermPtr e) { return node(TermKind::LabelOf, {std::move(e)}); }

TermPtr labeledAddr(int num, const Label& l) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::LabeledAddr;
    t->num = num;
    t->label = l;
    return t;
}

TermPtr newRef(TermPtr labelExpr, TermPtr value) {
    return node(TermKind::New, {std::move(labelExpr), std::move(value)});
}
TermPtr readRef(TermPtr e) { return node(TermKind::Read, {std::move(e)}); }
TermPtr writeRef(TermPtr a, TermPtr v) {
    return node(TermKind::Write, {std::move(a), std::move(v)});
}
TermPtr getClearance() { return node(TermKind::GetClearance); }
TermPtr setClearance(TermPtr e) { return node(TermKind::SetClearance, {std::move(e)}); }

}  // namespace mk

bool isTargetValue(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Lam:
        case TermKind::True:
        case TermKind::False:
        case TermKind::Addr:
            return true;
        case TermKind::ToTarget:
            return t->kids[0]->kind != TermKind::ToIfc && isIfcValue(t->kids[0]);
        default:
            return false;
    }
}

bool isIfcValue(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::TaskIdLit:
        case TermKind::LabelLit:
        case TermKind::True:
        case TermKind::False:
        case TermKind::Unit:
        case TermKind::Labeled:
        case TermKind::LabeledAddr:
            return true;
        case TermKind::ToIfc:
            return t->kids[0]->kind != TermKind::ToTarget && isTargetValue(t->kids[0]);
        default:
            return false;
    }
}

bool termEq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->name != b->name || a->name2 != b->name2) return false;
    if (a->op != b->op || a->num != b->num || a->owner != b->owner) return false;
    if (!(a->label == b->label)) return false;
    if (a->kids.size() != b->kids.size()) return false;
    for (size_t i = 0; i < a->kids.size(); ++i) {
        if (!termEq(a->kids[i], b->kids[i])) return false;
    }
    return true;
}

namespace {

void freeVarsInto(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case TermKind::Lam: {
            bool fresh = bound.insert(t->name).second;
            freeVarsInto(t->kids[0], bound, out);
            if (fresh) bound.erase(t->name);
            return;
        }
        case TermKind::Recv: {
            bool f1 = bound.insert(t->name).second;
            bool f2 = bound.insert(t->name2).second;
            freeVarsInto(t->kids[0], bound, out);
            if (f1) bound.erase(t->name);
            if (f2) bound.erase(t->name2);
            freeVarsInto(t->kids[1], bound, out);
            return;
        }
        default:
            for (const auto& k : t->kids) freeVarsInto(k, bound, out);
            return;
    }
}

std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
    std::string candidate = base + "'";
    int n = 1;
    while (avoid.count(candidate)) {
        candidate = base + "'" + std::to_string(n++);
    }
    return candidate;
}

}  // namespace

std::set<std::string> freeVars(const TermPtr& t) {
    std::set<std::string> bound, out;
    freeVarsInto(t, bound, out);
    return out;
}

TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == name ? replacement : t;
        case TermKind::Lam: {
            if (t->name == name) return t;  // shadowed
            std::string binder = t->name;
            TermPtr body = t->kids[0];
            if (freeVars(replacement).count(binder)) {
                std::set<std::string> avoid = freeVars(replacement);
                auto bodyFree = freeVars(body);
                avoid.insert(bodyFree.begin(), bodyFree.end());
                avoid.insert(name);
                std::string renamed = freshName(binder, avoid);
                body = subst(body, binder, mk::var(renamed));
                binder = renamed;
            }
            return mk::lam(binder, subst(body, name, replacement));
        }
        case TermKind::Recv: {
            std::string x1 = t->name, x2 = t->name2;
            TermPtr then = t->kids[0];
            TermPtr els = subst(t->kids[1], name, replacement);
            if (x1 == name || x2 == name) {
                return mk::recv(x1, x2, then, els);  // shadowed in then-branch
            }
            auto replFree = freeVars(replacement);
            if (replFree.count(x1) || replFree.count(x2)) {
                std::set<std::string> avoid = replFree;
                auto thenFree = freeVars(then);
                avoid.insert(thenFree.begin(), thenFree.end());
                avoid.insert(name);
                avoid.insert(x1);
                avoid.insert(x2);
                if (replFree.count(x1)) {
                    std::string r1 = freshName(x1, avoid);
                    avoid.insert(r1);
                    then = subst(then, x1, mk::var(r1));
                    x1 = r1;
                }
                if (replFree.count(x2)) {
                    std::string r2 = freshName(x2, avoid);
                    then = subst(then, x2, mk::var(r2));
                    x2 = r2;
                }
            }
            return mk::recv(x1, x2, subst(then, name, replacement), els);
        }
        default: {
            if (t->kids.empty()) return t;
            bool changed = false;
            std::vector<TermPtr> kids;
            kids.reserve(t->kids.size());
            for (const auto& k : t->kids) {
                TermPtr nk = subst(k, name, replacement);
                changed = changed || nk.get() != k.get();
                kids.push_back(std::move(nk));
            }
            if (!changed) return t;
            auto copy = std::make_shared<Term>(*t);
            copy->kids = std::move(kids);
            return copy;
        }
    }
}

namespace {

void addrVarsInto(const TermPtr& t, AddrSet& out) {
    if (t->kind == TermKind::Addr) {
        out.target.insert({t->owner, t->num});
    } else if (t->kind == TermKind::LabeledAddr) {
        out.labeled.insert(t->num);
    }
    for (const auto& k : t->kids) addrVarsInto(k, out);
}

}  // namespace

AddrSet addrVars(const TermPtr& t) {
    AddrSet out;
    addrVarsInto(t, out);
    return out;
}

namespace {

std::uint64_t treeSizeMemo(const Term* t, std::uint64_t cap,
                           std::unordered_map<const Term*, std::uint64_t>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::uint64_t total = 1;
    for (const auto& k : t->kids) {
        total += treeSizeMemo(k.get(), cap, memo);
        if (total >= cap) {
            total = cap;
            break;
        }
    }
    memo[t] = total;
    return total;
}

}  // namespace

std::uint64_t treeSize(const TermPtr& t, std::uint64_t cap) {
    std::unordered_map<const Term*, std::uint64_t> memo;
    return treeSizeMemo(t.get(), cap, memo);
}

namespace {

void printInto(const TermPtr& t, std::string& out) {
    auto kid = [&](int i) { printInto(t->kids[i], out); };
    switch (t->kind) {
        case TermKind::Var: out += t->name; return;
        case TermKind::True: out += "true"; return;
        case TermKind::False: out += "false"; return;
        case TermKind::Hole: out += "\xE2\x80\xA2"; return;  // •
        case TermKind::Lam: out += "(lam " + t->name + " "; kid(0); out += ")"; return;
        case TermKind::App: out += "(app "; kid(0); out += " "; kid(1); out += ")"; return;
        case TermKind::If:
            out += "(if "; kid(0); out += " "; kid(1); out += " "; kid(2); out += ")";
            return;
        case TermKind::Ref: out += "(ref "; kid(0); out += ")"; return;
        case TermKind::Deref: out += "(deref "; kid(0); out += ")"; return;
        case TermKind::Assign: out += "(assign "; kid(0); out += " "; kid(1); out += ")"; return;
        case TermKind::Fix: out += "(fix "; kid(0); out += ")"; return;
        case TermKind::Addr:
            if (t->owner >= 0) {
                out += "(" + std::to_string(t->owner) + ":a" + std::to_string(t->num) + ")";
            } else {
                out += "a" + std::to_string(t->num);
            }
            return;
        case TermKind::Diverge: out += "diverge"; return;
        case TermKind::ToTarget: out += "(toT "; kid(0); out += ")"; return;
        case TermKind::Unit: out += "unit"; return;
        case TermKind::TaskIdLit: out += std::to_string(t->num); return;
        case TermKind::LabelLit: out += t->label.str(); return;
        case TermKind::LabelOp:
            out += t->op == LatticeOp::Leq ? "(leq "
                 : t->op == LatticeOp::Join ? "(join " : "(meet ";
            kid(0); out += " "; kid(1); out += ")";
            return;
        case TermKind::GetLabel: out += "(getLabel)"; return;
        case TermKind::SetLabel: out += "(setLabel "; kid(0); out += ")"; return;
        case TermKind::TaskId: out += "(taskId)"; return;
        case TermKind::Sandbox: out += "(sandbox "; kid(0); out += ")"; return;
        case TermKind::Send:
            out += "(send "; kid(0); out += " "; kid(1); out += " "; kid(2); out += ")";
            return;
        case TermKind::Recv:
            out += "(recv " + t->name + " " + t->name2 + " ";
            kid(0); out += " "; kid(1); out += ")";
            return;
        case TermKind::ToIfc: out += "(toI "; kid(0); out += ")"; return;
        case TermKind::Labeled:
            out += "(Labeled " + t->label.str() + " "; kid(0); out += ")";
            return;
        case TermKind::MkLabel: out += "(label "; kid(0); out += " "; kid(1); out += ")"; return;
        case TermKind::Unlabel: out += "(unlabel "; kid(0); out += ")"; return;
        case TermKind::LabelOf: out += "(labelOf "; kid(0); out += ")"; return;
        case TermKind::LabeledAddr:
            out += "(laddr a" + std::to_string(t->num) + " " + t->label.str() + ")";
            return;
        case TermKind::New: out += "(new "; kid(0); out += " "; kid(1); out += ")"; return;
        case TermKind::Read: out += "(read "; kid(0); out += ")"; return;
        case TermKind::Write: out += "(write "; kid(0); out += " "; kid(1); out += ")"; return;
        case TermKind::GetClearance: out += "(getClearance)"; return;
        case TermKind::SetClearance: out += "(setClearance "; kid(0); out += ")"; return;
    }
}

}  // namespace

std::string printTerm(const TermPtr& t) {
    std::string out;
    printInto(t, out);
    return out;
}

}  // namespace ifc
