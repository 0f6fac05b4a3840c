#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ifc/label.hpp"

namespace ifc {

// One node kind per production of the two grammars plus the internal forms
// the rules introduce (addresses, labeled values, the erasure hole). The
// target language and the IFC language share one node type; which grammar a
// node belongs to is positional, switching at the ToIfc / ToTarget
// boundaries.
enum class TermKind {
    // shared by both grammars
    Var,
    True,
    False,
    Hole,  // erased position; never produced by evaluation or parsing

    // target language
    Lam,       // name = binder, kid 0 = body
    App,       // kids 0, 1
    If,        // kids 0, 1, 2
    Ref,       // kid 0
    Deref,     // kid 0
    Assign,    // kids 0, 1
    Fix,       // kid 0
    Addr,      // num = address; owner >= 0 marks a single-heap address (owner:aN)
    Diverge,   // steps to itself
    ToTarget,  // kid 0 = embedded IFC expression

    // IFC language
    Unit,
    TaskIdLit,  // num = task id
    LabelLit,   // label
    LabelOp,    // op, kids 0, 1
    GetLabel,
    SetLabel,  // kid 0
    TaskId,
    Sandbox,  // kid 0 = body, not an evaluation position
    Send,     // kids 0 = target id, 1 = label, 2 = payload
    Recv,     // name = message binder, name2 = sender binder, kids 0 = then, 1 = else
    ToIfc,    // kid 0 = embedded target expression

    // extensions: labeled values, labeled references, clearance
    Labeled,      // internal; label + kid 0 = protected (unevaluated) expression
    MkLabel,      // kids 0 = label expr (evaluated), 1 = payload (not evaluated)
    Unlabel,      // kid 0
    LabelOf,      // kid 0
    LabeledAddr,  // internal; num = address, label = cell label
    New,          // kids 0 = label expr, 1 = value expr
    Read,         // kid 0
    Write,        // kids 0 = address expr, 1 = value expr
    GetClearance,
    SetClearance,  // kid 0
};

enum class LatticeOp { Leq, Join, Meet };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    std::string name;
    std::string name2;
    Label label;
    LatticeOp op = LatticeOp::Leq;
    int num = 0;
    int owner = -1;
    std::vector<TermPtr> kids;
};

// Construction helpers. Terms are immutable once built; sharing is safe.
namespace mk {

TermPtr node(TermKind k, std::vector<TermPtr> kids = {});
TermPtr var(const std::string& name);
TermPtr tru();
TermPtr fls();
TermPtr hole();
TermPtr lam(const std::string& binder, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr ifTerm(TermPtr c, TermPtr t, TermPtr e);
TermPtr ref(TermPtr e);
TermPtr deref(TermPtr e);
TermPtr assign(TermPtr t, TermPtr v);
TermPtr fix(TermPtr e);
TermPtr addr(int num, int owner = -1);
TermPtr diverge();
TermPtr toTarget(TermPtr inner);
TermPtr unit();
TermPtr taskIdLit(int id);
TermPtr labelLit(const Label& l);
TermPtr labelOp(LatticeOp op, TermPtr a, TermPtr b);
TermPtr getLabel();
TermPtr setLabel(TermPtr e);
TermPtr taskId();
TermPtr sandbox(TermPtr body);
TermPtr send(TermPtr target, TermPtr label, TermPtr payload);
TermPtr recv(const std::string& x1, const std::string& x2, TermPtr then, TermPtr els);
TermPtr toIfc(TermPtr inner);
TermPtr labeled(const Label& l, TermPtr e);
TermPtr mkLabel(TermPtr labelExpr, TermPtr payload);
TermPtr unlabel(TermPtr e);
TermPtr labelOf(TermPtr e);
TermPtr labeledAddr(int num, const Label& l);
TermPtr newRef(TermPtr labelExpr, TermPtr value);
TermPtr readRef(TermPtr e);
TermPtr writeRef(TermPtr a, TermPtr v);
TermPtr getClearance();
TermPtr setClearance(TermPtr e);

}  // namespace mk

// Value predicates. A double boundary (toI (toT e)) / (toT (toI e)) is never
// a value: it is a border redex once the inside finishes.
bool isTargetValue(const TermPtr& t);
bool isIfcValue(const TermPtr& t);

bool termEq(const TermPtr& a, const TermPtr& b);

// Free variables, across both grammars and through boundaries.
std::set<std::string> freeVars(const TermPtr& t);

// Capture-avoiding substitution of `name` by `replacement`, structural over
// the whole mixed term. Binders that would capture free variables of the
// replacement are renamed.
TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& replacement);

// Address occurrences anywhere in a term, including under labeled-value
// payloads and on both sides of boundaries.
struct AddrSet {
    std::set<std::pair<int, int>> target;  // (owner, address); owner -1 for per-task stores
    std::set<int> labeled;
    bool empty() const { return target.empty() && labeled.empty(); }
};
AddrSet addrVars(const TermPtr& t);

// Tree size (shared subterms counted once per occurrence), saturating at the
// given cap so runaway duplication is cheap to detect.
std::uint64_t treeSize(const TermPtr& t, std::uint64_t cap);

// Printed form; parseable back for every surface construct.
std::string printTerm(const TermPtr& t);

}  // namespace ifc
