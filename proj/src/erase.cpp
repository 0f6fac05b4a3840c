#include "ifc/erase.hpp"

#include <map>

namespace ifc {

TermPtr eraseTerm(const TermPtr& t, const Label& l) {
    if (t->kind == TermKind::Labeled && !t->label.leq(l)) {
        return mk::labeled(t->label, mk::hole());
    }
    if (t->kids.empty()) return t;
    bool changed = false;
    std::vector<TermPtr> kids;
    kids.reserve(t->kids.size());
    for (const auto& k : t->kids) {
        TermPtr nk = eraseTerm(k, l);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
    }
    if (!changed) return t;
    auto copy = std::make_shared<Term>(*t);
    copy->kids = std::move(kids);
    return copy;
}

ErasedConfiguration eraseConfig(const Configuration& c, const Label& l) {
    ErasedConfiguration out{{}, l};
    Configuration& e = out.config;
    e.lattice = c.lattice;
    e.nextTaskId = c.nextTaskId;
    e.nextLabeledAddr = c.nextLabeledAddr;
    // only the registry entries an observer at l could know about
    for (const auto& [id, lab] : c.labelRegistry) {
        if (lab.leq(l)) e.labelRegistry[id] = lab;
    }

    for (const Task& t : c.tasks) {
        if (!t.label.leq(l)) continue;  // erased to the hole and filtered out
        Task et = t;
        et.expr = eraseTerm(t.expr, l);
        for (auto& [a, v] : et.store.cells) v = eraseTerm(v, l);
        e.tasks.push_back(std::move(et));
    }

    for (const auto& [id, q] : c.queues) {
        auto reg = c.labelRegistry.find(id);
        // A queue whose owner is above the observer disappears entirely.
        if (reg == c.labelRegistry.end() || !reg->second.leq(l)) continue;
        e.queues[id] = filterQueue(q, l);
    }

    // Cells above the observer vanish with their contents; this is what makes
    // a high task's allocations invisible.
    for (const auto& [a, cell] : c.labeledStore) {
        if (!cell.label.leq(l)) continue;
        e.labeledStore[a] = LabeledCell{cell.label, eraseTerm(cell.value, l)};
    }
    return out;
}

namespace {

// Renames task ids and labeled addresses by first appearance so that two
// observations differing only in freshness bookkeeping compare equal.
struct Canonicalizer {
    std::map<int, int> taskIds;
    std::map<int, int> labeledAddrs;

    int canonTask(int id) {
        auto [it, fresh] = taskIds.try_emplace(id, static_cast<int>(taskIds.size()));
        (void)fresh;
        return it->second;
    }
    int canonAddr(int a) {
        auto [it, fresh] = labeledAddrs.try_emplace(a, static_cast<int>(labeledAddrs.size()));
        (void)fresh;
        return it->second;
    }

    void term(const TermPtr& t, std::string& out) {
        switch (t->kind) {
            case TermKind::TaskIdLit:
                out += "#t" + std::to_string(canonTask(t->num));
                return;
            case TermKind::LabeledAddr:
                out += "(laddr #r" + std::to_string(canonAddr(t->num)) + " " + t->label.str() + ")";
                return;
            default:
                break;
        }
        if (t->kids.empty()) {
            out += printTerm(t);
            return;
        }
        // Structural rendering with canonicalized leaves.
        out += "(" + std::to_string(static_cast<int>(t->kind));
        if (!t->name.empty()) out += " " + t->name;
        if (!t->name2.empty()) out += " " + t->name2;
        if (t->kind == TermKind::LabelOp) out += " " + std::to_string(static_cast<int>(t->op));
        if (t->kind == TermKind::Labeled) out += " " + t->label.str();
        for (const auto& k : t->kids) {
            out += " ";
            term(k, out);
        }
        out += ")";
    }
};

}  // namespace

std::string canonicalSignature(const ErasedConfiguration& e) {
    Canonicalizer cz;
    const Configuration& c = e.config;
    std::string out = "tasks[";
    for (const Task& t : c.tasks) {
        out += "<#t" + std::to_string(cz.canonTask(t.id)) + " " + t.label.str() + " " +
               t.clearance.str() + " {";
        for (const auto& [a, v] : t.store.cells) {
            out += "a" + std::to_string(a) + "=";
            cz.term(v, out);
            out += ";";
        }
        out += "} ";
        cz.term(t.expr, out);
        out += ">";
    }
    out += "] queues[";
    for (const auto& [id, q] : c.queues) {
        out += "#t" + std::to_string(cz.canonTask(id)) + ":[";
        for (const auto& m : q) {
            out += "(" + m.label.str() + ",#t" + std::to_string(cz.canonTask(m.sender)) + ",";
            cz.term(m.payload, out);
            out += ")";
        }
        out += "]";
    }
    out += "] lstore[";
    for (const auto& [a, cell] : c.labeledStore) {
        out += "#r" + std::to_string(cz.canonAddr(a)) + "@" + cell.label.str() + "=";
        cz.term(cell.value, out);
        out += ";";
    }
    out += "]";
    return out;
}

bool lEquiv(const Configuration& a, const Configuration& b, const Label& l) {
    return canonicalSignature(eraseConfig(a, l)) == canonicalSignature(eraseConfig(b, l));
}

}  // namespace ifc
