#include "ifc/target_step.hpp"

namespace ifc {

bool TargetStore::operator==(const TargetStore& other) const {
    if (next != other.next || cells.size() != other.cells.size()) return false;
    auto it = other.cells.begin();
    for (const auto& [a, v] : cells) {
        if (it->first != a || !termEq(it->second, v)) return false;
        ++it;
    }
    return true;
}

std::optional<TermPtr> TaskStoreView::load(const Term& addr) const {
    auto it = store_.cells.find(addr.num);
    if (it == store_.cells.end()) return std::nullopt;
    return it->second;
}

void commitToStore(TargetStore& store, const TargetEffect& eff) {
    if (eff.writeAddr) {
        store.cells[eff.writeAddr->num] = eff.writeVal;
        // Keep the counter above every occupied cell so fresh addresses never
        // collide, even after an assignment conjured a cell out of range.
        if (eff.writeAddr->num >= store.next) store.next = eff.writeAddr->num + 1;
    }
}

std::optional<TargetEffect> evalTargetRedex(const TargetHeapView& heap, const TermPtr& redex) {
    switch (redex->kind) {
        case TermKind::App: {
            const TermPtr& f = redex->kids[0];
            if (f->kind != TermKind::Lam) return std::nullopt;
            return TargetEffect{"T-app", subst(f->kids[0], f->name, redex->kids[1]), nullptr,
                                nullptr};
        }
        case TermKind::If: {
            if (redex->kids[0]->kind == TermKind::True) {
                return TargetEffect{"T-ifTrue", redex->kids[1], nullptr, nullptr};
            }
            if (redex->kids[0]->kind == TermKind::False) {
                return TargetEffect{"T-ifFalse", redex->kids[2], nullptr, nullptr};
            }
            return std::nullopt;
        }
        case TermKind::Ref: {
            TermPtr a = heap.freshAddr();
            return TargetEffect{"T-ref", a, a, redex->kids[0], true};
        }
        case TermKind::Deref: {
            if (redex->kids[0]->kind != TermKind::Addr) return std::nullopt;
            auto v = heap.load(*redex->kids[0]);
            if (!v) return std::nullopt;  // dangling address
            return TargetEffect{"T-deref", *v, nullptr, nullptr};
        }
        case TermKind::Assign: {
            if (redex->kids[0]->kind != TermKind::Addr) return std::nullopt;
            return TargetEffect{"T-ass", redex->kids[1], redex->kids[0], redex->kids[1]};
        }
        case TermKind::Fix: {
            const TermPtr& f = redex->kids[0];
            if (f->kind != TermKind::Lam) return std::nullopt;
            return TargetEffect{"T-fix", subst(f->kids[0], f->name, redex), nullptr, nullptr};
        }
        case TermKind::Diverge:
            return TargetEffect{"T-diverge", redex, nullptr, nullptr};
        default:
            return std::nullopt;
    }
}

}  // namespace ifc
