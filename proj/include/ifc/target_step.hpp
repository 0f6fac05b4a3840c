#pragma once

#include <map>
#include <optional>

#include "ifc/term.hpp"

namespace ifc {

// A task's private target-language store. `next` is the per-task freshness
// counter, so address allocation is deterministic and replayable.
struct TargetStore {
    std::map<int, TermPtr> cells;
    int next = 0;

    bool operator==(const TargetStore& other) const;
};

// The view of memory a target redex steps against. The abstract engine backs
// this with the acting task's own store; the single-heap engine with the
// global heap keyed by (owner, address).
class TargetHeapView {
  public:
    virtual ~TargetHeapView() = default;
    virtual TermPtr freshAddr() const = 0;  // peek only; commit bumps the counter
    virtual std::optional<TermPtr> load(const Term& addr) const = 0;
};

// One target reduction, described without being applied. `writeAddr/writeVal`
// cover both allocation and assignment; `allocates` distinguishes them.
struct TargetEffect {
    const char* rule;
    TermPtr result;
    TermPtr writeAddr;
    TermPtr writeVal;
    bool allocates = false;
};

// Evaluates a target redex. Returns nullopt when the position is stuck (no
// rule matches), which the embedding turns into task removal.
std::optional<TargetEffect> evalTargetRedex(const TargetHeapView& heap, const TermPtr& redex);

class TaskStoreView final : public TargetHeapView {
  public:
    explicit TaskStoreView(const TargetStore& store) : store_(store) {}
    TermPtr freshAddr() const override { return mk::addr(store_.next); }
    std::optional<TermPtr> load(const Term& addr) const override;

  private:
    const TargetStore& store_;
};

// Applies a target effect to a per-task store.
void commitToStore(TargetStore& store, const TargetEffect& eff);

}  // namespace ifc
