#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ifc/erase.hpp"

namespace ifc {

// A family of per-rule predicates restricting the step relation. A rule with
// a failing predicate becomes inapplicable, so the head task is removed
// instead. Predicates only ever see the configuration erased at the head
// task's label: they are handed the erased configuration by construction,
// and there is no way to attach one to the removal rule itself.
class RestrictionFamily {
  public:
    using Predicate = std::function<bool(const ErasedConfiguration&)>;

    void attach(const std::string& rule, Predicate p);
    bool allows(const std::string& rule, const ErasedConfiguration& view) const;
    bool empty() const { return preds_.empty(); }
    std::vector<std::string> restrictedRules() const;

    // Conjunction of two families, rule by rule.
    friend RestrictionFamily merge(const RestrictionFamily& a, const RestrictionFamily& b);

  private:
    std::map<std::string, std::vector<Predicate>> preds_;
};

// Forbids addresses in sandboxed bodies and in message payloads; every other
// rule is unrestricted. This is the discipline the single-heap engine runs
// under.
RestrictionFamily pNorefs();

// Enforces the clearance bound: the current label, allocation labels and
// message labels may not exceed it, and the clearance itself can only be
// lowered.
RestrictionFamily clearanceFamily();

RestrictionFamily familiesByName(const std::vector<std::string>& names);

}  // namespace ifc
