#pragma once

#include <utility>
#include <vector>

#include "ifc/term.hpp"

namespace ifc {

// What sits at the unique evaluation focus of a task expression.
//
//   WholeValue:     the whole expression is an IFC value
//   IfcRedex:       an IFC-language redex position (may still turn out stuck)
//   TargetRedex:    a target-language redex position (likewise)
//   SandboxRedex:   a sandbox form; handled at the configuration level
//   BorderToIfc:    (toI (toT e)) with e fully reduced; collapses to e
//   BorderToTarget: (toT (toI e)) with e fully reduced; collapses to e
enum class FocusKind {
    WholeValue,
    IfcRedex,
    TargetRedex,
    SandboxRedex,
    BorderToIfc,
    BorderToTarget,
};

struct Decomposition {
    FocusKind kind;
    TermPtr focus;
    // Spine from the root down to the focus: (node, index of the kid taken).
    std::vector<std::pair<TermPtr, int>> path;
};

// Unique leftmost-innermost decomposition of a task expression (rooted in the
// IFC grammar). Descends through boundaries per the extended context
// grammars; a double boundary becomes a border focus only once its inside is
// a value of the inner language.
Decomposition decompose(const TermPtr& root);

// Rebuilds the expression with the focus replaced.
TermPtr plug(const Decomposition& d, TermPtr replacement);

}  // namespace ifc
