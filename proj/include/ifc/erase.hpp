#pragma once

#include <string>

#include "ifc/config.hpp"

namespace ifc {

// A configuration as seen by an observer at some label: tasks above the
// level are gone, their queues are gone, queues are filtered, labeled values
// protect their payloads with a hole, and labeled cells above the level are
// gone. Erasing again at the same label changes nothing.
struct ErasedConfiguration {
    Configuration config;
    Label at;
};

// Erasure of a single term: the payload of a labeled value becomes a hole
// when its label does not flow to `l`; everything else is homomorphic.
TermPtr eraseTerm(const TermPtr& t, const Label& l);

ErasedConfiguration eraseConfig(const Configuration& c, const Label& l);

// Observer-equivalence: equality of erased configurations up to a consistent
// renaming of task ids and labeled-reference addresses (freshness counters
// are not part of the observation; queues are compared positionally).
bool lEquiv(const Configuration& a, const Configuration& b, const Label& l);

// The canonical rendering that `lEquiv` compares. Also serves as the
// per-step snapshot for the non-interference checks.
std::string canonicalSignature(const ErasedConfiguration& e);

}  // namespace ifc
