#pragma once

#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "ifc/label.hpp"
#include "ifc/term.hpp"

namespace ifc {

// One queued message: who sent it, at what label, carrying what value.
struct Message {
    Label label;
    int sender;
    TermPtr payload;

    bool operator==(const Message& other) const {
        return label == other.label && sender == other.sender &&
               termEq(payload, other.payload);
    }
};

// Per-task message queues; front is the newest message. An entry exists for
// every task ever spawned and persists after the task finishes.
using MessageQueue = std::deque<Message>;
using QueueMap = std::map<int, MessageQueue>;

// Keeps exactly the messages whose label flows to `l`, preserving order.
MessageQueue filterQueue(const MessageQueue& q, const Label& l);

// A labeled-reference cell in the shared IFC store.
struct LabeledCell {
    Label label;
    TermPtr value;
};
using LabeledStore = std::map<int, LabeledCell>;

// The slice of configuration state an IFC redex can see and touch.
struct IfcStepContext {
    const QueueMap& queues;
    const LabeledStore& labeledStore;
    int taskId;
    Label label;
    Label clearance;
    int nextLabeledAddr;
};

// One IFC reduction, described without being applied.
struct IfcEffect {
    const char* rule;
    TermPtr result;
    std::optional<Label> newLabel;
    std::optional<Label> newClearance;
    std::optional<std::pair<int, Message>> sendTo;     // prepend message to queue
    std::optional<MessageQueue> replaceOwnQueue;       // recv / noRecv
    std::optional<std::pair<int, LabeledCell>> newCell;  // labeled-reference allocation
    std::optional<std::pair<int, TermPtr>> writeCell;    // labeled-reference write
};

// Evaluates an IFC redex (everything except sandbox, which needs the whole
// configuration). Returns nullopt when some premise fails; the embedding
// turns that into task removal. `filterOnRecv = false` selects the
// deliberately broken receive used by the harness sensitivity check.
std::optional<IfcEffect> evalIfcRedex(const IfcStepContext& ctx, const TermPtr& redex,
                                      bool filterOnRecv = true);

}  // namespace ifc
