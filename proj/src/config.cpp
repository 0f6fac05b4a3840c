#include "ifc/config.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifc {

Configuration makeConfiguration(std::vector<Task> tasks, LatticeKind lattice) {
    Configuration c;
    c.lattice = lattice;
    c.tasks = std::move(tasks);
    for (auto& t : c.tasks) {
        if (c.queues.count(t.id)) throw std::invalid_argument("duplicate task id");
        c.queues[t.id] = {};
        c.labelRegistry[t.id] = t.label;
        c.nextTaskId = std::max(c.nextTaskId, t.id + 1);
    }
    return c;
}

namespace {

std::vector<Task> rotateHeadToBack(std::vector<Task> ts) {
    if (ts.size() > 1) {
        std::rotate(ts.begin(), ts.begin() + 1, ts.end());
    }
    return ts;
}

std::vector<Task> dropHead(std::vector<Task> ts) {
    if (!ts.empty()) ts.erase(ts.begin());
    return ts;
}

}  // namespace

SchedulerPolicy schedulerRR() {
    SchedulerPolicy p;
    p.name = "rr";
    p.step = rotateHeadToBack;
    p.done = dropHead;
    p.noStep = dropHead;
    p.sandbox = rotateHeadToBack;
    return p;
}

SchedulerPolicy schedulerSeq() {
    SchedulerPolicy p;
    p.name = "seq";
    p.step = [](std::vector<Task> ts) { return ts; };
    p.noStep = [](std::vector<Task> ts) { return ts; };
    p.done = [](std::vector<Task> ts) {
        if (ts.size() <= 1) return ts;  // singleton is kept (a terminal state)
        return dropHead(std::move(ts));
    };
    p.sandbox = [](std::vector<Task> ts) {
        if (ts.size() > 1) {
            std::rotate(ts.begin(), ts.end() - 1, ts.end());  // fresh task to the front
        }
        return ts;
    };
    return p;
}

SchedulerPolicy schedulerByName(const std::string& name) {
    if (name == "rr") return schedulerRR();
    if (name == "seq") return schedulerSeq();
    throw std::invalid_argument("unknown scheduler: " + name);
}

std::string printTask(const Task& t) {
    std::string out = "<id=" + std::to_string(t.id) + " label=" + t.label.str() +
                      " clr=" + t.clearance.str() + " store={";
    bool first = true;
    for (const auto& [a, v] : t.store.cells) {
        if (!first) out += ",";
        out += "a" + std::to_string(a) + "=" + printTerm(v);
        first = false;
    }
    out += "}#" + std::to_string(t.store.next);
    out += " expr=" + printTerm(t.expr) + ">";
    return out;
}

std::string printConfig(const Configuration& c) {
    std::string out = "queues{";
    bool first = true;
    for (const auto& [id, q] : c.queues) {
        if (!first) out += " ";
        out += std::to_string(id) + ":[";
        bool f2 = true;
        for (const auto& m : q) {
            if (!f2) out += ",";
            out += "(" + m.label.str() + "," + std::to_string(m.sender) + "," +
                   printTerm(m.payload) + ")";
            f2 = false;
        }
        out += "]";
        first = false;
    }
    out += "} lstore{";
    first = true;
    for (const auto& [a, cell] : c.labeledStore) {
        if (!first) out += " ";
        out += "a" + std::to_string(a) + "@" + cell.label.str() + "=" + printTerm(cell.value);
        first = false;
    }
    out += "} registry{";
    first = true;
    for (const auto& [id, l] : c.labelRegistry) {
        if (!first) out += " ";
        out += std::to_string(id) + ":" + l.str();
        first = false;
    }
    out += "} next=" + std::to_string(c.nextTaskId) + "/" + std::to_string(c.nextLabeledAddr);
    out += " tasks[";
    first = true;
    for (const auto& t : c.tasks) {
        if (!first) out += " ";
        out += printTask(t);
        first = false;
    }
    out += "]";
    return out;
}

}  // namespace ifc
