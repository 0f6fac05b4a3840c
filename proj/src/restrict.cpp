#include "ifc/restrict.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

#include "ifc/decompose.hpp"

namespace ifc {

void RestrictionFamily::attach(const std::string& rule, Predicate p) {
    if (rule == "I-noStep") {
        throw std::logic_error("I-noStep cannot carry a restriction predicate");
    }
    preds_[rule].push_back(std::move(p));
}

bool RestrictionFamily::allows(const std::string& rule, const ErasedConfiguration& view) const {
    auto it = preds_.find(rule);
    if (it == preds_.end()) return true;
    for (const auto& p : it->second) {
        if (!p(view)) return false;
    }
    return true;
}

std::vector<std::string> RestrictionFamily::restrictedRules() const {
    std::vector<std::string> out;
    for (const auto& [rule, ps] : preds_) out.push_back(rule);
    return out;
}

RestrictionFamily merge(const RestrictionFamily& a, const RestrictionFamily& b) {
    RestrictionFamily out = a;
    for (const auto& [rule, ps] : b.preds_) {
        for (const auto& p : ps) out.preds_[rule].push_back(p);
    }
    return out;
}

namespace {

// The head task survives erasure at its own label, so the predicates can
// re-locate the redex inside the erased head and inspect its arguments.
TermPtr headFocus(const ErasedConfiguration& view) {
    if (view.config.tasks.empty()) return nullptr;
    return decompose(view.config.tasks.front().expr).focus;
}

}  // namespace

RestrictionFamily pNorefs() {
    RestrictionFamily fam;
    fam.attach("I-sandbox", [](const ErasedConfiguration& view) {
        TermPtr f = headFocus(view);
        if (!f || f->kind != TermKind::Sandbox) return true;
        return addrVars(f->kids[0]).empty();
    });
    fam.attach("I-send", [](const ErasedConfiguration& view) {
        TermPtr f = headFocus(view);
        if (!f || f->kind != TermKind::Send) return true;
        return addrVars(f->kids[2]).empty();
    });
    return fam;
}

RestrictionFamily clearanceFamily() {
    RestrictionFamily fam;
    auto headLabelArg = [](const ErasedConfiguration& view, TermKind expect,
                           int kidIndex) -> std::optional<std::pair<Label, Label>> {
        TermPtr f = headFocus(view);
        if (!f || f->kind != expect) return std::nullopt;
        const TermPtr& arg = f->kids[static_cast<size_t>(kidIndex)];
        if (arg->kind != TermKind::LabelLit) return std::nullopt;
        return std::make_pair(arg->label, view.config.tasks.front().clearance);
    };
    fam.attach("I-setLabel", [headLabelArg](const ErasedConfiguration& view) {
        auto got = headLabelArg(view, TermKind::SetLabel, 0);
        return !got || got->first.leq(got->second);
    });
    fam.attach("I-send", [headLabelArg](const ErasedConfiguration& view) {
        auto got = headLabelArg(view, TermKind::Send, 1);
        return !got || got->first.leq(got->second);
    });
    fam.attach("I-new", [headLabelArg](const ErasedConfiguration& view) {
        auto got = headLabelArg(view, TermKind::New, 0);
        return !got || got->first.leq(got->second);
    });
    fam.attach("I-sandbox", [](const ErasedConfiguration& view) {
        if (view.config.tasks.empty()) return true;
        const Task& head = view.config.tasks.front();
        return head.label.leq(head.clearance);
    });
    fam.attach("I-setClearance", [headLabelArg](const ErasedConfiguration& view) {
        auto got = headLabelArg(view, TermKind::SetClearance, 0);
        return !got || got->first.leq(got->second);  // only ever lowered
    });
    return fam;
}

RestrictionFamily familiesByName(const std::vector<std::string>& names) {
    RestrictionFamily fam;
    for (const auto& n : names) {
        if (n == "norefs") {
            fam = merge(fam, pNorefs());
        } else if (n == "clearance") {
            fam = merge(fam, clearanceFamily());
        } else {
            throw std::invalid_argument("unknown restriction family: " + n);
        }
    }
    return fam;
}

}  // namespace ifc
