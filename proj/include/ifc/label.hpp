#pragma once

#include <optional>
#include <set>
#include <string>

namespace ifc {

// Which security lattice a label belongs to. One program uses exactly one
// lattice; operations on labels from different lattices are usage errors and
// throw.
enum class LatticeKind {
    TwoPoint,  // {pub, sec} with pub ⊑ sec
    Powerset,  // finite sets of principal names, ordered by inclusion
};

// An element of the security lattice. Value type, freely copyable.
//
// The powerset instance reads more principals as more confidential:
// l1 ⊑ l2 iff l1 ⊆ l2, join is union, meet is intersection. It carries an
// explicit top element so that clearance can default to "unbounded".
class Label {
  public:
    Label() : lattice_(LatticeKind::TwoPoint), secret_(false) {}

    static Label pub() { return Label(); }
    static Label sec() {
        Label l;
        l.secret_ = true;
        return l;
    }
    static Label principals(std::set<std::string> names) {
        Label l;
        l.lattice_ = LatticeKind::Powerset;
        l.atoms_ = std::move(names);
        return l;
    }
    static Label powersetTop() {
        Label l;
        l.lattice_ = LatticeKind::Powerset;
        l.top_ = true;
        return l;
    }
    static Label top(LatticeKind k) {
        return k == LatticeKind::TwoPoint ? sec() : powersetTop();
    }
    static Label bottom(LatticeKind k) {
        return k == LatticeKind::TwoPoint ? pub() : principals({});
    }

    LatticeKind lattice() const { return lattice_; }
    bool isTop() const;

    bool leq(const Label& other) const;
    Label join(const Label& other) const;
    Label meet(const Label& other) const;

    bool operator==(const Label& other) const;
    bool operator!=(const Label& other) const { return !(*this == other); }
    // Total order for use as a map key; unrelated to the lattice order.
    bool operator<(const Label& other) const;

    std::string str() const;
    // Accepts "pub", "sec", "top", "{}", "{A,B}". Returns nullopt on anything else.
    static std::optional<Label> parse(const std::string& text);

  private:
    LatticeKind lattice_;
    bool secret_ = false;              // TwoPoint payload
    bool top_ = false;                 // Powerset top element
    std::set<std::string> atoms_;      // Powerset payload
};

}  // namespace ifc
