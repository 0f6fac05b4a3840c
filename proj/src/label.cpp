#include "ifc/label.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace ifc {

namespace {

void requireSameLattice(const Label& a, const Label& b) {
    if (a.lattice() != b.lattice()) {
        throw std::logic_error("label operation across lattice instances");
    }
}

}  // namespace

bool Label::isTop() const {
    return lattice_ == LatticeKind::TwoPoint ? secret_ : top_;
}

bool Label::leq(const Label& other) const {
    requireSameLattice(*this, other);
    if (lattice_ == LatticeKind::TwoPoint) {
        return !secret_ || other.secret_;
    }
    if (other.top_) return true;
    if (top_) return false;
    return std::includes(other.atoms_.begin(), other.atoms_.end(),
                         atoms_.begin(), atoms_.end());
}

Label Label::join(const Label& other) const {
    requireSameLattice(*this, other);
    if (lattice_ == LatticeKind::TwoPoint) {
        return (secret_ || other.secret_) ? sec() : pub();
    }
    if (top_ || other.top_) return powersetTop();
    std::set<std::string> out = atoms_;
    out.insert(other.atoms_.begin(), other.atoms_.end());
    return principals(std::move(out));
}

Label Label::meet(const Label& other) const {
    requireSameLattice(*this, other);
    if (lattice_ == LatticeKind::TwoPoint) {
        return (secret_ && other.secret_) ? sec() : pub();
    }
    if (top_) return other;
    if (other.top_) return *this;
    std::set<std::string> out;
    std::set_intersection(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
                          other.atoms_.end(), std::inserter(out, out.begin()));
    return principals(std::move(out));
}

bool Label::operator==(const Label& other) const {
    return lattice_ == other.lattice_ && secret_ == other.secret_ &&
           top_ == other.top_ && atoms_ == other.atoms_;
}

bool Label::operator<(const Label& other) const {
    if (lattice_ != other.lattice_) return lattice_ < other.lattice_;
    if (secret_ != other.secret_) return secret_ < other.secret_;
    if (top_ != other.top_) return top_ < other.top_;
    return atoms_ < other.atoms_;
}

std::string Label::str() const {
    if (lattice_ == LatticeKind::TwoPoint) {
        return secret_ ? "sec" : "pub";
    }
    if (top_) return "top";
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& a : atoms_) {
        if (!first) os << ',';
        os << a;
        first = false;
    }
    os << '}';
    return os.str();
}

std::optional<Label> Label::parse(const std::string& text) {
    if (text == "pub") return pub();
    if (text == "sec") return sec();
    if (text == "top") return powersetTop();
    if (text.size() >= 2 && text.front() == '{' && text.back() == '}') {
        std::set<std::string> names;
        std::string body = text.substr(1, text.size() - 2);
        std::string cur;
        for (char c : body) {
            if (c == ',') {
                if (cur.empty()) return std::nullopt;
                names.insert(cur);
                cur.clear();
            } else if (c == ' ') {
                continue;
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) names.insert(cur);
        else if (!body.empty()) return std::nullopt;
        return principals(std::move(names));
    }
    return std::nullopt;
}

}  // namespace ifc
