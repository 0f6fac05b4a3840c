#include "ifc/parse.hpp"

#include <cctype>
#include <optional>

namespace ifc {

namespace {

struct Sexp {
    bool isList = false;
    std::string atom;
    std::vector<Sexp> items;
    int line = 1, col = 1;
};

struct Reader {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Reader(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    char take() {
        char c = text[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }

    void skipSpace() {
        while (pos < text.size()) {
            char c = peek();
            if (c == ';') {
                while (pos < text.size() && peek() != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    bool atEnd() {
        skipSpace();
        return pos >= text.size();
    }

    Sexp read() {
        skipSpace();
        if (pos >= text.size()) fail("unexpected end of input");
        Sexp s;
        s.line = line;
        s.col = col;
        if (peek() == '(') {
            take();
            s.isList = true;
            while (true) {
                skipSpace();
                if (pos >= text.size()) fail("missing ')'");
                if (peek() == ')') {
                    take();
                    break;
                }
                s.items.push_back(read());
            }
            return s;
        }
        if (peek() == ')') fail("unexpected ')'");
        if (peek() == '{') {
            // label literal, read through the matching brace
            while (pos < text.size() && peek() != '}') s.atom += take();
            if (pos >= text.size()) fail("missing '}'");
            s.atom += take();
            return s;
        }
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(peek())) &&
               peek() != '(' && peek() != ')' && peek() != ';') {
            s.atom += take();
        }
        return s;
    }
};

bool isInteger(const std::string& s) {
    if (s.empty() || s.size() > 9) return false;  // fits an int comfortably
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

struct ExprParser {
    LatticeKind lattice;

    [[noreturn]] void fail(const Sexp& s, const std::string& msg) const {
        throw ParseError(s.line, s.col, msg);
    }

    void arity(const Sexp& s, size_t n, const std::string& what) const {
        if (s.items.size() != n + 1) {
            fail(s, what + " takes " + std::to_string(n) + " argument(s)");
        }
    }

    Label labelAtom(const Sexp& s) const {
        auto l = Label::parse(s.atom);
        if (!l) fail(s, "expected a label literal");
        if (l->lattice() != lattice) fail(s, "label '" + s.atom + "' is not from the program lattice");
        return *l;
    }

    bool isBinderName(const Sexp& s) const {
        if (s.isList || s.atom.empty()) return false;
        char c = s.atom[0];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    TermPtr ifcExpr(const Sexp& s) {
        if (!s.isList) return ifcAtom(s);
        if (s.items.empty()) fail(s, "empty form");
        const Sexp& headS = s.items[0];
        if (headS.isList) fail(headS, "expected a keyword");
        const std::string& head = headS.atom;

        if (head == "getLabel") { arity(s, 0, head); return mk::getLabel(); }
        if (head == "taskId") { arity(s, 0, head); return mk::taskId(); }
        if (head == "getClearance") { arity(s, 0, head); return mk::getClearance(); }
        if (head == "setLabel") { arity(s, 1, head); return mk::setLabel(ifcExpr(s.items[1])); }
        if (head == "setClearance") { arity(s, 1, head); return mk::setClearance(ifcExpr(s.items[1])); }
        if (head == "sandbox") { arity(s, 1, head); return mk::sandbox(ifcExpr(s.items[1])); }
        if (head == "send") {
            arity(s, 3, head);
            return mk::send(ifcExpr(s.items[1]), ifcExpr(s.items[2]), ifcExpr(s.items[3]));
        }
        if (head == "recv" || head == "blockingRecv") {
            size_t args = head == "recv" ? 4 : 3;
            arity(s, args, head);
            if (!isBinderName(s.items[1]) || !isBinderName(s.items[2])) {
                fail(s.items[1], head + " binders must be names");
            }
            if (s.items[1].atom == s.items[2].atom) {
                fail(s.items[2], head + " binders must be distinct");
            }
            if (head == "recv") {
                return mk::recv(s.items[1].atom, s.items[2].atom, ifcExpr(s.items[3]),
                                ifcExpr(s.items[4]));
            }
            return blockingRecvMacro(s.items[1].atom, s.items[2].atom, ifcExpr(s.items[3]));
        }
        if (head == "leq" || head == "join" || head == "meet") {
            arity(s, 2, head);
            LatticeOp op = head == "leq" ? LatticeOp::Leq
                         : head == "join" ? LatticeOp::Join : LatticeOp::Meet;
            return mk::labelOp(op, ifcExpr(s.items[1]), ifcExpr(s.items[2]));
        }
        if (head == "toI") { arity(s, 1, head); return mk::toIfc(targetExpr(s.items[1])); }
        if (head == "label") {
            arity(s, 2, head);
            return mk::mkLabel(ifcExpr(s.items[1]), ifcExpr(s.items[2]));
        }
        if (head == "unlabel") { arity(s, 1, head); return mk::unlabel(ifcExpr(s.items[1])); }
        if (head == "labelOf") { arity(s, 1, head); return mk::labelOf(ifcExpr(s.items[1])); }
        if (head == "new") {
            arity(s, 2, head);
            return mk::newRef(ifcExpr(s.items[1]), ifcExpr(s.items[2]));
        }
        if (head == "read") { arity(s, 1, head); return mk::readRef(ifcExpr(s.items[1])); }
        if (head == "write") {
            arity(s, 2, head);
            return mk::writeRef(ifcExpr(s.items[1]), ifcExpr(s.items[2]));
        }
        fail(headS, "unknown keyword '" + head + "' (IFC expression)");
    }

    TermPtr ifcAtom(const Sexp& s) {
        if (s.atom == "true") return mk::tru();
        if (s.atom == "false") return mk::fls();
        if (s.atom == "unit") return mk::unit();
        if (s.atom == "getLabel") return mk::getLabel();
        if (s.atom == "taskId") return mk::taskId();
        if (s.atom == "getClearance") return mk::getClearance();
        if (isInteger(s.atom)) return mk::taskIdLit(std::stoi(s.atom));
        if (auto l = Label::parse(s.atom)) {
            if (l->lattice() != lattice) {
                fail(s, "label '" + s.atom + "' is not from the program lattice");
            }
            return mk::labelLit(*l);
        }
        if (isBinderName(s)) return mk::var(s.atom);
        fail(s, "cannot parse atom '" + s.atom + "' as an IFC expression");
    }

    TermPtr targetExpr(const Sexp& s) {
        if (!s.isList) return targetAtom(s);
        if (s.items.empty()) fail(s, "empty form");
        const Sexp& headS = s.items[0];
        if (headS.isList) fail(headS, "expected a keyword");
        const std::string& head = headS.atom;

        if (head == "lam") {
            arity(s, 2, head);
            if (!isBinderName(s.items[1])) fail(s.items[1], "lam binder must be a name");
            return mk::lam(s.items[1].atom, targetExpr(s.items[2]));
        }
        if (head == "app") {
            arity(s, 2, head);
            return mk::app(targetExpr(s.items[1]), targetExpr(s.items[2]));
        }
        if (head == "if") {
            arity(s, 3, head);
            return mk::ifTerm(targetExpr(s.items[1]), targetExpr(s.items[2]),
                              targetExpr(s.items[3]));
        }
        if (head == "ref") { arity(s, 1, head); return mk::ref(targetExpr(s.items[1])); }
        if (head == "deref") { arity(s, 1, head); return mk::deref(targetExpr(s.items[1])); }
        if (head == "assign") {
            arity(s, 2, head);
            return mk::assign(targetExpr(s.items[1]), targetExpr(s.items[2]));
        }
        if (head == "fix") { arity(s, 1, head); return mk::fix(targetExpr(s.items[1])); }
        if (head == "toT") { arity(s, 1, head); return mk::toTarget(ifcExpr(s.items[1])); }
        if (head == "let") {
            arity(s, 3, head);
            if (!isBinderName(s.items[1])) fail(s.items[1], "let binder must be a name");
            return mk::app(mk::lam(s.items[1].atom, targetExpr(s.items[3])),
                           targetExpr(s.items[2]));
        }
        if (head == "seq") {
            arity(s, 2, head);
            TermPtr e2 = targetExpr(s.items[2]);
            std::string x = "_";
            auto fv = freeVars(e2);
            while (fv.count(x)) x += "_";
            return mk::app(mk::lam(x, e2), targetExpr(s.items[1]));
        }
        fail(headS, "unknown keyword '" + head + "' (target expression)");
    }

    TermPtr targetAtom(const Sexp& s) {
        if (s.atom == "true") return mk::tru();
        if (s.atom == "false") return mk::fls();
        if (s.atom == "diverge") return mk::diverge();
        if (isBinderName(s)) return mk::var(s.atom);
        fail(s, "cannot parse atom '" + s.atom + "' as a target expression");
    }
};

}  // namespace

TermPtr parseExpr(const std::string& text, LatticeKind lattice, bool targetMode) {
    Reader r(text);
    Sexp s = r.read();
    if (!r.atEnd()) r.fail("trailing input after expression");
    ExprParser p{lattice};
    return targetMode ? p.targetExpr(s) : p.ifcExpr(s);
}

ParsedProgram parseProgram(const std::string& text) {
    Reader r(text);
    std::vector<Sexp> forms;
    while (!r.atEnd()) forms.push_back(r.read());

    ParsedProgram out;
    RunSettings& rs = out.settings;

    // Settle the lattice first; labels elsewhere must come from it.
    for (const Sexp& f : forms) {
        if (f.isList && !f.items.empty() && !f.items[0].isList && f.items[0].atom == "lattice") {
            if (f.items.size() != 2 || f.items[1].isList) {
                throw ParseError(f.line, f.col, "lattice takes one of: twopoint, powerset");
            }
            const std::string& v = f.items[1].atom;
            if (v == "twopoint") rs.lattice = LatticeKind::TwoPoint;
            else if (v == "powerset") rs.lattice = LatticeKind::Powerset;
            else throw ParseError(f.items[1].line, f.items[1].col, "unknown lattice '" + v + "'");
        }
    }

    ExprParser ep{rs.lattice};
    std::vector<Task> tasks;

    for (const Sexp& f : forms) {
        if (!f.isList || f.items.empty() || f.items[0].isList) {
            throw ParseError(f.line, f.col, "expected a (keyword ...) form");
        }
        const std::string& head = f.items[0].atom;
        auto word = [&](size_t i) -> const std::string& {
            if (i >= f.items.size() || f.items[i].isList) {
                throw ParseError(f.line, f.col, head + ": expected a word argument");
            }
            return f.items[i].atom;
        };

        if (head == "lattice") {
            continue;  // handled above
        } else if (head == "scheduler") {
            const std::string& v = word(1);
            if (v != "rr" && v != "seq") throw ParseError(f.line, f.col, "scheduler must be rr or seq");
            rs.scheduler = v;
        } else if (head == "engine") {
            const std::string& v = word(1);
            if (v != "abstract" && v != "concrete") {
                throw ParseError(f.line, f.col, "engine must be abstract or concrete");
            }
            rs.engine = v;
        } else if (head == "kappa") {
            const std::string& v = word(1);
            if (v == "identity") rs.kappa = Kappa::Identity;
            else if (v == "empty") rs.kappa = Kappa::Empty;
            else throw ParseError(f.line, f.col, "kappa must be identity or empty");
        } else if (head == "restrict") {
            for (size_t i = 1; i < f.items.size(); ++i) {
                const std::string& v = word(i);
                if (v != "norefs" && v != "clearance") {
                    throw ParseError(f.items[i].line, f.items[i].col,
                                     "unknown restriction family '" + v + "'");
                }
                rs.restrictions.push_back(v);
            }
        } else if (head == "maxSteps") {
            const std::string& v = word(1);
            if (!isInteger(v)) throw ParseError(f.line, f.col, "maxSteps takes a number");
            rs.maxSteps = std::stoi(v);
        } else if (head == "task") {
            if (f.items.size() != 4 && f.items.size() != 5) {
                throw ParseError(f.line, f.col, "task takes: id, label, [clearance], expression");
            }
            Task t;
            const std::string& idW = word(1);
            if (!isInteger(idW)) throw ParseError(f.items[1].line, f.items[1].col, "task id must be a number");
            t.id = std::stoi(idW);
            t.label = ep.labelAtom(f.items[2]);
            t.clearance = Label::top(rs.lattice);
            size_t exprIndex = 3;
            if (f.items.size() == 5) {
                const Sexp& cl = f.items[3];
                if (!cl.isList || cl.items.size() != 2 || cl.items[0].isList ||
                    cl.items[0].atom != "clearance") {
                    throw ParseError(cl.line, cl.col, "expected (clearance LABEL)");
                }
                t.clearance = ep.labelAtom(cl.items[1]);
                exprIndex = 4;
            }
            t.expr = ep.ifcExpr(f.items[exprIndex]);
            auto fv = freeVars(t.expr);
            if (!fv.empty()) {
                throw ParseError(f.items[exprIndex].line, f.items[exprIndex].col,
                                 "task expression has a free variable '" + *fv.begin() + "'");
            }
            tasks.push_back(std::move(t));
        } else {
            throw ParseError(f.line, f.col, "unknown form '" + head + "'");
        }
    }

    if (tasks.empty()) throw ParseError(1, 1, "program declares no tasks");
    try {
        out.config = makeConfiguration(std::move(tasks), rs.lattice);
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, 1, e.what());
    }
    return out;
}

}  // namespace ifc
