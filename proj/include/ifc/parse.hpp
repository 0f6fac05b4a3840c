#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ifc/config.hpp"
#include "ifc/engine.hpp"

namespace ifc {

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct RunSettings {
    LatticeKind lattice = LatticeKind::TwoPoint;
    std::string scheduler = "rr";
    std::string engine = "abstract";
    Kappa kappa = Kappa::Identity;
    std::vector<std::string> restrictions;
    int maxSteps = 1000;
};

struct ParsedProgram {
    Configuration config;
    RunSettings settings;
};

// Parses one expression in the given language mode ("ifc" is the root mode
// of every task). Boundaries switch modes: (toI e) embeds a target
// expression into the IFC language, (toT e) the other way around.
TermPtr parseExpr(const std::string& text, LatticeKind lattice, bool targetMode = false);

// Parses a whole program file: header forms plus task declarations.
//
//   (lattice twopoint|powerset)
//   (scheduler rr|seq)
//   (engine abstract|concrete)
//   (kappa identity|empty)
//   (restrict norefs clearance)
//   (maxSteps N)
//   (task ID LABEL EXPR)
//   (task ID LABEL (clearance LABEL) EXPR)
ParsedProgram parseProgram(const std::string& text);

}  // namespace ifc
