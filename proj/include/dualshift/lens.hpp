// The pattern lens: reads a program's decomposition. Detects the data
// hierarchy, resolves which class owns the business code of every
// (subtype, operation) cell, and classifies the result as data-oriented,
// function-oriented, or mixed.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dualshift/ast.hpp"

namespace dualshift {

struct Operation {
    std::string name;
    Type return_type;
};

struct HierarchyInfo {
    std::string root;                    // unique abstract class with concrete subclasses
    std::vector<std::string> subtypes;   // direct concrete subclasses, declaration order
    std::vector<Operation> operations;   // root's methods minus the accept dispatcher
    std::string accept_name;             // "" when the program has no dispatcher
    std::string visitor_interface;       // "" when absent
    std::vector<std::string> visitor_classes;  // classes outside the hierarchy
};

// Error text on failure ("no hierarchy root found", ...).
using DetectResult = std::variant<HierarchyInfo, std::string>;
DetectResult detect_hierarchy(const Program& p);

// owner[row][col]: the class holding the business code of subtype row /
// operation col, "?" when the delegation chain cannot be resolved.
struct Matrix {
    std::vector<std::string> subtypes;
    std::vector<Operation> operations;
    std::vector<std::vector<std::string>> owner;
};

Matrix coverage_matrix(const Program& p, const HierarchyInfo& h);

enum class Form { DataOriented, FunctionOriented, Mixed };

struct Classification {
    Form form = Form::Mixed;
    std::vector<std::string> offending_subtypes;    // rows breaking the pattern
    std::vector<std::string> offending_operations;  // columns breaking the pattern
    std::vector<std::string> details;               // one human-readable line each
};

Classification classify(const Matrix& m);

std::string formName(Form f);

// Aligned text table (header row even when the matrix is empty).
std::string render_matrix(const Matrix& m);

// "subtype,operation,owner" lines with a header.
std::string matrixCsv(const Matrix& m);

}  // namespace dualshift
