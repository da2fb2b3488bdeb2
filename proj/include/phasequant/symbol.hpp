#pragma once

#include "phasequant/phase_space.hpp"

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace phq {

enum class NodeKind { number, imag_unit, variable, neg, add, sub, mul, div, pow, call };
enum class Func { exp, sin, cos, sqrt, gauss };

struct ExprNode {
    NodeKind kind = NodeKind::number;
    double number = 0.0;  // number literal
    int variable = 0;     // phase-space axis for variables
    int exponent = 0;     // pow
    Func func = Func::exp;
    std::vector<std::shared_ptr<const ExprNode>> args;
};

// Parsed symbol expression over the phase-space variables for a given n.
class SymbolExpr {
public:
    SymbolExpr() = default;
    SymbolExpr(int n, std::shared_ptr<const ExprNode> root, std::string source);

    int n() const { return n_; }
    const ExprNode& root() const { return *root_; }
    const std::string& source() const { return source_; }

    cplx evaluate(const PhasePoint& X) const;
    // Canonical text; parses back to an equal tree.
    std::string print() const;
    bool operator==(const SymbolExpr& o) const;

private:
    int n_ = 1;
    std::shared_ptr<const ExprNode> root_;
    std::string source_;
};

SymbolExpr parse_symbol(std::string_view src, int n);
cplx evaluate(const SymbolExpr& e, const PhasePoint& X);
bool same_tree(const ExprNode& a, const ExprNode& b);
std::string variable_name(int axis, int n);
const char* func_name(Func f);

// A symbol F : R^{2n} -> C, either parsed or given as a callable.
class Symbol {
public:
    using Fn = std::function<cplx(const PhasePoint&)>;
    Symbol() = default;
    explicit Symbol(SymbolExpr expr);
    Symbol(int n, Fn fn, std::string label);

    int n() const { return n_; }
    const std::string& label() const { return label_; }
    const SymbolExpr* expr() const { return expr_ ? expr_.get() : nullptr; }
    cplx operator()(const PhasePoint& X) const { return fn_(X); }

private:
    int n_ = 1;
    Fn fn_;
    std::string label_;
    std::shared_ptr<const SymbolExpr> expr_;
};

Symbol parse_symbol_fn(std::string_view src, int n);

} // namespace phq
