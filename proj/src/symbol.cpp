#include "phasequant/symbol.hpp"

#include "phasequant/errors.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace phq {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    double value = 0.0;
};

const char* tok_desc(Tok t) {
    switch (t) {
    case Tok::number: return "number";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    i = j;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                }
            }
            std::string text(s.substr(start, i - start));
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
                throw ParseError("malformed number '" + text + "' at offset " + std::to_string(start), start,
                                 "number");
            out.push_back({Tok::number, start, text, v});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '/': k = Tok::slash; break;
        case '^': k = Tok::caret; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        default:
            throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i), i,
                             "number, identifier, operator or parenthesis");
        }
        out.push_back({k, i, std::string(1, c)});
        ++i;
    }
    out.push_back({Tok::end, s.size(), ""});
    return out;
}

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(NodeKind k, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    Parser(std::string_view src, int n) : toks_(lex(src)), n_(n) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        if (peek().kind != Tok::end) fail("'+', '-', '*', '/', '^' or end of input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError("parse error at offset " + std::to_string(t.offset) + ": expected " + expected + ", found " +
                             tok_desc(t.kind),
                         t.offset, expected);
    }

    void expect(Tok k) {
        if (peek().kind != k) fail(tok_desc(k));
        ++pos_;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const NodeKind k = take().kind == Tok::plus ? NodeKind::add : NodeKind::sub;
            lhs = make(k, {lhs, term()});
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const NodeKind k = take().kind == Tok::star ? NodeKind::mul : NodeKind::div;
            lhs = make(k, {lhs, unary()});
        }
        return lhs;
    }

    NodePtr unary() {
        if (peek().kind == Tok::minus) {
            take();
            return make(NodeKind::neg, {unary()});
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        while (peek().kind == Tok::caret) {
            take();
            const Token& t = peek();
            if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos ||
                t.text.size() > 4)
                fail("nonnegative integer exponent");
            take();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::pow;
            n->exponent = std::atoi(t.text.c_str());
            n->args = {base};
            base = n;
        }
        return base;
    }

    int variable_axis(const std::string& name) const {
        for (int a = 0; a < 2 * n_; ++a)
            if (name == variable_name(a, n_)) return a;
        if (n_ == 1) {
            if (name == "x1") return 0;
            if (name == "xi1") return 1;
        }
        return -1;
    }

    NodePtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            take();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::number;
            n->number = t.value;
            return n;
        }
        case Tok::lparen: {
            take();
            NodePtr e = expr();
            expect(Tok::rparen);
            return e;
        }
        case Tok::ident: {
            const Token id = take();
            if (peek().kind == Tok::lparen) {
                Func f;
                if (id.text == "exp") f = Func::exp;
                else if (id.text == "sin") f = Func::sin;
                else if (id.text == "cos") f = Func::cos;
                else if (id.text == "sqrt") f = Func::sqrt;
                else if (id.text == "gauss") f = Func::gauss;
                else throw UnknownIdentifier(id.text);
                take();
                NodePtr arg = expr();
                expect(Tok::rparen);
                auto n = std::make_shared<ExprNode>();
                n->kind = NodeKind::call;
                n->func = f;
                n->args = {arg};
                return n;
            }
            if (id.text == "i") return make(NodeKind::imag_unit);
            if (id.text == "pi") {
                auto n = std::make_shared<ExprNode>();
                n->kind = NodeKind::number;
                n->number = kPi;
                return n;
            }
            const int axis = variable_axis(id.text);
            if (axis < 0) throw UnknownIdentifier(id.text);
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::variable;
            n->variable = axis;
            return n;
        }
        default: fail("number, identifier, '-' or '('");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int n_;
};

cplx eval_node(const ExprNode& e, const PhasePoint& X) {
    switch (e.kind) {
    case NodeKind::number: return e.number;
    case NodeKind::imag_unit: return {0.0, 1.0};
    case NodeKind::variable: return X[e.variable];
    // 0 - a keeps a +0 imaginary part, so sqrt(-4) lands on the principal branch
    case NodeKind::neg: return cplx(0.0) - eval_node(*e.args[0], X);
    case NodeKind::add: return eval_node(*e.args[0], X) + eval_node(*e.args[1], X);
    case NodeKind::sub: return eval_node(*e.args[0], X) - eval_node(*e.args[1], X);
    case NodeKind::mul: return eval_node(*e.args[0], X) * eval_node(*e.args[1], X);
    case NodeKind::div: {
        const cplx d = eval_node(*e.args[1], X);
        if (d == cplx(0.0, 0.0)) throw EvaluationError("division by zero at " + X.str(), X.to_vector());
        return eval_node(*e.args[0], X) / d;
    }
    case NodeKind::pow: {
        const cplx b = eval_node(*e.args[0], X);
        cplx r = 1.0;
        cplx p = b;
        for (int k = e.exponent; k > 0; k >>= 1) {
            if (k & 1) r *= p;
            p *= p;
        }
        return r;
    }
    case NodeKind::call: {
        const cplx a = eval_node(*e.args[0], X);
        switch (e.func) {
        case Func::exp: return std::exp(a);
        case Func::sin: return std::sin(a);
        case Func::cos: return std::cos(a);
        case Func::sqrt: return std::sqrt(a);
        case Func::gauss: return std::exp(-a * X.sq_norm());
        }
    }
    }
    return 0.0;
}

void print_node(const ExprNode& e, int n, std::string& out) {
    switch (e.kind) {
    case NodeKind::number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", e.number);
        out += buf;
        return;
    }
    case NodeKind::imag_unit: out += "i"; return;
    case NodeKind::variable: out += variable_name(e.variable, n); return;
    case NodeKind::neg:
        out += "(-";
        print_node(*e.args[0], n, out);
        out += ")";
        return;
    case NodeKind::pow:
        out += "(";
        print_node(*e.args[0], n, out);
        out += "^" + std::to_string(e.exponent) + ")";
        return;
    case NodeKind::call:
        out += func_name(e.func);
        out += "(";
        print_node(*e.args[0], n, out);
        out += ")";
        return;
    default: break;
    }
    const char* op = e.kind == NodeKind::add ? " + " : e.kind == NodeKind::sub ? " - " : e.kind == NodeKind::mul ? " * " : " / ";
    out += "(";
    print_node(*e.args[0], n, out);
    out += op;
    print_node(*e.args[1], n, out);
    out += ")";
}

} // namespace

std::string variable_name(int axis, int n) {
    if (n == 1) return axis == 0 ? "x" : "xi";
    return (axis < n ? "x" : "xi") + std::to_string(axis % n + 1);
}

const char* func_name(Func f) {
    switch (f) {
    case Func::exp: return "exp";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::sqrt: return "sqrt";
    case Func::gauss: return "gauss";
    }
    return "?";
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case NodeKind::number:
        if (a.number != b.number) return false;
        break;
    case NodeKind::variable:
        if (a.variable != b.variable) return false;
        break;
    case NodeKind::pow:
        if (a.exponent != b.exponent) return false;
        break;
    case NodeKind::call:
        if (a.func != b.func) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_tree(*a.args[i], *b.args[i])) return false;
    return true;
}

SymbolExpr::SymbolExpr(int n, std::shared_ptr<const ExprNode> root, std::string source)
    : n_(n), root_(std::move(root)), source_(std::move(source)) {}

cplx SymbolExpr::evaluate(const PhasePoint& X) const {
    if (X.n() != n_) throw InvalidArgument("symbol parsed for n=" + std::to_string(n_) + " evaluated at n=" + std::to_string(X.n()));
    return eval_node(*root_, X);
}

std::string SymbolExpr::print() const {
    std::string out;
    print_node(*root_, n_, out);
    return out;
}

bool SymbolExpr::operator==(const SymbolExpr& o) const { return n_ == o.n_ && same_tree(*root_, *o.root_); }

SymbolExpr parse_symbol(std::string_view src, int n) {
    if (n != 1 && n != 2) throw InvalidArgument("symbol dimension n must be 1 or 2");
    Parser p(src, n);
    return SymbolExpr(n, p.parse_all(), std::string(src));
}

cplx evaluate(const SymbolExpr& e, const PhasePoint& X) { return e.evaluate(X); }

Symbol::Symbol(SymbolExpr expr)
    : n_(expr.n()), label_(expr.source()), expr_(std::make_shared<const SymbolExpr>(std::move(expr))) {
    auto e = expr_;
    fn_ = [e](const PhasePoint& X) { return e->evaluate(X); };
}

Symbol::Symbol(int n, Fn fn, std::string label) : n_(n), fn_(std::move(fn)), label_(std::move(label)) {}

Symbol parse_symbol_fn(std::string_view src, int n) { return Symbol(parse_symbol(src, n)); }

} // namespace phq
