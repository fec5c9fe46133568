#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "piflat/errors.hpp"
#include "piflat/flatness.hpp"
#include "piflat/format.hpp"

namespace piflat {

/// Parsed system description. A and B have entries in O; names are optional declarations.
struct SystemFile {
    Rational tau{1};
    OpMatrix A;
    OpMatrix B;
    std::vector<std::string> state_names;
    std::vector<std::string> input_names;

    SystemLTV system() const { return SystemLTV(A, B); }

    /// Declared names, or x1..xn and u1..um (plain u when m = 1).
    std::vector<std::string> states() const {
        if (!state_names.empty()) return state_names;
        std::vector<std::string> out;
        for (std::size_t i = 1; i <= A.rows(); ++i) out.push_back("x" + std::to_string(i));
        return out;
    }
    std::vector<std::string> inputs() const {
        if (!input_names.empty()) return input_names;
        if (B.cols() == 1) return {"u"};
        std::vector<std::string> out;
        for (std::size_t i = 1; i <= B.cols(); ++i) out.push_back("u" + std::to_string(i));
        return out;
    }

    friend bool operator==(const SystemFile& a, const SystemFile& b) {
        return a.tau == b.tau && a.A == b.A && a.B == b.B && a.state_names == b.state_names &&
               a.input_names == b.input_names;
    }
};

namespace detail {

struct Token {
    enum Kind { ident, number, symbol, end } kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            advance(1);
        } else if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::ident, std::string(src.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::number, std::string(src.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::string_view("+-*/^()[],;=").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Token::symbol, std::string(1, static_cast<char>(c)), line, col});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
        }
    }
    out.push_back({Token::end, "", line, col});
    return out;
}

struct Node {
    enum Kind { number, var_t, var_d, var_D, neg, add, sub, mul, div, pow } kind;
    std::size_t line = 0, column = 0;
    Integer value;      // number
    long exponent = 0;  // pow
    std::unique_ptr<Node> lhs, rhs;
};
using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at_symbol(char c) const { return peek().kind == Token::symbol && peek().text[0] == c; }
    bool at_end() const { return peek().kind == Token::end; }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    [[noreturn]] void fail(const std::string& what) const { fail_at(what, peek()); }
    [[noreturn]] static void fail_at(const std::string& what, const Token& t) {
        throw ParseError(what + (t.kind == Token::end ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
    }

    void expect(char c) {
        if (!at_symbol(c)) fail(std::string("expected '") + c + "'");
        next();
    }

    NodePtr expr() {
        NodePtr left = term();
        while (at_symbol('+') || at_symbol('-')) {
            Token op = next();
            left = binary(op.text[0] == '+' ? Node::add : Node::sub, std::move(left), term(), op);
        }
        return left;
    }

    NodePtr term() {
        NodePtr left = unary();
        while (at_symbol('*') || at_symbol('/')) {
            Token op = next();
            left = binary(op.text[0] == '*' ? Node::mul : Node::div, std::move(left), unary(), op);
        }
        return left;
    }

    NodePtr unary() {
        if (at_symbol('-')) {
            Token op = next();
            auto n = make(Node::neg, op);
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!at_symbol('^')) return base;
        Token op = next();
        bool negative = false;
        if (at_symbol('-')) {
            next();
            negative = true;
        }
        if (peek().kind != Token::number) fail("expected an integer exponent");
        Token num = next();
        if (num.text.size() > 6) fail_at("exponent too large", num);
        auto n = make(Node::pow, op);
        n->exponent = std::stol(num.text) * (negative ? -1 : 1);
        n->lhs = std::move(base);
        return n;
    }

    NodePtr atom() {
        const Token& t = peek();
        if (t.kind == Token::number) {
            Token num = next();
            auto n = make(Node::number, num);
            n->value = Integer(num.text);
            return n;
        }
        if (t.kind == Token::ident) {
            Token id = next();
            if (id.text == "t") return make(Node::var_t, id);
            if (id.text == "d") return make(Node::var_d, id);
            if (id.text == "D") return make(Node::var_D, id);
            fail_at("unknown symbol '" + id.text + "' (expected t, d or D)", id);
        }
        if (at_symbol('(')) {
            next();
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        fail("expected an operand");
    }

    /// [[e, e], [e, e]] as a row-major list of expression trees.
    std::vector<std::vector<NodePtr>> matrix() {
        std::vector<std::vector<NodePtr>> rows;
        expect('[');
        do {
            Token row_tok = peek();
            expect('[');
            std::vector<NodePtr> row;
            row.push_back(expr());
            while (at_symbol(',')) {
                next();
                row.push_back(expr());
            }
            expect(']');
            if (!rows.empty() && row.size() != rows.front().size())
                fail_at("dimension mismatch: rows have different lengths", row_tok);
            rows.push_back(std::move(row));
        } while (at_symbol(',') && (next(), true));
        expect(']');
        return rows;
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> names;
        expect('[');
        do {
            if (peek().kind != Token::ident) fail("expected a variable name");
            names.push_back(next().text);
        } while (at_symbol(',') && (next(), true));
        expect(']');
        return names;
    }

private:
    static NodePtr make(Node::Kind k, const Token& t) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->line = t.line;
        n->column = t.column;
        return n;
    }
    static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b, const Token& op) {
        auto n = make(k, op);
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

/// The K(d)-part of p when p has D-degree <= 0.
inline std::optional<DeltaFraction> fraction_part(const OrePoly& p) {
    if (p.is_zero()) return DeltaFraction(p.tau());
    if (p.degree() != 0) return std::nullopt;
    return p.coeff(0);
}

inline OrePoly lower(const Node& n, const Rational& tau) {
    auto fail = [&n](const std::string& what) -> void { throw ParseError(what, n.line, n.column); };
    switch (n.kind) {
    case Node::number: return OrePoly::scalar(RationalFunction(Rational(n.value)), tau);
    case Node::var_t: return OrePoly::scalar(RationalFunction::t(), tau);
    case Node::var_d: return OrePoly(DeltaPoly::delta(tau));
    case Node::var_D: return OrePoly::derivative(tau, 1);
    case Node::neg: return -lower(*n.lhs, tau);
    case Node::add: return lower(*n.lhs, tau) + lower(*n.rhs, tau);
    case Node::sub: return lower(*n.lhs, tau) - lower(*n.rhs, tau);
    case Node::mul: return lower(*n.lhs, tau) * lower(*n.rhs, tau);
    case Node::div: {
        OrePoly num = lower(*n.lhs, tau), den = lower(*n.rhs, tau);
        auto f = fraction_part(den);
        if (!f || !f->is_polynomial() || !f->numerator().is_unit()) fail("division is only allowed by a nonzero function of t");
        return num * OrePoly::scalar(f->numerator().coeff(0).inverse(), tau);
    }
    case Node::pow: {
        OrePoly base = lower(*n.lhs, tau);
        long e = n.exponent;
        if (e < 0) {
            auto f = fraction_part(base);
            if (!f || f->is_zero()) fail("negative powers need a nonzero element free of D");
            base = OrePoly(f->inverse());
            e = -e;
        }
        OrePoly out = OrePoly::one(tau);
        for (long i = 0; i < e; ++i) out = out * base;
        return out;
    }
    }
    fail("malformed expression");
    return OrePoly(tau);
}

inline Rational lower_rational(const Node& n) {
    OrePoly p = lower(n, Rational(1));
    if (p.is_zero()) return 0;
    auto f = fraction_part(p);
    if (!f || !f->is_polynomial() || !f->numerator().is_unit() || !f->numerator().coeff(0).is_constant())
        throw ParseError("expected a rational constant", n.line, n.column);
    return f->numerator().coeff(0).constant_value();
}

inline OpMatrix lower_matrix(const std::vector<std::vector<NodePtr>>& rows, const Rational& tau) {
    OpMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size(), tau);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = lower(*rows[i][j], tau);
    return m;
}

}  // namespace detail

/// Single operator in the system grammar, e.g. "D + (t+3)*d^2". Entries may carry (..)^-1 delta factors.
inline OrePoly parse_operator(std::string_view text, const Rational& tau) {
    detail::Parser p(text);
    auto n = p.expr();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return detail::lower(*n, tau);
}

/// Element of K[d] in the system grammar.
inline DeltaPoly parse_delta_poly(std::string_view text, const Rational& tau) {
    OrePoly op = parse_operator(text, tau);
    auto f = detail::fraction_part(op);
    if (!f || !f->is_polynomial()) throw ParseError("expected a polynomial in d with coefficients in t", 1, 1);
    return f->numerator();
}

inline Rational parse_tau(std::string_view text) {
    detail::Parser p(text);
    auto n = p.expr();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return detail::lower_rational(*n);
}

/// Statements `tau = r; A = [[..]]; B = [[..]]; states = [..]; inputs = [..];` in any order.
/// tau defaults to 1 and the final semicolon is optional.
inline SystemFile parse_system(std::string_view text) {
    detail::Parser p(text);
    std::optional<std::vector<std::vector<detail::NodePtr>>> a_rows, b_rows;
    std::optional<detail::Token> a_tok, b_tok, states_tok, inputs_tok;
    SystemFile out;
    bool have_tau = false;
    while (!p.at_end()) {
        if (p.peek().kind != detail::Token::ident) p.fail("expected a statement name");
        detail::Token name = p.next();
        p.expect('=');
        auto dup = [&](bool seen) {
            if (seen) detail::Parser::fail_at("duplicate statement '" + name.text + "'", name);
        };
        if (name.text == "tau") {
            dup(have_tau);
            auto n = p.expr();
            out.tau = detail::lower_rational(*n);
            if (out.tau <= 0) detail::Parser::fail_at("tau must be positive", name);
            have_tau = true;
        } else if (name.text == "A") {
            dup(a_rows.has_value());
            a_tok = name;
            a_rows = p.matrix();
        } else if (name.text == "B") {
            dup(b_rows.has_value());
            b_tok = name;
            b_rows = p.matrix();
        } else if (name.text == "states") {
            dup(states_tok.has_value());
            states_tok = name;
            out.state_names = p.name_list();
        } else if (name.text == "inputs") {
            dup(inputs_tok.has_value());
            inputs_tok = name;
            out.input_names = p.name_list();
        } else {
            detail::Parser::fail_at("unknown statement '" + name.text + "'", name);
        }
        if (p.at_symbol(';')) p.next();
        else if (!p.at_end()) p.fail("expected ';'");
    }
    if (!a_rows) p.fail("missing statement 'A'");
    if (!b_rows) p.fail("missing statement 'B'");
    out.A = detail::lower_matrix(*a_rows, out.tau);
    out.B = detail::lower_matrix(*b_rows, out.tau);
    if (out.A.rows() != out.A.cols()) detail::Parser::fail_at("dimension mismatch: A must be square", *a_tok);
    if (out.B.rows() != out.A.rows()) detail::Parser::fail_at("dimension mismatch: B must have as many rows as A", *b_tok);
    if (states_tok && out.state_names.size() != out.A.rows())
        detail::Parser::fail_at("dimension mismatch: state count differs from A", *states_tok);
    if (inputs_tok && out.input_names.size() != out.B.cols())
        detail::Parser::fail_at("dimension mismatch: input count differs from B", *inputs_tok);
    return out;
}

inline std::string print_matrix(const OpMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + to_string(m(i, j));
        out += "]";
    }
    return out + "]";
}

/// Canonical text; parse_system(print_system(s)) == s.
inline std::string print_system(const SystemFile& s) {
    std::string out = "tau = " + s.tau.get_str() + ";\n";
    if (!s.state_names.empty() || !s.input_names.empty()) {
        auto list = [](const std::vector<std::string>& v) {
            std::string r = "[";
            for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ", " : "") + v[i];
            return r + "]";
        };
        if (!s.state_names.empty()) out += "states = " + list(s.state_names) + ";\n";
        if (!s.input_names.empty()) out += "inputs = " + list(s.input_names) + ";\n";
    }
    out += "A = " + print_matrix(s.A) + ";\n";
    out += "B = " + print_matrix(s.B) + ";\n";
    return out;
}

}  // namespace piflat
