#pragma once

#include "orbistar/deformation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace orbistar {

struct ExprParseError : std::runtime_error {
    std::size_t position;
    ExprParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

// One monomial of the surface language. In Dunkl mode the y1/y2 fields carry
// the w/wb exponents; the JSON field names stay the same either way.
struct ExprTerm {
    Scalar coeff = 0;
    int hbar_pow = 0;
    int u_pow = 0;
    int y1_pow = 0;
    int y2_pow = 0;
    int r_pow = 0;

    auto key() const { return std::tie(u_pow, hbar_pow, y1_pow, y2_pow, r_pow); }
    bool operator==(const ExprTerm& o) const { return key() == o.key() && coeff == o.coeff; }
};

struct ExprAst {
    std::vector<ExprTerm> terms;  // canonical: merged, nonzero, sorted by key()

    bool operator==(const ExprAst& o) const { return terms == o.terms; }
};

// Which symbols a given command accepts.
struct ExprSymbols {
    bool y1 = false, y2 = false, h = false, u = false, r = false, w = false, wb = false;

    static ExprSymbols orbifold() { return {true, true, true, true, true, false, false}; }
    static ExprSymbols ypoly() { return {true, true, true, true, false, false, false}; }
    static ExprSymbols dunkl() { return {false, false, false, true, true, true, true}; }
};

namespace detail {

inline ExprAst expr_canonical(std::vector<ExprTerm> raw) {
    std::map<std::tuple<int, int, int, int, int>, Scalar> acc;
    for (auto& t : raw) acc[t.key()] += t.coeff;
    ExprAst out;
    for (auto& [k, c] : acc) {
        if (c == 0) continue;
        auto [up, hp, y1p, y2p, rp] = k;
        out.terms.push_back({c, hp, up, y1p, y2p, rp});
    }
    return out;
}

inline ExprAst expr_add(const ExprAst& a, const ExprAst& b) {
    std::vector<ExprTerm> raw = a.terms;
    raw.insert(raw.end(), b.terms.begin(), b.terms.end());
    return expr_canonical(std::move(raw));
}

inline ExprAst expr_mul(const ExprAst& a, const ExprAst& b) {
    std::vector<ExprTerm> raw;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms)
            raw.push_back({x.coeff * y.coeff, x.hbar_pow + y.hbar_pow, x.u_pow + y.u_pow,
                           x.y1_pow + y.y1_pow, x.y2_pow + y.y2_pow, (x.r_pow + y.r_pow) % 2});
    return expr_canonical(std::move(raw));
}

inline ExprAst expr_negate(const ExprAst& a) {
    ExprAst out = a;
    for (auto& t : out.terms) t.coeff = -t.coeff;
    return out;
}

struct ExprLexer {
    enum class Kind { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    struct Token {
        Kind kind;
        std::string text;
        std::size_t pos;
    };

    explicit ExprLexer(const std::string& s) : src(s) { advance(); }

    const Token& peek() const { return tok; }
    Token take() {
        Token t = tok;
        advance();
        return t;
    }

  private:
    void advance() {
        while (at < src.size() && std::isspace(static_cast<unsigned char>(src[at]))) ++at;
        tok.pos = at;
        if (at == src.size()) {
            tok.kind = Kind::End;
            tok.text.clear();
            return;
        }
        char c = src[at];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = at;
            while (at < src.size() && std::isdigit(static_cast<unsigned char>(src[at]))) ++at;
            tok = {Kind::Integer, src.substr(b, at - b), b};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t b = at;
            while (at < src.size() &&
                   std::isalnum(static_cast<unsigned char>(src[at])))
                ++at;
            tok = {Kind::Ident, src.substr(b, at - b), b};
            return;
        }
        Kind k;
        switch (c) {
            case '+': k = Kind::Plus; break;
            case '-': k = Kind::Minus; break;
            case '*': k = Kind::Star; break;
            case '/': k = Kind::Slash; break;
            case '^': k = Kind::Caret; break;
            case '(': k = Kind::LParen; break;
            case ')': k = Kind::RParen; break;
            default:
                throw ExprParseError(at, std::string("unexpected character '") + c + "'");
        }
        tok = {k, src.substr(at, 1), at};
        ++at;
    }

    const std::string& src;
    std::size_t at = 0;
    Token tok;
};

struct ExprParser {
    ExprParser(const std::string& text, const ExprSymbols& symbols)
        : lex(text), allowed(symbols) {}

    ExprAst run() {
        ExprAst r = expr();
        if (lex.peek().kind != ExprLexer::Kind::End)
            throw ExprParseError(lex.peek().pos, "unexpected trailing input");
        return r;
    }

  private:
    using Kind = ExprLexer::Kind;

    ExprAst expr() {
        bool neg = false;
        if (lex.peek().kind == Kind::Plus || lex.peek().kind == Kind::Minus)
            neg = lex.take().kind == Kind::Minus;
        ExprAst acc = term();
        if (neg) acc = expr_negate(acc);
        while (lex.peek().kind == Kind::Plus || lex.peek().kind == Kind::Minus) {
            bool minus = lex.take().kind == Kind::Minus;
            ExprAst t = term();
            acc = expr_add(acc, minus ? expr_negate(t) : t);
        }
        return acc;
    }

    ExprAst term() {
        ExprAst acc = factor();
        while (lex.peek().kind == Kind::Star) {
            lex.take();
            acc = expr_mul(acc, factor());
        }
        return acc;
    }

    ExprAst factor() {
        auto t = lex.peek();
        if (t.kind == Kind::Integer) {
            lex.take();
            Scalar c(t.text);
            if (lex.peek().kind == Kind::Slash) {
                lex.take();
                auto d = lex.peek();
                if (d.kind != Kind::Integer)
                    throw ExprParseError(d.pos, "expected a positive integer denominator");
                lex.take();
                Scalar den(d.text);
                if (den == 0) throw ExprParseError(d.pos, "denominator must be positive");
                c /= den;
            }
            ExprTerm one;
            one.coeff = c;
            return expr_canonical({one});
        }
        if (t.kind == Kind::Ident) {
            lex.take();
            ExprTerm one;
            one.coeff = 1;
            int* slot = symbol_slot(one, t.text);
            if (!slot) throw ExprParseError(t.pos, "unknown symbol '" + t.text + "'");
            int e = 1;
            if (lex.peek().kind == Kind::Caret) {
                lex.take();
                bool neg = false;
                if (lex.peek().kind == Kind::Minus) {
                    lex.take();
                    neg = true;
                }
                auto n = lex.peek();
                if (n.kind != Kind::Integer)
                    throw ExprParseError(n.pos, "expected an integer exponent");
                lex.take();
                if (neg) throw ExprParseError(n.pos, "negative exponent");
                e = std::stoi(n.text);
            }
            *slot = e;
            one.r_pow %= 2;
            return expr_canonical({one});
        }
        if (t.kind == Kind::LParen) {
            lex.take();
            ExprAst inner = expr();
            if (lex.peek().kind != Kind::RParen)
                throw ExprParseError(lex.peek().pos, "expected ')'");
            lex.take();
            return inner;
        }
        throw ExprParseError(t.pos, "expected a number, symbol, or '('");
    }

    int* symbol_slot(ExprTerm& term, const std::string& name) {
        if (name == "y1" && allowed.y1) return &term.y1_pow;
        if (name == "y2" && allowed.y2) return &term.y2_pow;
        if (name == "h" && allowed.h) return &term.hbar_pow;
        if (name == "u" && allowed.u) return &term.u_pow;
        if (name == "R" && allowed.r) return &term.r_pow;
        if (name == "w" && allowed.w) return &term.y1_pow;
        if (name == "wb" && allowed.wb) return &term.y2_pow;
        return nullptr;
    }

    ExprLexer lex;
    ExprSymbols allowed;
};

}  // namespace detail

inline ExprAst parse_expression(const std::string& text, const ExprSymbols& symbols) {
    return detail::ExprParser(text, symbols).run();
}

// ----- AST <-> algebra ------------------------------------------------------

inline OrbifoldElement expr_to_element(const ExprAst& ast) {
    OrbifoldElement out;
    for (const auto& t : ast.terms) {
        ParamPoly c = ParamPoly::hbar(t.hbar_pow) * ParamPoly::u(t.u_pow);
        c = c.scaled(t.coeff);
        (t.r_pow ? out.part1 : out.part0).add_term(t.y1_pow, t.y2_pow, c);
    }
    return out;
}

inline YPoly expr_to_ypoly(const ExprAst& ast) {
    return expr_to_element(ast).part0;  // r_pow is always 0 under ExprSymbols::ypoly()
}

inline DunklElement expr_to_dunkl(const ExprAst& ast) {
    OrbifoldElement e = expr_to_element(ast);
    return {e.part0, e.part1};
}

inline ExprAst element_to_expr(const OrbifoldElement& e) {
    std::vector<ExprTerm> raw;
    auto emit = [&raw](const YPoly& p, int r) {
        for (const auto& [ye, c] : p.terms)
            for (const auto& [pe, s] : c.terms)
                raw.push_back({s, pe.first, pe.second, ye.first, ye.second, r});
    };
    emit(e.part0, 0);
    emit(e.part1, 1);
    return detail::expr_canonical(std::move(raw));
}

inline ExprAst ypoly_to_expr(const YPoly& p) { return element_to_expr(OrbifoldElement(p)); }

inline ExprAst dunkl_to_expr(const DunklElement& e) {
    return element_to_expr(OrbifoldElement(e.part0, e.part1));
}

// ----- printing --------------------------------------------------------------

// Canonical text: terms in key order, factors printed h, u, y1, y2, R (the
// Dunkl front end renames the middle two to w, wb). parse(print(x)) == x.
inline std::string print_expression(const ExprAst& ast, bool dunkl_names = false) {
    if (ast.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ast.terms.size(); ++i) {
        const ExprTerm& t = ast.terms[i];
        Scalar mag = t.coeff < 0 ? Scalar(-t.coeff) : t.coeff;
        if (i == 0) {
            if (t.coeff < 0) out += "-";
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        std::vector<std::string> factors;
        auto put = [&factors](const char* sym, int e) {
            if (e == 1)
                factors.push_back(sym);
            else if (e > 1)
                factors.push_back(std::string(sym) + "^" + std::to_string(e));
        };
        put("h", t.hbar_pow);
        put("u", t.u_pow);
        put(dunkl_names ? "w" : "y1", t.y1_pow);
        put(dunkl_names ? "wb" : "y2", t.y2_pow);
        put("R", t.r_pow);
        if (factors.empty()) {
            out += scalar_text(mag);
        } else {
            std::string body;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j) body += "*";
                body += factors[j];
            }
            if (mag != 1) out += scalar_text(mag) + "*";
            out += body;
        }
    }
    return out;
}

inline nlohmann::ordered_json expression_json(const ExprAst& ast) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : ast.terms) {
        nlohmann::ordered_json obj;
        obj["coeff"] = scalar_text(t.coeff);
        obj["hbar_pow"] = t.hbar_pow;
        obj["u_pow"] = t.u_pow;
        obj["y1_pow"] = t.y1_pow;
        obj["y2_pow"] = t.y2_pow;
        obj["r_pow"] = t.r_pow;
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline std::string expsum_text(const ExpSum& s) {
    if (s.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        if (i) out += " + ";
        out += "(" + scalar_text(s.terms[i].first) + ")e^{" + scalar_text(s.terms[i].second) +
               "}";
    }
    return out;
}

inline nlohmann::ordered_json expsum_json(const ExpSum& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [w, node] : s.terms) {
        nlohmann::ordered_json obj;
        obj["weight"] = scalar_text(w);
        obj["node"] = scalar_text(node);
        arr.push_back(std::move(obj));
    }
    return arr;
}

}  // namespace orbistar
