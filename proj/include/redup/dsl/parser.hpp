#ifndef REDUP_DSL_PARSER_HPP
#define REDUP_DSL_PARSER_HPP

#include <cctype>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "redup/dsl/ast.hpp"
#include "redup/errors.hpp"

namespace redup::dsl {

// Grammar file syntax
//
//   % comment to end of line
//   vowels: a i o.                 inventory declarations
//   consonants: t h s.
//   class low: a.                  named char class
//   lexicon: tahaspin aklatlin.    entries the derivation applies to
//   derivation: wordform.          one-parameter macro
//   name := Expr.                  macro definition
//   name(P1, ..., Pn) := Expr.     parametrized macro
//
// Expressions: []  [E1,...,En]  {E1,...,En}  E*  E^  E1 & E2
//              X --> (Y / Z)  ~S  producer(E)  consumer(E)  "string"
//              'quoted name'  Head(args)

namespace detail {

struct Token {
    enum class Kind { ident, quoted, string, punct, end };
    Kind kind;
    std::string text;
    std::size_t line;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1;
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '%') {
            while (i < src.size() && src[i] != '\n') ++i;
        } else if (is_ident(c)) {
            std::size_t j = i;
            while (j < src.size() && is_ident(src[j])) ++j;
            out.push_back({Token::Kind::ident, std::string(src.substr(i, j - i)), line});
            i = j;
        } else if (c == '\'' || c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != c && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != c) throw ParseError(line, "unterminated quoted text");
            out.push_back({c == '"' ? Token::Kind::string : Token::Kind::quoted,
                           std::string(src.substr(i + 1, j - i - 1)), line});
            i = j + 1;
        } else if (src.substr(i, 3) == "-->") {
            out.push_back({Token::Kind::punct, "-->", line});
            i += 3;
        } else if (src.substr(i, 2) == ":=") {
            out.push_back({Token::Kind::punct, ":=", line});
            i += 2;
        } else if (std::string_view("[]{}(),.*^&~/:").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::punct, std::string(1, c), line});
            ++i;
        } else {
            throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::Kind::end, "", line});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Token::Kind::end; }

    bool is_punct(std::string_view p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::punct && peek(ahead).text == p;
    }

    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect(std::string_view p) {
        if (!is_punct(p))
            throw ParseError(peek().line, "expected '" + std::string(p) + "' but found " + describe(peek()));
        advance();
    }

    std::string expect_ident() {
        if (peek().kind != Token::Kind::ident && peek().kind != Token::Kind::quoted)
            throw ParseError(peek().line, "expected a name but found " + describe(peek()));
        return advance().text;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Token::Kind::end: return "end of input";
            case Token::Kind::string: return "string \"" + t.text + "\"";
            default: return "'" + t.text + "'";
        }
    }

    NodePtr expression() {
        NodePtr lhs = rule_expr();
        while (is_punct("&")) {
            std::size_t line = advance().line;
            NodePtr rhs = rule_expr();
            lhs = make_node(Node::Kind::intersect, "", {lhs, rhs}, line);
        }
        return lhs;
    }

private:
    NodePtr rule_expr() {
        NodePtr x = postfix();
        if (!is_punct("-->")) return x;
        std::size_t line = advance().line;
        expect("(");
        NodePtr y = expression();
        expect("/");
        NodePtr z = expression();
        expect(")");
        return make_node(Node::Kind::rule, "", {x, y, z}, line);
    }

    NodePtr postfix() {
        NodePtr e = unary();
        while (is_punct("*") || is_punct("^")) {
            const Token& t = advance();
            e = make_node(t.text == "*" ? Node::Kind::star : Node::Kind::optional, "", {e}, t.line);
        }
        return e;
    }

    NodePtr unary() {
        if (is_punct("~")) {
            std::size_t line = advance().line;
            return make_node(Node::Kind::complement, "", {unary()}, line);
        }
        return primary();
    }

    std::vector<NodePtr> list(std::string_view close) {
        std::vector<NodePtr> items;
        if (is_punct(close)) {
            advance();
            return items;
        }
        while (true) {
            items.push_back(expression());
            if (is_punct(",")) {
                advance();
                continue;
            }
            expect(close);
            return items;
        }
    }

    NodePtr primary() {
        const Token& t = peek();
        std::size_t line = t.line;
        if (is_punct("[")) {
            advance();
            auto items = list("]");
            if (items.empty()) return make_node(Node::Kind::empty_string, "", {}, line);
            return make_node(Node::Kind::concat, "", std::move(items), line);
        }
        if (is_punct("{")) {
            advance();
            auto items = list("}");
            if (items.empty()) throw ParseError(line, "empty union '{}'");
            return make_node(Node::Kind::union_, "", std::move(items), line);
        }
        if (is_punct("(")) {
            advance();
            NodePtr e = expression();
            expect(")");
            return e;
        }
        if (t.kind == Token::Kind::string) {
            advance();
            return make_node(Node::Kind::string, t.text, {}, line);
        }
        if (t.kind == Token::Kind::quoted) {
            advance();
            return make_node(Node::Kind::name, t.text, {}, line);
        }
        if (t.kind == Token::Kind::ident) {
            std::string name = advance().text;
            if (!is_punct("(")) return make_node(Node::Kind::name, name, {}, line);
            advance();
            auto args = list(")");
            if (name == "producer" || name == "consumer") {
                if (args.size() != 1) throw ParseError(line, name + " takes exactly one argument");
                return make_node(name == "producer" ? Node::Kind::producer : Node::Kind::consumer, "", args, line);
            }
            return make_node(Node::Kind::call, name, std::move(args), line);
        }
        throw ParseError(line, "unexpected " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

/// Checks names, arities, string literals and macro recursion.
class Validator {
public:
    explicit Validator(const Grammar& g) : g_(g) {}

    void check_body(const NodePtr& n, const std::set<std::string>& params, std::set<std::string>& refs) const {
        switch (n->kind) {
            case Node::Kind::name:
                if (params.count(n->text)) return;
                if (auto it = g_.macros.find(n->text); it != g_.macros.end()) {
                    if (!it->second.params.empty())
                        throw ParseError(n->line, "macro '" + n->text + "' expects " +
                                                      std::to_string(it->second.params.size()) + " argument(s)");
                    refs.insert(n->text);
                    return;
                }
                if (g_.alphabet->named_set(n->text)) return;
                throw ParseError(n->line, "unknown name '" + n->text + "'");
            case Node::Kind::string:
                try {
                    (void)g_.alphabet->tokenize(n->text);
                } catch (const InventoryError& e) {
                    throw ParseError(n->line, e.what());
                }
                return;
            case Node::Kind::call: {
                if (auto it = g_.macros.find(n->text); it != g_.macros.end()) {
                    if (it->second.params.size() != n->children.size())
                        throw ParseError(n->line, "macro '" + n->text + "' expects " +
                                                      std::to_string(it->second.params.size()) + " argument(s), got " +
                                                      std::to_string(n->children.size()));
                    refs.insert(n->text);
                } else if (auto b = builtins().find(n->text); b != builtins().end()) {
                    if (b->second != n->children.size())
                        throw ParseError(n->line, "builtin '" + n->text + "' expects " + std::to_string(b->second) +
                                                      " argument(s)");
                } else {
                    throw ParseError(n->line, "unknown macro '" + n->text + "'");
                }
                break;
            }
            default: break;
        }
        for (const auto& c : n->children) check_body(c, params, refs);
    }

    void run() const {
        std::map<std::string, std::set<std::string>> graph;
        for (const auto& [name, m] : g_.macros) {
            std::set<std::string> params(m.params.begin(), m.params.end());
            check_body(m.body, params, graph[name]);
        }
        // recursion check: depth-first search with colours
        std::map<std::string, int> colour;
        std::function<void(const std::string&)> dfs = [&](const std::string& name) {
            colour[name] = 1;
            for (const auto& callee : graph[name]) {
                if (colour[callee] == 1)
                    throw ParseError(g_.macros.at(callee).line, "recursive macro definition involving '" + callee + "'");
                if (colour[callee] == 0) dfs(callee);
            }
            colour[name] = 2;
        };
        for (const auto& [name, m] : g_.macros)
            if (colour[name] == 0) dfs(name);

        for (const auto& entry : g_.lexicon) {
            auto it = g_.macros.find(entry);
            if (it == g_.macros.end() || !it->second.params.empty())
                throw ParseError(0, "lexicon entry '" + entry + "' is not a parameterless macro");
        }
        if (g_.derivation) {
            auto it = g_.macros.find(*g_.derivation);
            if (it == g_.macros.end() || it->second.params.size() != 1)
                throw ParseError(0, "derivation '" + *g_.derivation + "' is not a one-parameter macro");
        }
    }

private:
    const Grammar& g_;
};

} // namespace detail

/// Parses a grammar file into its inventory and macro table.
inline Grammar parse_source(std::string_view text) {
    detail::Parser p(detail::lex(text));
    Grammar g;
    Alphabet::Builder inventory;
    std::size_t declared_segments = 0;
    while (!p.at_end()) {
        std::size_t line = p.peek().line;
        std::string head = p.expect_ident();
        std::vector<std::string> items;
        if (head == "class" && p.peek().kind == detail::Token::Kind::ident && p.is_punct(":", 1))
            items.push_back(p.expect_ident());
        if (p.is_punct(":")) {
            p.advance();
            while (!p.is_punct(".")) {
                if (p.at_end()) throw ParseError(line, "directive '" + head + "' is not terminated by '.'");
                items.push_back(p.expect_ident());
            }
            p.advance();
            if (head == "vowels" || head == "consonants") {
                for (auto& t : items)
                    inventory.segment(t, head == "vowels" ? SegmentClass::vowel : SegmentClass::consonant);
                declared_segments += items.size();
            } else if (head == "class") {
                if (items.empty()) throw ParseError(line, "class directive needs a name");
                std::string name = items.front();
                items.erase(items.begin());
                inventory.char_class(name, items);
            } else if (head == "lexicon") {
                g.lexicon.insert(g.lexicon.end(), items.begin(), items.end());
            } else if (head == "derivation") {
                if (items.size() != 1) throw ParseError(line, "derivation names exactly one macro");
                g.derivation = items.front();
            } else {
                throw ParseError(line, "unknown directive '" + head + "'");
            }
            continue;
        }
        Macro m;
        m.name = head;
        m.line = line;
        if (p.is_punct("(")) {
            p.advance();
            while (true) {
                m.params.push_back(p.expect_ident());
                if (p.is_punct(",")) {
                    p.advance();
                    continue;
                }
                p.expect(")");
                break;
            }
        }
        p.expect(":=");
        m.body = p.expression();
        p.expect(".");
        if (builtins().count(m.name) || m.name == "producer" || m.name == "consumer")
            throw ParseError(line, "'" + m.name + "' is a builtin and cannot be redefined");
        if (!g.macros.emplace(m.name, m).second) throw ParseError(line, "macro '" + m.name + "' defined twice");
    }
    if (declared_segments == 0) throw ParseError(1, "grammar declares no segment inventory");
    try {
        g.alphabet = inventory.build();
    } catch (const InventoryError& e) {
        throw ParseError(1, e.what());
    }
    detail::Validator(g).run();
    return g;
}

/// Parses a standalone expression (e.g. a command-line entry point) and
/// validates it against `g`.
inline NodePtr parse_expression(const Grammar& g, std::string_view text) {
    detail::Parser p(detail::lex(text));
    NodePtr e = p.expression();
    if (!p.at_end()) throw ParseError(p.peek().line, "trailing input after expression");
    std::set<std::string> refs;
    detail::Validator(g).check_body(e, {}, refs);
    return e;
}

} // namespace redup::dsl

#endif // REDUP_DSL_PARSER_HPP
