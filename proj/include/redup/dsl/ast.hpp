#ifndef REDUP_DSL_AST_HPP
#define REDUP_DSL_AST_HPP

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "redup/alphabet.hpp"

namespace redup::dsl {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Regular-expression syntax tree. Symbol-set expressions (names combined
/// with `&` and `~`) share node kinds with automaton expressions; the
/// compiler decides which interpretation applies.
struct Node {
    enum class Kind {
        empty_string, ///< []
        name,         ///< class name, segment token, macro or parameter
        string,       ///< "tokens"
        concat,       ///< [E1, ..., En]
        union_,       ///< {E1, ..., En}
        star,         ///< E*
        optional,     ///< E^
        intersect,    ///< E1 & E2
        complement,   ///< ~ S
        rule,         ///< X --> (Y / Z)
        producer,     ///< producer(E)
        consumer,     ///< consumer(E)
        call,         ///< Head(arg1, ..., argN): macro or builtin
    };

    Kind kind;
    std::string text; ///< name, callee or string literal
    std::vector<NodePtr> children;
    std::size_t line = 0;
};

inline NodePtr make_node(Node::Kind kind, std::string text, std::vector<NodePtr> children, std::size_t line) {
    return std::make_shared<const Node>(Node{kind, std::move(text), std::move(children), line});
}

struct Macro {
    std::string name;
    std::vector<std::string> params;
    NodePtr body;
    std::size_t line = 0;
};

using MacroTable = std::map<std::string, Macro>;

/// A parsed grammar file.
struct Grammar {
    AlphabetPtr alphabet;
    MacroTable macros;
    std::vector<std::string> lexicon;      ///< entry names that take the derivation
    std::optional<std::string> derivation; ///< one-parameter macro applied to lexicon entries
};

/// Builtin operators callable with function syntax, with their arity.
inline const std::map<std::string, std::size_t>& builtins() {
    static const std::map<std::string, std::size_t> table{
        {"add_repeats", 1},
        {"add_skips", 1},
        {"add_self_loops", 1},
        {"stringToAutomaton", 1},
        {"ignore_technical_symbols_in", 1},
        {"not_contains", 1},
        {"closed_interpretation", 1},
        {"minimize", 1},
    };
    return table;
}

/// Renders an expression back to grammar syntax.
inline std::string to_source(const NodePtr& n) {
    auto list = [&](const char* open, const char* close) {
        std::string s = open;
        for (std::size_t i = 0; i < n->children.size(); ++i) {
            if (i) s += ", ";
            s += to_source(n->children[i]);
        }
        return s + close;
    };
    switch (n->kind) {
        case Node::Kind::empty_string: return "[]";
        case Node::Kind::name: {
            bool plain = !n->text.empty();
            for (char c : n->text)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) plain = false;
            return plain ? n->text : "'" + n->text + "'";
        }
        case Node::Kind::string: return "\"" + n->text + "\"";
        case Node::Kind::concat: return list("[", "]");
        case Node::Kind::union_: return list("{", "}");
        case Node::Kind::star: return "(" + to_source(n->children[0]) + ")*";
        case Node::Kind::optional: return "(" + to_source(n->children[0]) + ")^";
        case Node::Kind::intersect: return "(" + to_source(n->children[0]) + " & " + to_source(n->children[1]) + ")";
        case Node::Kind::complement: return "~(" + to_source(n->children[0]) + ")";
        case Node::Kind::rule:
            return "(" + to_source(n->children[0]) + " --> (" + to_source(n->children[1]) + " / " +
                   to_source(n->children[2]) + "))";
        case Node::Kind::producer: return "producer(" + to_source(n->children[0]) + ")";
        case Node::Kind::consumer: return "consumer(" + to_source(n->children[0]) + ")";
        case Node::Kind::call: return n->text + list("(", ")");
    }
    return "?";
}

} // namespace redup::dsl

#endif // REDUP_DSL_AST_HPP
