#ifndef REDUP_DSL_COMPILER_HPP
#define REDUP_DSL_COMPILER_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "redup/dsl/ast.hpp"
#include "redup/dsl/parser.hpp"
#include "redup/enrichment.hpp"
#include "redup/interpretation.hpp"
#include "redup/lazy.hpp"
#include "redup/normalize.hpp"
#include "redup/rules.hpp"

namespace redup::dsl {

enum class Engine { eager, lazy };

/// A symbol set that has not yet been placed on an arc, with the polarity
/// it will get.
struct SetValue {
    SymbolSet symbols;
    bool producer = false;
};

using Value = std::variant<SetValue, Fsa, LazyPtr>;

/// Compiles expressions of one grammar. Parameters are passed by name: an
/// argument is compiled where the parameter is used, under the polarity in
/// force there, so a call behaves exactly like its textual expansion.
class Compiler {
public:
    explicit Compiler(const Grammar& g, Engine engine = Engine::eager) : g_(g), engine_(engine) {}

    /// Compiles to a stored automaton; lazy results are materialized and
    /// trimmed.
    Fsa compile(const NodePtr& n, bool producer = false) { return to_fsa(eval(n, nullptr, producer)); }

    Value evaluate(const NodePtr& n, bool producer = false) { return eval(n, nullptr, producer); }

    Fsa compile_macro(const std::string& name, bool producer = false) {
        return compile(make_node(Node::Kind::name, name, {}, 0), producer);
    }

    /// Compiles `derivation(name)` for lexicon entries (unless `bare`),
    /// the plain macro otherwise. An empty name selects the union of the
    /// whole lexicon.
    Fsa compile_entry(const std::string& name, bool bare = false) { return to_fsa(entry_value(name, bare)); }

    Value entry_value(const std::string& name, bool bare = false) {
        return eval(entry_node(g_, name, bare), nullptr, false);
    }

    static NodePtr entry_node(const Grammar& g, const std::string& name, bool bare) {
        auto is_lexical = std::find(g.lexicon.begin(), g.lexicon.end(), name) != g.lexicon.end();
        if (name.empty()) {
            if (g.lexicon.empty()) throw CompileError("grammar has no lexicon");
            std::vector<NodePtr> entries;
            for (const auto& e : g.lexicon) entries.push_back(make_node(Node::Kind::name, e, {}, 0));
            NodePtr all = make_node(Node::Kind::union_, "", std::move(entries), 0);
            if (bare || !g.derivation) return all;
            return make_node(Node::Kind::call, *g.derivation, {all}, 0);
        }
        if (g.macros.count(name)) {
            NodePtr n = make_node(Node::Kind::name, name, {}, 0);
            if (is_lexical && !bare && g.derivation) return make_node(Node::Kind::call, *g.derivation, {n}, 0);
            if (!g.macros.at(name).params.empty())
                throw CompileError("entry point '" + name + "' needs arguments");
            return n;
        }
        try {
            return parse_expression(g, name);
        } catch (const ParseError& e) {
            throw CompileError("unknown entry point '" + name + "': " + e.what());
        }
    }

    /// Stored automaton for a compiled value.
    Fsa to_automaton(const Value& v) { return to_fsa(v); }

    Engine engine() const { return engine_; }

private:
    struct Binding;
    using Env = std::shared_ptr<const std::map<std::string, Binding>>;
    struct Binding {
        NodePtr arg;
        Env env;
    };

    AlphabetPtr alpha() const { return g_.alphabet; }

    Fsa to_fsa(const Value& v) {
        if (auto s = std::get_if<SetValue>(&v)) return symbol_arc(alpha(), s->symbols, s->producer);
        if (auto f = std::get_if<Fsa>(&v)) return *f;
        return trim(materialize(std::get<LazyPtr>(v)));
    }

    static SymbolSet as_set(const Value& v, const Node& where, const char* role) {
        if (auto s = std::get_if<SetValue>(&v)) return s->symbols;
        throw CompileError("line " + std::to_string(where.line) + ": " + role + " must be a symbol set");
    }

    bool lazy() const { return engine_ == Engine::lazy; }

    // Resolves a parameter reference to the node it stands for.
    std::pair<NodePtr, Env> resolve(NodePtr n, Env env) const {
        while (n->kind == Node::Kind::name && env) {
            auto it = env->find(n->text);
            if (it == env->end()) break;
            n = it->second.arg;
            env = it->second.env;
        }
        return {n, env};
    }

    Value eval(const NodePtr& n, Env env, bool pc) {
        switch (n->kind) {
            case Node::Kind::empty_string: return empty_string(alpha());
            case Node::Kind::name: return eval_name(n, env, pc);
            case Node::Kind::string: return with_polarity(build_from_string(alpha(), n->text), pc);
            case Node::Kind::concat: {
                std::vector<Fsa> parts;
                for (const auto& c : n->children) parts.push_back(to_fsa(eval(c, env, pc)));
                return concat(parts, alpha());
            }
            case Node::Kind::union_: {
                std::vector<Value> vs;
                for (const auto& c : n->children) vs.push_back(eval(c, env, pc));
                bool all_sets = std::all_of(vs.begin(), vs.end(), [&](const Value& v) {
                    auto s = std::get_if<SetValue>(&v);
                    return s && s->producer == std::get<SetValue>(vs.front()).producer;
                });
                if (all_sets) {
                    SetValue u{{}, std::get<SetValue>(vs.front()).producer};
                    for (const auto& v : vs) u.symbols |= std::get<SetValue>(v).symbols;
                    return u;
                }
                std::vector<Fsa> parts;
                for (const auto& v : vs) parts.push_back(to_fsa(v));
                return unite(parts);
            }
            case Node::Kind::star: return star(to_fsa(eval(n->children[0], env, pc)));
            case Node::Kind::optional: return optional(to_fsa(eval(n->children[0], env, pc)));
            case Node::Kind::intersect: {
                Value a = eval(n->children[0], env, pc);
                Value b = eval(n->children[1], env, pc);
                auto sa = std::get_if<SetValue>(&a);
                auto sb = std::get_if<SetValue>(&b);
                if (sa && sb) return SetValue{sa->symbols & sb->symbols, sa->producer || sb->producer};
                if (std::holds_alternative<LazyPtr>(a) || std::holds_alternative<LazyPtr>(b))
                    return lazy_intersect(as_lazy(a), as_lazy(b));
                return intersect_open(to_fsa(a), to_fsa(b), &stats_);
            }
            case Node::Kind::complement: {
                Value v = eval(n->children[0], env, pc);
                auto s = std::get_if<SetValue>(&v);
                if (!s) throw CompileError("line " + std::to_string(n->line) + ": '~' applies to symbol sets only");
                return SetValue{complement_symbols(*alpha(), s->symbols), s->producer};
            }
            case Node::Kind::rule: {
                SymbolSet x = as_set(eval(n->children[0], env, pc), *n, "rule left-hand side");
                SymbolSet y = as_set(eval(n->children[1], env, pc), *n, "rule right-hand side");
                SymbolSet z = as_set(eval(n->children[2], env, pc), *n, "rule context");
                // The target is read relative to the focus: X --> (Y / Z)
                // rewrites X to X & Y.
                return compile_rule(alpha(), x, x & y, z, pc);
            }
            case Node::Kind::producer: return eval(n->children[0], env, true);
            case Node::Kind::consumer: return eval(n->children[0], env, false);
            case Node::Kind::call: return eval_call(n, env, pc);
        }
        throw CompileError("unhandled expression");
    }

    LazyPtr as_lazy(const Value& v) {
        if (auto l = std::get_if<LazyPtr>(&v)) return *l;
        return lazy_wrap(to_fsa(v));
    }

    Value eval_name(const NodePtr& n, Env env, bool pc) {
        if (env) {
            if (auto it = env->find(n->text); it != env->end())
                return eval(it->second.arg, it->second.env, pc);
        }
        if (auto it = g_.macros.find(n->text); it != g_.macros.end()) {
            if (!it->second.params.empty())
                throw CompileError("line " + std::to_string(n->line) + ": macro '" + n->text + "' needs arguments");
            auto key = std::make_pair(n->text, pc);
            if (auto m = memo_.find(key); m != memo_.end()) return m->second;
            Value v = eval(it->second.body, nullptr, pc);
            memo_.emplace(key, v);
            return v;
        }
        if (auto s = g_.alphabet->named_set(n->text)) return SetValue{*s, pc};
        throw CompileError("line " + std::to_string(n->line) + ": unknown name '" + n->text + "'");
    }

    Value eval_call(const NodePtr& n, Env env, bool pc) {
        if (auto it = g_.macros.find(n->text); it != g_.macros.end()) {
            const Macro& m = it->second;
            if (m.params.size() != n->children.size())
                throw CompileError("line " + std::to_string(n->line) + ": macro '" + m.name + "' expects " +
                                   std::to_string(m.params.size()) + " argument(s)");
            auto frame = std::make_shared<std::map<std::string, Binding>>();
            for (std::size_t i = 0; i < m.params.size(); ++i) (*frame)[m.params[i]] = Binding{n->children[i], env};
            return eval(m.body, frame, pc);
        }
        const std::string& f = n->text;
        const NodePtr& arg = n->children.at(0);
        if (f == "stringToAutomaton") {
            auto [target, target_env] = resolve(arg, env);
            if (target->kind == Node::Kind::string) return build_from_string(alpha(), target->text);
            return with_polarity(to_fsa(eval(target, target_env, true)), true);
        }
        Value v = eval(arg, env, pc);
        if (f == "add_self_loops" || f == "add_skips" || f == "add_repeats") {
            EnrichKind kind = f == "add_self_loops" ? EnrichKind::self_loops
                              : f == "add_skips"    ? EnrichKind::skips
                                                    : EnrichKind::repeats;
            if (lazy()) return lazy_enrich(as_lazy(v), kind);
            Fsa a = to_fsa(v);
            switch (kind) {
                case EnrichKind::self_loops: return add_self_loops(a);
                case EnrichKind::skips: return add_skips(a);
                case EnrichKind::repeats: return add_repeats(a);
            }
        }
        if (f == "closed_interpretation") {
            if (auto l = std::get_if<LazyPtr>(&v)) return lazy_close(*l);
            return close(to_fsa(v));
        }
        if (f == "ignore_technical_symbols_in") return ignore_technicals(to_fsa(v));
        if (f == "not_contains") return not_contains(to_fsa(v), pc);
        if (f == "minimize") return minimize(to_fsa(v));
        throw CompileError("line " + std::to_string(n->line) + ": unknown macro '" + f + "'");
    }

public:
    /// Product states created by eager intersections so far.
    const ProductStats& product_stats() const { return stats_; }

private:
    const Grammar& g_;
    Engine engine_;
    std::map<std::pair<std::string, bool>, Value> memo_;
    ProductStats stats_;
};

/// Reads and parses a grammar file.
inline Grammar load_grammar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open grammar file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_source(text.str());
}

} // namespace redup::dsl

#endif // REDUP_DSL_COMPILER_HPP
