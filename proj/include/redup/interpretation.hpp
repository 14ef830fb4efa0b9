#ifndef REDUP_INTERPRETATION_HPP
#define REDUP_INTERPRETATION_HPP

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "redup/fsa.hpp"
#include "redup/language.hpp"

namespace redup {

struct ProductStats {
    std::size_t product_states = 0; ///< pairs discovered before trimming
};

/// Product construction under open interpretation: arcs pair up when their
/// symbol sets intersect; the result label is the intersection and its
/// producer bit is the OR of the operands'. The result is trimmed.
inline Fsa intersect_open(const Fsa& a, const Fsa& b, ProductStats* stats = nullptr) {
    detail::require_same_alphabet(a, b);
    std::unordered_map<std::uint64_t, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    Fsa out(a.alphabet_ptr(), 1);
    auto key = [](StateId x, StateId y) { return (std::uint64_t{x} << 32) | y; };
    index[key(a.start(), b.start())] = 0;
    pairs.emplace_back(a.start(), b.start());
    out.set_final(0, a.is_final(a.start()) && b.is_final(b.start()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        for (const auto& x : a.arcs(p))
            for (const auto& y : b.arcs(q)) {
                SymbolSet common = x.label.symbols & y.label.symbols;
                if (common.empty()) continue;
                auto [it, inserted] = index.try_emplace(key(x.target, y.target), static_cast<StateId>(pairs.size()));
                if (inserted) {
                    pairs.emplace_back(x.target, y.target);
                    out.add_state(a.is_final(x.target) && b.is_final(y.target));
                }
                out.add_arc(static_cast<StateId>(i), it->second, common, x.label.producer || y.label.producer);
            }
    }
    if (stats) stats->product_states += pairs.size();
    out.canonicalize_arcs();
    return trim(out);
}

/// Closed interpretation: drops every consumer arc, then trims.
inline Fsa close(const Fsa& a) {
    Fsa out(a.alphabet_ptr(), a.num_states());
    out.set_start(a.start());
    for (StateId q = 0; q < a.num_states(); ++q) {
        out.set_final(q, a.is_final(q));
        for (const auto& arc : a.arcs(q))
            if (arc.label.producer) out.add_arc(q, arc.target, arc.label);
    }
    return trim(out);
}

/// Consumer chain over underspecified segments with consumer {repeat, skip}
/// self loops at every state, ready to be intersected with a grammar.
inline Fsa prepare_parse_input(AlphabetPtr alphabet, const std::vector<std::size_t>& tokens) {
    Fsa f(alphabet, tokens.size() + 1);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] >= alphabet->segments().size())
            throw InventoryError("segment index " + std::to_string(tokens[i]) + " outside inventory");
        f.add_arc(static_cast<StateId>(i), static_cast<StateId>(i + 1), alphabet->variants(tokens[i]), false);
    }
    for (StateId q = 0; q <= tokens.size(); ++q) f.add_arc(q, q, alphabet->technical(), false);
    f.set_final(static_cast<StateId>(tokens.size()));
    return f;
}

inline Fsa prepare_parse_input(AlphabetPtr alphabet, std::string_view surface) {
    auto tokens = alphabet->tokenize(surface);
    return prepare_parse_input(std::move(alphabet), tokens);
}

struct ParseResult {
    bool accepted;
    Fsa analysis; ///< closed intersection of grammar and input
};

/// Intersects the prepared input with the grammar, closes, and checks
/// nonemptiness.
inline ParseResult parse(const Fsa& grammar, std::string_view surface) {
    Fsa input = prepare_parse_input(grammar.alphabet_ptr(), surface);
    Fsa analysis = close(intersect_open(grammar, input));
    bool accepted = !is_empty(analysis);
    return {accepted, std::move(analysis)};
}

} // namespace redup

#endif // REDUP_INTERPRETATION_HPP
