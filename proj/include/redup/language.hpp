#ifndef REDUP_LANGUAGE_HPP
#define REDUP_LANGUAGE_HPP

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "redup/fsa.hpp"
#include "redup/normalize.hpp"

namespace redup {

/// One letter of an accepted string: a concrete symbol and the polarity of
/// the arc that read it.
struct Letter {
    SymbolId symbol;
    bool producer;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// True iff no final state is reachable from start.
inline bool is_empty(const Fsa& a) {
    auto seen = detail::forward_reachable(a);
    for (StateId q = 0; q < a.num_states(); ++q)
        if (seen[q] && a.is_final(q)) return false;
    return true;
}

namespace detail {

template <typename Match>
bool simulate(const Fsa& a, std::size_t length, Match&& match) {
    std::vector<char> current(a.num_states(), 0), next(a.num_states(), 0);
    current[a.start()] = 1;
    for (std::size_t i = 0; i < length; ++i) {
        std::fill(next.begin(), next.end(), 0);
        bool any = false;
        for (StateId q = 0; q < a.num_states(); ++q) {
            if (!current[q]) continue;
            for (const auto& arc : a.arcs(q))
                if (match(i, arc.label)) {
                    next[arc.target] = 1;
                    any = true;
                }
        }
        if (!any) return false;
        current.swap(next);
    }
    for (StateId q = 0; q < a.num_states(); ++q)
        if (current[q] && a.is_final(q)) return true;
    return false;
}

} // namespace detail

/// Membership of a symbol string, ignoring producer bits.
inline bool accepts(const Fsa& a, const std::vector<SymbolId>& symbols) {
    return detail::simulate(a, symbols.size(),
                            [&](std::size_t i, const Label& l) { return l.symbols.contains(symbols[i]); });
}

/// Membership of a (symbol, polarity) string.
inline bool accepts(const Fsa& a, const Word& word) {
    return detail::simulate(a, word.size(), [&](std::size_t i, const Label& l) {
        return l.producer == word[i].producer && l.symbols.contains(word[i].symbol);
    });
}

/// All accepted words of length <= max_len. Each arc contributes one letter
/// per member of its label. Throws EnumerationLimit once more than `cap`
/// distinct words have been found.
inline std::set<Word> enumerate_language(const Fsa& a, std::size_t max_len, std::size_t cap = 100000) {
    std::set<Word> out;
    Word prefix;
    auto visit = [&](auto&& self, StateId q) -> void {
        if (a.is_final(q)) {
            out.insert(prefix);
            if (out.size() > cap) throw EnumerationLimit(cap);
        }
        if (prefix.size() == max_len) return;
        for (const auto& arc : a.arcs(q)) {
            arc.label.symbols.for_each([&](SymbolId s) {
                prefix.push_back({s, arc.label.producer});
                self(self, arc.target);
                prefix.pop_back();
            });
        }
    };
    visit(visit, a.start());
    return out;
}

/// Drops repeat/skip symbols and erases mora/sync/pos attributes; returns
/// the segment (inventory) indices in order.
inline std::vector<std::size_t> project_surface(const Alphabet& alphabet, const std::vector<SymbolId>& symbols) {
    std::vector<std::size_t> out;
    for (SymbolId s : symbols) {
        if (alphabet.is_technical(s)) continue;
        out.push_back(alphabet.symbol(s).segment);
    }
    return out;
}

inline std::string spell(const Alphabet& alphabet, const std::vector<std::size_t>& segments) {
    std::string out;
    for (auto s : segments) out += alphabet.segments()[s].token;
    return out;
}

/// Surface projection of an automaton: technical symbols become epsilon,
/// every surviving label is widened to all attribute variants of the
/// segments it mentions, and polarity is dropped (all arcs producer).
inline Fsa project_surface(const Fsa& a) {
    const Alphabet& alpha = a.alphabet();
    Fsa out(a.alphabet_ptr(), a.num_states());
    out.set_start(a.start());
    for (StateId q = 0; q < a.num_states(); ++q) {
        out.set_final(q, a.is_final(q));
        for (const auto& arc : a.arcs(q)) {
            SymbolSet widened;
            for (std::size_t seg = 0; seg < alpha.segments().size(); ++seg)
                if (arc.label.symbols.intersects(alpha.variants(seg))) widened |= alpha.variants(seg);
            out.add_arc(q, arc.target, widened, true);
        }
    }
    out.canonicalize_arcs();
    return remove_epsilon(out);
}

struct SurfaceForms {
    std::vector<std::string> forms; ///< sorted, deduplicated
    bool truncated = false;
};

/// Distinct surface spellings of the language, up to `max_len` segments
/// and at most `cap` forms.
inline SurfaceForms surface_forms(const Fsa& a, std::size_t max_len = 64, std::size_t cap = 10000) {
    Fsa det = determinize(project_surface(a));
    const Alphabet& alpha = a.alphabet();
    std::set<std::string> forms;
    bool truncated = false;
    std::string prefix;
    auto visit = [&](auto&& self, StateId q, std::size_t depth) -> void {
        if (truncated) return;
        if (det.is_final(q)) {
            forms.insert(prefix);
            if (forms.size() >= cap) {
                truncated = true;
                return;
            }
        }
        if (depth == max_len) {
            if (!det.arcs(q).empty()) truncated = true;
            return;
        }
        for (const auto& arc : det.arcs(q))
            for (std::size_t seg = 0; seg < alpha.segments().size(); ++seg) {
                if (!arc.label.symbols.intersects(alpha.variants(seg))) continue;
                const auto& tok = alpha.segments()[seg].token;
                prefix += tok;
                self(self, arc.target, depth + 1);
                prefix.resize(prefix.size() - tok.size());
            }
    };
    visit(visit, det.start(), 0);
    return {std::vector<std::string>(forms.begin(), forms.end()), truncated};
}

using LabelPath = std::vector<Label>;

/// Accepted label paths in length-then-discovery order, shortest first.
/// Stops after `cap` paths or once paths would exceed `max_len` arcs.
inline std::vector<LabelPath> label_paths(const Fsa& a, std::size_t max_len, std::size_t cap, bool* truncated = nullptr) {
    std::vector<LabelPath> out;
    struct Item {
        StateId state;
        LabelPath path;
    };
    std::deque<Item> queue{{a.start(), {}}};
    if (truncated) *truncated = false;
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        if (a.is_final(item.state)) {
            if (out.size() == cap) {
                if (truncated) *truncated = true;
                break;
            }
            out.push_back(item.path);
        }
        if (item.path.size() == max_len) {
            if (truncated && !a.arcs(item.state).empty()) *truncated = true;
            continue;
        }
        for (const auto& arc : a.arcs(item.state)) {
            LabelPath next = item.path;
            next.push_back(arc.label);
            queue.push_back({arc.target, std::move(next)});
        }
    }
    return out;
}

} // namespace redup

#endif // REDUP_LANGUAGE_HPP
