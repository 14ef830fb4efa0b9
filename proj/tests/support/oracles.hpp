#ifndef REDUP_TESTS_ORACLES_HPP
#define REDUP_TESTS_ORACLES_HPP

// Brute-force reference implementations. Nothing here calls the library's
// algorithms; only the Fsa container and the alphabet are shared.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "redup/redup.hpp"

namespace oracle {

using redup::Fsa;
using redup::StateId;
using redup::SymbolId;
using redup::SymbolSet;
using Str = std::vector<SymbolId>;

/// Small inventory used by the property tests: three consonants and two
/// vowels, so there is a handful of fully specified symbols to pick from.
inline redup::AlphabetPtr small_alphabet() {
    return redup::Alphabet::Builder().consonants({"p", "t", "k"}).vowels({"a", "i"}).build();
}

/// `n` distinct fully specified symbols: the plain (-mora, :0, initial)
/// variant of the first `n` segments.
inline std::vector<SymbolId> pool(const redup::Alphabet& a, std::size_t n) {
    std::vector<SymbolId> out;
    for (std::size_t s = 0; s < n && s < a.segments().size(); ++s)
        out.push_back(a.id_of(s, false, false, redup::Position::initial));
    return out;
}

/// Nondeterministic acceptance by explicit subset tracking.
inline bool member(const Fsa& f, const Str& s) {
    std::set<StateId> cur{f.start()};
    for (SymbolId x : s) {
        std::set<StateId> next;
        for (StateId q : cur)
            for (const auto& arc : f.arcs(q))
                if (arc.label.symbols.contains(x)) next.insert(arc.target);
        if (next.empty()) return false;
        cur.swap(next);
    }
    for (StateId q : cur)
        if (f.is_final(q)) return true;
    return false;
}

/// Every string over `symbols` of length <= max_len.
inline void for_each_string(const std::vector<SymbolId>& symbols, std::size_t max_len,
                            const std::function<void(const Str&)>& visit) {
    Str s;
    std::function<void()> rec = [&] {
        visit(s);
        if (s.size() == max_len) return;
        for (SymbolId x : symbols) {
            s.push_back(x);
            rec();
            s.pop_back();
        }
    };
    rec();
}

/// The language of `f` restricted to strings over `symbols`.
inline std::set<Str> language(const Fsa& f, const std::vector<SymbolId>& symbols, std::size_t max_len) {
    std::set<Str> out;
    for_each_string(symbols, max_len, [&](const Str& s) {
        if (member(f, s)) out.insert(s);
    });
    return out;
}

/// True iff some factor s[i, j) is a member of `x`.
inline bool has_factor(const Fsa& x, const Str& s) {
    for (std::size_t i = 0; i <= s.size(); ++i)
        for (std::size_t j = i; j <= s.size(); ++j)
            if (member(x, Str(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(j))))
                return true;
    return false;
}

/// Rule definition: no position in X∖Y immediately followed by one in Z.
inline bool rule_holds(const SymbolSet& x, const SymbolSet& y, const SymbolSet& z, const Str& s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (x.contains(s[i]) && !y.contains(s[i]) && z.contains(s[i + 1])) return false;
    return true;
}

/// Random automaton with up to `max_states` states whose labels are
/// non-empty subsets of `symbols`.
inline Fsa random_fsa(std::mt19937& rng, redup::AlphabetPtr alpha, const std::vector<SymbolId>& symbols,
                      std::size_t max_states, bool producer, double density = 0.35) {
    std::uniform_int_distribution<std::size_t> nstates(1, max_states);
    std::bernoulli_distribution coin(0.5), arc(density);
    std::size_t n = nstates(rng);
    Fsa f(alpha, n);
    for (StateId q = 0; q < n; ++q) {
        f.set_final(q, coin(rng));
        for (StateId r = 0; r < n; ++r) {
            if (!arc(rng)) continue;
            SymbolSet label;
            while (label.empty())
                for (SymbolId x : symbols)
                    if (coin(rng)) label.insert(x);
            f.add_arc(q, r, label, producer);
        }
    }
    return f;
}

inline SymbolSet random_subset(std::mt19937& rng, const std::vector<SymbolId>& symbols) {
    std::bernoulli_distribution coin(0.5);
    SymbolSet s;
    for (SymbolId x : symbols)
        if (coin(rng)) s.insert(x);
    return s;
}

/// Content arcs (labels with a segment symbol) and technical-only arcs.
inline std::pair<std::size_t, std::size_t> arc_census(const Fsa& f) {
    std::size_t content = 0, technical = 0;
    for (StateId q = 0; q < f.num_states(); ++q)
        for (const auto& arc : f.arcs(q)) {
            if ((arc.label.symbols & f.alphabet().segments_set()).empty())
                ++technical;
            else
                ++content;
        }
    return {content, technical};
}

inline bool epsilon_free(const Fsa& f) {
    for (StateId q = 0; q < f.num_states(); ++q)
        for (const auto& arc : f.arcs(q))
            if (arc.label.symbols.empty()) return false;
    return true;
}

/// Segment spelling of a symbol string, technical symbols dropped.
inline std::string spell(const redup::Alphabet& a, const Str& s) {
    std::string out;
    for (SymbolId x : s)
        if (!a.is_technical(x)) out += a.segments()[a.symbol(x).segment].token;
    return out;
}

} // namespace oracle

#endif // REDUP_TESTS_ORACLES_HPP
