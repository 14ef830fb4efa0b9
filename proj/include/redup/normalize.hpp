#ifndef REDUP_NORMALIZE_HPP
#define REDUP_NORMALIZE_HPP

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "redup/fsa.hpp"

namespace redup {

/// Refines a family of symbol sets into disjoint blocks such that every input
/// set is a union of blocks.
inline std::vector<SymbolSet> refine_partition(const std::vector<SymbolSet>& sets) {
    std::vector<SymbolSet> blocks;
    for (const auto& s : sets) {
        if (s.empty()) continue;
        SymbolSet rest = s;
        std::vector<SymbolSet> next;
        next.reserve(blocks.size() + 2);
        for (const auto& b : blocks) {
            SymbolSet in = b & s;
            SymbolSet out = b - s;
            if (!in.empty()) next.push_back(in);
            if (!out.empty()) next.push_back(out);
            rest -= b;
        }
        if (!rest.empty()) next.push_back(rest);
        blocks = std::move(next);
    }
    return blocks;
}

namespace detail {

/// Label partition of an automaton, one partition per polarity.
struct Atoms {
    std::vector<SymbolSet> by_pc[2];
};

inline Atoms atoms_of(const Fsa& a) {
    std::vector<SymbolSet> sets[2];
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q)) sets[arc.label.producer ? 1 : 0].push_back(arc.label.symbols);
    Atoms atoms;
    for (int pc = 0; pc < 2; ++pc) {
        std::sort(sets[pc].begin(), sets[pc].end());
        sets[pc].erase(std::unique(sets[pc].begin(), sets[pc].end()), sets[pc].end());
        atoms.by_pc[pc] = refine_partition(sets[pc]);
    }
    return atoms;
}

/// Renumbers states in breadth-first order from start, visiting arcs in
/// (pc, symbols) order. For a deterministic automaton with merged parallel
/// arcs this order is canonical.
inline Fsa renumber_bfs(const Fsa& a) {
    constexpr StateId kNone = ~StateId{0};
    std::vector<StateId> order;
    std::vector<StateId> map(a.num_states(), kNone);
    map[a.start()] = 0;
    order.push_back(a.start());
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<Arc> arcs = a.arcs(order[i]);
        std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.label < y.label; });
        for (const auto& arc : arcs)
            if (map[arc.target] == kNone) {
                map[arc.target] = static_cast<StateId>(order.size());
                order.push_back(arc.target);
            }
    }
    Fsa out(a.alphabet_ptr(), order.size());
    for (StateId q : order) {
        out.set_final(map[q], a.is_final(q));
        for (const auto& arc : a.arcs(q)) out.add_arc(map[q], map[arc.target], arc.label);
    }
    out.canonicalize_arcs();
    return out;
}

/// Merges parallel arcs that share source, target and polarity.
inline Fsa merge_parallel(const Fsa& a) {
    Fsa out(a.alphabet_ptr(), a.num_states());
    out.set_start(a.start());
    for (StateId q = 0; q < a.num_states(); ++q) {
        out.set_final(q, a.is_final(q));
        std::map<std::pair<StateId, bool>, SymbolSet> merged;
        for (const auto& arc : a.arcs(q)) merged[{arc.target, arc.label.producer}] |= arc.label.symbols;
        for (const auto& [key, syms] : merged) out.add_arc(q, key.first, syms, key.second);
    }
    out.canonicalize_arcs();
    return out;
}

} // namespace detail

/// Subset construction over the label partition. Arcs with different
/// producer bits are treated as different letters and never merged.
inline Fsa determinize(const Fsa& input) {
    Fsa a = trim(input);
    detail::Atoms atoms = detail::atoms_of(a);

    std::map<std::vector<StateId>, StateId> index;
    std::vector<std::vector<StateId>> subsets;
    Fsa out(a.alphabet_ptr(), 1);
    subsets.push_back({a.start()});
    index[subsets[0]] = 0;
    out.set_final(0, a.is_final(a.start()));

    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const std::vector<StateId> subset = subsets[i];
        for (int pc = 0; pc < 2; ++pc) {
            std::map<std::vector<StateId>, SymbolSet> by_target;
            for (const auto& atom : atoms.by_pc[pc]) {
                std::vector<StateId> target;
                for (StateId q : subset)
                    for (const auto& arc : a.arcs(q))
                        if (arc.label.producer == (pc == 1) && arc.label.symbols.intersects(atom))
                            target.push_back(arc.target);
                if (target.empty()) continue;
                std::sort(target.begin(), target.end());
                target.erase(std::unique(target.begin(), target.end()), target.end());
                by_target[target] |= atom;
            }
            for (auto& [target, syms] : by_target) {
                auto [it, inserted] = index.try_emplace(target, static_cast<StateId>(subsets.size()));
                if (inserted) {
                    subsets.push_back(target);
                    bool final = std::any_of(target.begin(), target.end(),
                                             [&](StateId q) { return a.is_final(q); });
                    out.add_state(final);
                }
                out.add_arc(static_cast<StateId>(i), it->second, syms, pc == 1);
            }
        }
    }
    out.canonicalize_arcs();
    return out;
}

/// Minimal deterministic automaton over the label partition, in canonical
/// state numbering. Language-equal inputs yield structurally equal outputs.
inline Fsa minimize(const Fsa& input) {
    Fsa d = determinize(input);
    detail::Atoms atoms = detail::atoms_of(d);
    const std::size_t n = d.num_states();

    // letter index: (pc, atom)
    std::vector<std::pair<int, SymbolSet>> letters;
    for (int pc = 0; pc < 2; ++pc)
        for (const auto& atom : atoms.by_pc[pc]) letters.emplace_back(pc, atom);

    constexpr StateId kNone = ~StateId{0};
    std::vector<std::vector<StateId>> delta(n, std::vector<StateId>(letters.size(), kNone));
    for (StateId q = 0; q < n; ++q)
        for (const auto& arc : d.arcs(q))
            for (std::size_t l = 0; l < letters.size(); ++l)
                if (letters[l].first == (arc.label.producer ? 1 : 0) && arc.label.symbols.intersects(letters[l].second))
                    delta[q][l] = arc.target;

    std::vector<StateId> cls(n);
    for (StateId q = 0; q < n; ++q) cls[q] = d.is_final(q) ? 1 : 0;
    std::size_t num_classes = 0;
    while (true) {
        std::map<std::vector<StateId>, StateId> sig_index;
        std::vector<StateId> next(n);
        for (StateId q = 0; q < n; ++q) {
            std::vector<StateId> sig;
            sig.reserve(letters.size() + 1);
            sig.push_back(cls[q]);
            for (StateId t : delta[q]) sig.push_back(t == kNone ? kNone : cls[t]);
            auto [it, inserted] = sig_index.try_emplace(std::move(sig), static_cast<StateId>(sig_index.size()));
            next[q] = it->second;
        }
        bool stable = sig_index.size() == num_classes;
        num_classes = sig_index.size();
        cls = std::move(next);
        if (stable) break;
    }

    Fsa q_fsa(d.alphabet_ptr(), num_classes);
    std::vector<char> done(num_classes, 0);
    for (StateId q = 0; q < n; ++q) {
        StateId c = cls[q];
        if (done[c]) continue;
        done[c] = 1;
        q_fsa.set_final(c, d.is_final(q));
        for (std::size_t l = 0; l < letters.size(); ++l)
            if (delta[q][l] != kNone) q_fsa.add_arc(c, cls[delta[q][l]], letters[l].second, letters[l].first == 1);
    }
    q_fsa.set_start(cls[d.start()]);
    return detail::renumber_bfs(detail::merge_parallel(q_fsa));
}

enum class NormalizeMode { trim, determinize, minimize };

inline Fsa normalize(const Fsa& a, NormalizeMode mode) {
    switch (mode) {
        case NormalizeMode::trim: return trim(a);
        case NormalizeMode::determinize: return detail::merge_parallel(determinize(a));
        case NormalizeMode::minimize: return minimize(a);
    }
    return a;
}

/// Structural equality of two automata in canonical form (e.g. both
/// minimized): same alphabet, states, finals and sorted arc lists.
inline bool same_structure(const Fsa& a, const Fsa& b) {
    if (!(a.alphabet() == b.alphabet())) return false;
    if (a.num_states() != b.num_states() || a.start() != b.start()) return false;
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (a.is_final(q) != b.is_final(q)) return false;
        auto x = a.arcs(q), y = b.arcs(q);
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }
    return true;
}

/// True when the minimal automata of `a` and `b` are isomorphic, i.e. the
/// two accept the same language of (symbol, producer-bit) strings.
inline bool equivalent(const Fsa& a, const Fsa& b) { return same_structure(minimize(a), minimize(b)); }

} // namespace redup

#endif // REDUP_NORMALIZE_HPP
