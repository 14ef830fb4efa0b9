#ifndef REDUP_RULES_HPP
#define REDUP_RULES_HPP

#include "redup/fsa.hpp"
#include "redup/normalize.hpp"

namespace redup {

/// Monotonic rule X --> Y / _ Z over single symbol sets: no symbol of X∖Y
/// may be immediately followed by a symbol of Z. A string-final X symbol is
/// unconstrained. Deterministic, two states, consumer arcs unless
/// `producer` is set.
inline Fsa compile_rule(AlphabetPtr alphabet, const SymbolSet& x, const SymbolSet& y, const SymbolSet& z,
                        bool producer = false) {
    if (!y.subset_of(x))
        throw CompileError("rule is not monotonic: right-hand side " + alphabet->format_set(y - x) +
                           " lies outside the left-hand side");
    const SymbolSet sigma = alphabet->all();
    const SymbolSet banned = x - y;
    Fsa f(alphabet, 2);
    f.set_final(0);
    f.set_final(1);
    auto arc = [&](StateId from, StateId to, const SymbolSet& s) {
        if (!s.empty()) f.add_arc(from, to, s, producer);
    };
    arc(0, 0, sigma - banned);
    arc(0, 1, banned);
    arc(1, 1, banned - z);
    arc(1, 0, sigma - banned - z);
    return f;
}

/// Makes a constraint transparent to technical symbols: technical symbols
/// are removed from existing labels and consumer {repeat, skip} self loops
/// are added to every state.
inline Fsa ignore_technicals(const Fsa& a) {
    const Alphabet& alpha = a.alphabet();
    Fsa out(a.alphabet_ptr(), a.num_states());
    out.set_start(a.start());
    for (StateId q = 0; q < a.num_states(); ++q) {
        out.set_final(q, a.is_final(q));
        for (const auto& arc : a.arcs(q)) {
            SymbolSet content = arc.label.symbols - alpha.technical();
            if (!content.empty()) out.add_arc(q, arc.target, content, arc.label.producer);
        }
        out.add_arc(q, q, alpha.technical(), false);
    }
    return out;
}

namespace detail {

/// Adds a sink so that every state has a transition on every symbol.
/// Expects a deterministic automaton with uniform polarity.
inline Fsa complete(const Fsa& d, bool producer) {
    Fsa out = d;
    const SymbolSet sigma = d.alphabet().all();
    StateId sink = out.add_state(false);
    out.add_arc(sink, sink, sigma, producer);
    for (StateId q = 0; q < d.num_states(); ++q) {
        SymbolSet covered;
        for (const auto& arc : d.arcs(q)) covered |= arc.label.symbols;
        SymbolSet missing = sigma - covered;
        if (!missing.empty()) out.add_arc(q, sink, missing, producer);
    }
    return out;
}

} // namespace detail

/// Strings over the full alphabet with no factor in L(x).
inline Fsa not_contains(const Fsa& x, bool producer = false) {
    AlphabetPtr alpha = x.alphabet_ptr();
    Fsa any = universal(alpha, alpha->all(), producer);
    Fsa pattern = concat(concat(any, with_polarity(x, producer)), any);
    Fsa total = detail::complete(determinize(pattern), producer);
    for (StateId q = 0; q < total.num_states(); ++q) total.set_final(q, !total.is_final(q));
    return trim(total);
}

} // namespace redup

#endif // REDUP_RULES_HPP
