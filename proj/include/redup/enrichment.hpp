#ifndef REDUP_ENRICHMENT_HPP
#define REDUP_ENRICHMENT_HPP

#include "redup/fsa.hpp"

namespace redup {

/// A content arc reads at least one segment symbol. Arcs over {repeat, skip}
/// only are technical and are never mirrored or skipped.
inline bool is_content_label(const Alphabet& alphabet, const Label& label) {
    return label.symbols.intersects(alphabet.segments_set());
}

/// The Σ self loop added by add_self_loops(); add_skips() leaves it alone.
inline bool is_sigma_loop(const Alphabet& alphabet, StateId from, const Arc& arc) {
    return arc.target == from && arc.label.symbols == alphabet.segments_set();
}

namespace detail {

inline void require_epsilon_free(const Fsa& a, const char* op) {
    if (a.has_epsilon())
        throw PreconditionError(std::string(op) +
                                ": automaton has an epsilon arc; technical arcs would no longer be in "
                                "1:1 correspondence with content arcs (skipping a segment could take "
                                "one or two skips)");
}

} // namespace detail

/// For every content arc q1 -c-> q2 (Σ self loops included) adds a consumer
/// arc q2 -repeat-> q1.
inline Fsa add_repeats(const Fsa& a) {
    detail::require_epsilon_free(a, "add_repeats");
    Fsa out = a;
    const Alphabet& alpha = a.alphabet();
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q))
            if (is_content_label(alpha, arc.label)) out.add_arc(arc.target, q, SymbolSet{Alphabet::kRepeat}, false);
    return out;
}

/// For every content arc q1 -c-> q2 other than a Σ self loop adds a parallel
/// consumer arc q1 -skip-> q2.
inline Fsa add_skips(const Fsa& a) {
    detail::require_epsilon_free(a, "add_skips");
    Fsa out = a;
    const Alphabet& alpha = a.alphabet();
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q))
            if (is_content_label(alpha, arc.label) && !is_sigma_loop(alpha, q, arc))
                out.add_arc(q, arc.target, SymbolSet{Alphabet::kSkip}, false);
    return out;
}

/// Adds a consumer self loop over all segment symbols to every state.
inline Fsa add_self_loops(const Fsa& a) {
    detail::require_epsilon_free(a, "add_self_loops");
    Fsa out = a;
    for (StateId q = 0; q < a.num_states(); ++q) out.add_arc(q, q, a.alphabet().segments_set(), false);
    return out;
}

/// The canonical nesting add_repeats(add_skips(add_self_loops(a))). Apply
/// to one base at a time; union enriched bases afterwards.
inline Fsa enrich(const Fsa& a) { return add_repeats(add_skips(add_self_loops(a))); }

} // namespace redup

#endif // REDUP_ENRICHMENT_HPP
