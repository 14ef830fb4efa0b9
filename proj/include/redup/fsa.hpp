#ifndef REDUP_FSA_HPP
#define REDUP_FSA_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "redup/alphabet.hpp"
#include "redup/errors.hpp"

namespace redup {

using StateId = std::uint32_t;

/// Symbol set plus producer/consumer bit.
struct Label {
    SymbolSet symbols;
    bool producer = false;

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label& a, const Label& b) {
        if (a.producer != b.producer) return a.producer <=> b.producer;
        return a.symbols <=> b.symbols;
    }
};

struct Arc {
    StateId target;
    Label label;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc& a, const Arc& b) {
        if (auto c = a.label <=> b.label; c != 0) return c;
        return a.target <=> b.target;
    }
};

/// Arc-labelled finite automaton with set-valued labels and a single start
/// state.
///
/// An arc whose label is the empty set stands for an epsilon transition. The
/// public operations never produce one; remove_epsilon() eliminates them.
class Fsa {
public:
    explicit Fsa(AlphabetPtr alphabet, std::size_t states = 1)
        : alphabet_(std::move(alphabet)), out_(states), finals_(states, 0) {
        if (!alphabet_) throw PreconditionError("automaton requires an alphabet");
        if (states == 0) {
            out_.resize(1);
            finals_.resize(1, 0);
        }
    }

    StateId add_state(bool final = false) {
        out_.emplace_back();
        finals_.push_back(final ? 1 : 0);
        return static_cast<StateId>(out_.size() - 1);
    }

    void add_arc(StateId from, StateId to, Label label) {
        check(from);
        check(to);
        out_[from].push_back(Arc{to, std::move(label)});
    }
    void add_arc(StateId from, StateId to, const SymbolSet& symbols, bool producer) {
        add_arc(from, to, Label{symbols, producer});
    }

    void set_final(StateId q, bool final = true) {
        check(q);
        finals_[q] = final ? 1 : 0;
    }
    void set_start(StateId q) {
        check(q);
        start_ = q;
    }

    std::size_t num_states() const { return out_.size(); }
    std::size_t num_arcs() const {
        std::size_t n = 0;
        for (const auto& v : out_) n += v.size();
        return n;
    }
    StateId start() const { return start_; }
    bool is_final(StateId q) const { return finals_[q] != 0; }
    const std::vector<Arc>& arcs(StateId q) const { return out_[q]; }
    std::vector<Arc>& mutable_arcs(StateId q) { return out_[q]; }

    std::vector<StateId> finals() const {
        std::vector<StateId> out;
        for (StateId q = 0; q < num_states(); ++q)
            if (is_final(q)) out.push_back(q);
        return out;
    }

    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }

    bool has_epsilon() const {
        for (const auto& v : out_)
            for (const auto& a : v)
                if (a.label.symbols.empty()) return true;
        return false;
    }

    /// Sorts each state's arcs and drops exact duplicates.
    void canonicalize_arcs() {
        for (auto& v : out_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

private:
    void check(StateId q) const {
        if (q >= out_.size()) throw PreconditionError("state " + std::to_string(q) + " out of range");
    }

    AlphabetPtr alphabet_;
    std::vector<std::vector<Arc>> out_;
    std::vector<char> finals_;
    StateId start_ = 0;
};

namespace detail {

inline void require_same_alphabet(const Fsa& a, const Fsa& b) {
    if (a.alphabet_ptr() != b.alphabet_ptr() && !(a.alphabet() == b.alphabet()))
        throw PreconditionError("automata are defined over different alphabets");
}

/// Copies all states and arcs of `src` into `dst`; returns the id offset.
inline StateId append_states(Fsa& dst, const Fsa& src) {
    auto offset = static_cast<StateId>(dst.num_states());
    for (StateId q = 0; q < src.num_states(); ++q) dst.add_state(src.is_final(q));
    for (StateId q = 0; q < src.num_states(); ++q)
        for (const auto& a : src.arcs(q)) dst.add_arc(offset + q, offset + a.target, a.label);
    return offset;
}

/// Adds copies of the out-arcs of `src_state` (already offset) to `q`.
inline void copy_out_arcs(Fsa& fsa, StateId src_state, StateId q) {
    std::vector<Arc> copies = fsa.arcs(src_state);
    for (auto& a : copies) fsa.add_arc(q, a.target, a.label);
}

inline std::vector<std::vector<StateId>> reverse_adjacency(const Fsa& a) {
    std::vector<std::vector<StateId>> rev(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q)) rev[arc.target].push_back(q);
    return rev;
}

inline std::vector<char> forward_reachable(const Fsa& a) {
    std::vector<char> seen(a.num_states(), 0);
    std::vector<StateId> stack{a.start()};
    seen[a.start()] = 1;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (const auto& arc : a.arcs(q))
            if (!seen[arc.target]) {
                seen[arc.target] = 1;
                stack.push_back(arc.target);
            }
    }
    return seen;
}

} // namespace detail

/// Keeps only states that are reachable from start and co-reachable to a
/// final state. The start state always survives; state order is preserved.
inline Fsa trim(const Fsa& a) {
    auto fwd = detail::forward_reachable(a);
    auto rev = detail::reverse_adjacency(a);
    std::vector<char> bwd(a.num_states(), 0);
    std::vector<StateId> stack;
    for (StateId q = 0; q < a.num_states(); ++q)
        if (a.is_final(q)) {
            bwd[q] = 1;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : rev[q])
            if (!bwd[p]) {
                bwd[p] = 1;
                stack.push_back(p);
            }
    }
    constexpr StateId kDropped = ~StateId{0};
    std::vector<StateId> map(a.num_states(), kDropped);
    Fsa out(a.alphabet_ptr(), 0);
    bool first = true;
    for (StateId q = 0; q < a.num_states(); ++q) {
        bool keep = (fwd[q] && bwd[q]) || q == a.start();
        if (!keep) continue;
        if (first) {
            map[q] = 0;
            out.set_final(0, a.is_final(q) && bwd[q]);
            first = false;
        } else {
            map[q] = out.add_state(a.is_final(q));
        }
    }
    out.set_start(map[a.start()]);
    if (!bwd[a.start()]) return out; // empty language: lone start, no arcs
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (map[q] == kDropped) continue;
        for (const auto& arc : a.arcs(q))
            if (map[arc.target] != kDropped)
                out.add_arc(map[q], map[arc.target], arc.label);
    }
    return out;
}

/// Eliminates empty-label (epsilon) arcs by forward closure, then trims.
inline Fsa remove_epsilon(const Fsa& a) {
    if (!a.has_epsilon()) return trim(a);
    const std::size_t n = a.num_states();
    Fsa out(a.alphabet_ptr(), n);
    out.set_start(a.start());
    std::vector<StateId> closure;
    std::vector<char> seen(n, 0);
    for (StateId p = 0; p < n; ++p) {
        closure.assign(1, p);
        std::fill(seen.begin(), seen.end(), 0);
        seen[p] = 1;
        for (std::size_t i = 0; i < closure.size(); ++i)
            for (const auto& arc : a.arcs(closure[i]))
                if (arc.label.symbols.empty() && !seen[arc.target]) {
                    seen[arc.target] = 1;
                    closure.push_back(arc.target);
                }
        bool final = false;
        for (StateId q : closure) {
            final = final || a.is_final(q);
            for (const auto& arc : a.arcs(q))
                if (!arc.label.symbols.empty()) out.add_arc(p, arc.target, arc.label);
        }
        out.set_final(p, final);
    }
    out.canonicalize_arcs();
    return trim(out);
}

// -- elementary automata ---------------------------------------------------

/// Accepts only the empty string.
inline Fsa empty_string(AlphabetPtr alphabet) {
    Fsa f(std::move(alphabet), 1);
    f.set_final(0);
    return f;
}

/// Accepts nothing.
inline Fsa empty_language(AlphabetPtr alphabet) { return Fsa(std::move(alphabet), 1); }

/// One arc labelled `symbols`.
inline Fsa symbol_arc(AlphabetPtr alphabet, const SymbolSet& symbols, bool producer) {
    Fsa f(std::move(alphabet), 2);
    if (symbols.empty()) return f; // no symbol to read: empty language
    f.add_arc(0, 1, symbols, producer);
    f.set_final(1);
    return f;
}

/// `symbols*` as a single looping state.
inline Fsa universal(AlphabetPtr alphabet, const SymbolSet& symbols, bool producer) {
    Fsa f(std::move(alphabet), 1);
    f.set_final(0);
    if (!symbols.empty()) f.add_arc(0, 0, symbols, producer);
    return f;
}

/// Linear producer chain, one arc per token. Each arc carries every
/// attribute variant of its segment, narrowed by `spec`.
inline Fsa build_from_string(AlphabetPtr alphabet, std::span<const std::size_t> tokens,
                             const SymbolSet& spec) {
    Fsa f(alphabet, tokens.size() + 1);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] >= alphabet->segments().size())
            throw InventoryError("segment index " + std::to_string(tokens[i]) + " outside inventory");
        SymbolSet label = alphabet->variants(tokens[i]) & spec;
        if (!label.empty()) f.add_arc(static_cast<StateId>(i), static_cast<StateId>(i + 1), label, true);
    }
    f.set_final(static_cast<StateId>(tokens.size()));
    return f;
}

inline Fsa build_from_string(AlphabetPtr alphabet, std::span<const std::size_t> tokens) {
    SymbolSet spec = alphabet->all();
    return build_from_string(std::move(alphabet), tokens, spec);
}

/// Tokenizes `text` against the inventory (maximal munch) first.
inline Fsa build_from_string(AlphabetPtr alphabet, std::string_view text, const SymbolSet& spec) {
    auto tokens = alphabet->tokenize(text);
    return build_from_string(std::move(alphabet), tokens, spec);
}

inline Fsa build_from_string(AlphabetPtr alphabet, std::string_view text) {
    SymbolSet spec = alphabet->all();
    return build_from_string(std::move(alphabet), text, spec);
}

// -- regular operations (epsilon-free constructions) ------------------------

inline Fsa concat(const Fsa& a, const Fsa& b) {
    detail::require_same_alphabet(a, b);
    Fsa ea = remove_epsilon(a), eb = remove_epsilon(b);
    Fsa r(ea.alphabet_ptr(), 1); // state 0 is a placeholder that trim drops
    StateId oa = detail::append_states(r, ea);
    StateId ob = detail::append_states(r, eb);
    r.set_start(oa + ea.start());
    const bool b_nullable = eb.is_final(eb.start());
    for (StateId q = 0; q < ea.num_states(); ++q) {
        if (!ea.is_final(q)) continue;
        detail::copy_out_arcs(r, ob + eb.start(), oa + q);
        r.set_final(oa + q, b_nullable);
    }
    return trim(r);
}

inline Fsa concat(std::span<const Fsa> parts, AlphabetPtr alphabet) {
    Fsa acc = empty_string(std::move(alphabet));
    for (const auto& p : parts) acc = concat(acc, p);
    return acc;
}

inline Fsa unite(std::span<const Fsa> parts) {
    if (parts.empty()) throw ArityError("union needs at least one operand");
    Fsa r(parts.front().alphabet_ptr(), 1);
    for (const auto& p : parts) {
        detail::require_same_alphabet(parts.front(), p);
        Fsa e = remove_epsilon(p);
        StateId off = detail::append_states(r, e);
        detail::copy_out_arcs(r, off + e.start(), 0);
        if (e.is_final(e.start())) r.set_final(0);
    }
    r.canonicalize_arcs();
    return trim(r);
}

inline Fsa unite(const Fsa& a, const Fsa& b) {
    std::vector<Fsa> v{a, b};
    return unite(v);
}

inline Fsa star(const Fsa& a) {
    Fsa e = remove_epsilon(a);
    Fsa r(e.alphabet_ptr(), 1);
    r.set_final(0);
    StateId off = detail::append_states(r, e);
    detail::copy_out_arcs(r, off + e.start(), 0);
    for (StateId q = 0; q < e.num_states(); ++q)
        if (e.is_final(q)) detail::copy_out_arcs(r, off + e.start(), off + q);
    r.canonicalize_arcs();
    return trim(r);
}

inline Fsa optional(const Fsa& a) {
    Fsa e = remove_epsilon(a);
    Fsa r(e.alphabet_ptr(), 1);
    r.set_final(0);
    StateId off = detail::append_states(r, e);
    detail::copy_out_arcs(r, off + e.start(), 0);
    return trim(r);
}

enum class CombineKind { concat, union_, star, optional };

/// Regular combination of operands; concat/union take one or more operands,
/// star/optional exactly one.
inline Fsa combine(CombineKind kind, std::span<const Fsa> operands) {
    switch (kind) {
        case CombineKind::concat:
            if (operands.empty()) throw ArityError("concat needs at least one operand");
            return concat(operands, operands.front().alphabet_ptr());
        case CombineKind::union_:
            return unite(operands);
        case CombineKind::star:
            if (operands.size() != 1) throw ArityError("star takes exactly one operand");
            return star(operands.front());
        case CombineKind::optional:
            if (operands.size() != 1) throw ArityError("optional takes exactly one operand");
            return optional(operands.front());
    }
    throw ArityError("unknown combination");
}

/// Returns a copy with every arc's producer bit set to `producer`.
inline Fsa with_polarity(const Fsa& a, bool producer) {
    Fsa out = a;
    for (StateId q = 0; q < out.num_states(); ++q)
        for (auto& arc : out.mutable_arcs(q)) arc.label.producer = producer;
    out.canonicalize_arcs();
    return out;
}

} // namespace redup

#endif // REDUP_FSA_HPP
