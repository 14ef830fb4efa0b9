#ifndef REDUP_LAZY_HPP
#define REDUP_LAZY_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "redup/enrichment.hpp"
#include "redup/fsa.hpp"

namespace redup {

/// Outgoing arcs and finality of one descriptor.
struct Expansion {
    bool final = false;
    std::vector<Arc> arcs;
};

struct LazyStats {
    std::size_t expanded = 0;   ///< descriptors whose expansion was computed
    std::size_t cache_hits = 0; ///< repeated requests served from the memo table
};

class LazyFsa;
using LazyPtr = std::shared_ptr<LazyFsa>;

/// An automaton presented as on-demand, memoized state expansion.
///
/// Descriptors are dense ids local to each node. Only descriptors that have
/// been discovered (the start, or a target emitted by an earlier expansion)
/// may be expanded. Instances are not thread-safe: confine each one to a
/// single task while it is being expanded.
class LazyFsa {
public:
    explicit LazyFsa(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
    LazyFsa(const LazyFsa&) = delete;
    LazyFsa& operator=(const LazyFsa&) = delete;
    virtual ~LazyFsa() = default;

    StateId start() const { return start_; }
    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }

    const Expansion& expand(StateId d) {
        if (!is_discovered(d))
            throw PreconditionError("descriptor " + std::to_string(d) + " has not been discovered from start");
        if (d >= cache_.size()) cache_.resize(d + 1);
        if (cache_[d]) {
            ++stats_.cache_hits;
            return *cache_[d];
        }
        ++stats_.expanded;
        Expansion e = compute(d);
        for (const auto& arc : e.arcs) mark_discovered(arc.target);
        cache_[d].emplace(std::move(e));
        return *cache_[d];
    }

    bool is_discovered(StateId d) const { return d < discovered_.size() && discovered_[d]; }
    bool is_expanded(StateId d) const { return d < cache_.size() && cache_[d].has_value(); }

    /// Number of memoized expansions.
    std::size_t cache_size() const { return stats_.expanded; }
    const LazyStats& stats() const { return stats_; }

    virtual std::vector<LazyPtr> operands() const { return {}; }

    /// Sources of the content arcs entering `d`, one entry per arc. Only
    /// nodes whose descriptors coincide with a static automaton's states
    /// support this.
    virtual bool supports_predecessors() const { return false; }
    virtual std::vector<StateId> content_predecessors(StateId) {
        throw PreconditionError("this lazy automaton cannot report predecessors");
    }

    /// Records `d` as discovered. Called by nodes that share this node's
    /// descriptor space when they emit arcs into it.
    void mark_discovered(StateId d) {
        if (d >= discovered_.size()) discovered_.resize(d + 1, 0);
        discovered_[d] = 1;
    }

protected:
    void set_start(StateId s) {
        start_ = s;
        mark_discovered(s);
    }

    virtual Expansion compute(StateId d) = 0;

private:
    AlphabetPtr alphabet_;
    StateId start_ = 0;
    std::deque<std::optional<Expansion>> cache_;
    std::vector<char> discovered_;
    LazyStats stats_;
};

/// Expansion statistics summed over a node and all nodes below it.
inline LazyStats total_stats(const LazyPtr& root) {
    LazyStats sum;
    std::set<const LazyFsa*> seen;
    std::vector<LazyPtr> stack{root};
    while (!stack.empty()) {
        LazyPtr n = stack.back();
        stack.pop_back();
        if (!seen.insert(n.get()).second) continue;
        sum.expanded += n->stats().expanded;
        sum.cache_hits += n->stats().cache_hits;
        for (auto& c : n->operands()) stack.push_back(c);
    }
    return sum;
}

namespace lazy_detail {

/// Descriptors are the states of a stored automaton.
class FsaView final : public LazyFsa {
public:
    explicit FsaView(Fsa fsa) : LazyFsa(fsa.alphabet_ptr()), fsa_(std::move(fsa)) {
        set_start(fsa_.start());
        preds_.resize(fsa_.num_states());
        for (StateId q = 0; q < fsa_.num_states(); ++q)
            for (const auto& arc : fsa_.arcs(q))
                if (is_content_label(fsa_.alphabet(), arc.label)) preds_[arc.target].push_back(q);
    }

    bool supports_predecessors() const override { return true; }
    std::vector<StateId> content_predecessors(StateId d) override { return preds_.at(d); }

protected:
    Expansion compute(StateId d) override { return {fsa_.is_final(d), fsa_.arcs(d)}; }

private:
    Fsa fsa_;
    std::vector<std::vector<StateId>> preds_;
};

enum class EnrichKind { repeats, skips, self_loops };

/// Shares the operand's descriptor space and applies one local rule per
/// expansion.
class EnrichNode final : public LazyFsa {
public:
    EnrichNode(LazyPtr operand, EnrichKind kind)
        : LazyFsa(operand->alphabet_ptr()), operand_(std::move(operand)), kind_(kind) {
        set_start(operand_->start());
    }

    std::vector<LazyPtr> operands() const override { return {operand_}; }

    bool supports_predecessors() const override { return operand_->supports_predecessors(); }
    std::vector<StateId> content_predecessors(StateId d) override {
        auto preds = operand_->content_predecessors(d);
        if (kind_ == EnrichKind::self_loops) preds.push_back(d);
        return preds;
    }

protected:
    Expansion compute(StateId d) override {
        operand_->mark_discovered(d); // shared descriptor space
        Expansion e = operand_->expand(d);
        const Alphabet& alpha = alphabet();
        for (const auto& arc : e.arcs)
            if (arc.label.symbols.empty())
                throw PreconditionError("lazy enrichment: operand has an epsilon arc");
        switch (kind_) {
            case EnrichKind::self_loops:
                e.arcs.push_back({d, Label{alpha.segments_set(), false}});
                break;
            case EnrichKind::skips: {
                std::size_t n = e.arcs.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const Arc arc = e.arcs[i];
                    if (is_content_label(alpha, arc.label) && !is_sigma_loop(alpha, d, arc))
                        e.arcs.push_back({arc.target, Label{SymbolSet{Alphabet::kSkip}, false}});
                }
                break;
            }
            case EnrichKind::repeats:
                for (StateId p : operand_->content_predecessors(d)) {
                    operand_->mark_discovered(p);
                    e.arcs.push_back({p, Label{SymbolSet{Alphabet::kRepeat}, false}});
                }
                break;
        }
        return e;
    }

private:
    LazyPtr operand_;
    EnrichKind kind_;
};

/// Descriptor = pair of operand descriptors, numbered in discovery order.
class IntersectNode final : public LazyFsa {
public:
    IntersectNode(LazyPtr a, LazyPtr b) : LazyFsa(a->alphabet_ptr()), a_(std::move(a)), b_(std::move(b)) {
        if (!(a_->alphabet() == b_->alphabet()))
            throw PreconditionError("automata are defined over different alphabets");
        set_start(id_of(a_->start(), b_->start()));
    }

    std::vector<LazyPtr> operands() const override { return {a_, b_}; }

protected:
    Expansion compute(StateId d) override {
        auto [p, q] = pairs_[d];
        const Expansion& ea = a_->expand(p);
        const Expansion& eb = b_->expand(q);
        Expansion out;
        out.final = ea.final && eb.final;
        for (const auto& x : ea.arcs)
            for (const auto& y : eb.arcs) {
                SymbolSet common = x.label.symbols & y.label.symbols;
                if (common.empty()) continue;
                out.arcs.push_back({id_of(x.target, y.target), Label{common, x.label.producer || y.label.producer}});
            }
        return out;
    }

private:
    StateId id_of(StateId p, StateId q) {
        std::uint64_t key = (std::uint64_t{p} << 32) | q;
        auto [it, inserted] = index_.try_emplace(key, static_cast<StateId>(pairs_.size()));
        if (inserted) pairs_.emplace_back(p, q);
        return it->second;
    }

    LazyPtr a_, b_;
    std::unordered_map<std::uint64_t, StateId> index_;
    std::vector<std::pair<StateId, StateId>> pairs_;
};

/// Keeps producer arcs only.
class CloseNode final : public LazyFsa {
public:
    explicit CloseNode(LazyPtr operand) : LazyFsa(operand->alphabet_ptr()), operand_(std::move(operand)) {
        set_start(operand_->start());
    }

    std::vector<LazyPtr> operands() const override { return {operand_}; }

protected:
    Expansion compute(StateId d) override {
        operand_->mark_discovered(d);
        const Expansion& e = operand_->expand(d);
        Expansion out{e.final, {}};
        for (const auto& arc : e.arcs)
            if (arc.label.producer) out.arcs.push_back(arc);
        return out;
    }

private:
    LazyPtr operand_;
};

} // namespace lazy_detail

using lazy_detail::EnrichKind;

/// Wraps a stored automaton; descriptors are its state ids.
inline LazyPtr lazy_wrap(Fsa a) { return std::make_shared<lazy_detail::FsaView>(std::move(a)); }

/// Exhaustively expands from start and returns the equivalent stored
/// automaton; descriptor ids become state ids. Throws BudgetExceeded when
/// more than `budget` descriptors would be expanded.
inline Fsa materialize(const LazyPtr& l, std::size_t budget = std::numeric_limits<std::size_t>::max()) {
    std::vector<StateId> queue{l->start()};
    std::vector<char> queued;
    auto enqueue = [&](StateId d) {
        if (d >= queued.size()) queued.resize(d + 1, 0);
        if (queued[d]) return false;
        queued[d] = 1;
        return true;
    };
    enqueue(l->start());
    std::vector<std::pair<StateId, Expansion>> expanded;
    StateId max_id = l->start();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        if (i >= budget) throw BudgetExceeded(i + 1);
        const Expansion& e = l->expand(queue[i]);
        expanded.emplace_back(queue[i], e);
        for (const auto& arc : e.arcs) {
            max_id = std::max(max_id, arc.target);
            if (enqueue(arc.target)) queue.push_back(arc.target);
        }
    }
    Fsa out(l->alphabet_ptr(), static_cast<std::size_t>(max_id) + 1);
    out.set_start(l->start());
    for (auto& [d, e] : expanded) {
        out.set_final(d, e.final);
        for (auto& arc : e.arcs) out.add_arc(d, arc.target, arc.label);
    }
    return out;
}

/// Lazy counterpart of add_repeats / add_skips / add_self_loops.
///
/// The repeat rule needs the content predecessors of each state. Operands
/// that share a stored automaton's state space provide them directly; any
/// other operand is first materialized and trimmed.
inline LazyPtr lazy_enrich(LazyPtr a, EnrichKind kind) {
    if (kind == EnrichKind::repeats && !a->supports_predecessors()) a = lazy_wrap(trim(materialize(a)));
    return std::make_shared<lazy_detail::EnrichNode>(std::move(a), kind);
}

inline LazyPtr lazy_enrich(const Fsa& a, EnrichKind kind) { return lazy_enrich(lazy_wrap(a), kind); }

/// The canonical nesting repeats(skips(self_loops(a))), lazily.
inline LazyPtr lazy_enrich_all(LazyPtr a) {
    return lazy_enrich(lazy_enrich(lazy_enrich(std::move(a), EnrichKind::self_loops), EnrichKind::skips),
                       EnrichKind::repeats);
}

inline LazyPtr lazy_intersect(LazyPtr a, LazyPtr b) {
    return std::make_shared<lazy_detail::IntersectNode>(std::move(a), std::move(b));
}
inline LazyPtr lazy_intersect(const Fsa& a, LazyPtr b) { return lazy_intersect(lazy_wrap(a), std::move(b)); }
inline LazyPtr lazy_intersect(LazyPtr a, const Fsa& b) { return lazy_intersect(std::move(a), lazy_wrap(b)); }
inline LazyPtr lazy_intersect(const Fsa& a, const Fsa& b) { return lazy_intersect(lazy_wrap(a), lazy_wrap(b)); }

inline LazyPtr lazy_close(LazyPtr a) { return std::make_shared<lazy_detail::CloseNode>(std::move(a)); }

/// Product descriptors (state pairs) expanded by the intersection nodes
/// below `root`; the lazy counterpart of ProductStats::product_states.
inline std::size_t product_descriptors(const LazyPtr& root) {
    std::size_t sum = 0;
    std::set<const LazyFsa*> seen;
    std::vector<LazyPtr> stack{root};
    while (!stack.empty()) {
        LazyPtr n = stack.back();
        stack.pop_back();
        if (!seen.insert(n.get()).second) continue;
        if (dynamic_cast<const lazy_detail::IntersectNode*>(n.get())) sum += n->stats().expanded;
        for (auto& c : n->operands()) stack.push_back(c);
    }
    return sum;
}

} // namespace redup

#endif // REDUP_LAZY_HPP
