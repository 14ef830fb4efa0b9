#ifndef REDUP_GRAMMAR_KIT_HPP
#define REDUP_GRAMMAR_KIT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "redup/enrichment.hpp"
#include "redup/interpretation.hpp"
#include "redup/language.hpp"
#include "redup/lazy.hpp"
#include "redup/rules.hpp"

/// The Bambara, Semai and Koasati analyses built directly with the C++ API.
namespace redup::kit {

// -- inventories -------------------------------------------------------------

/// Koasati fragment: the `low` class holds the low vowel.
inline AlphabetPtr koasati_inventory() {
    return Alphabet::Builder()
        .vowels({"a", "i", "o"})
        .consonants({"t", "h", "s", "p", "n", "k", "l"})
        .char_class("low", {"a"})
        .build();
}

inline AlphabetPtr bambara_inventory() {
    return Alphabet::Builder().vowels({"a", "e", "i", "o", "u"}).consonants({"w", "l", "n", "y", "f"}).build();
}

/// Semai, transliterated: q = glottal stop, N = velar nasal, E/O/A = long
/// open-mid and low vowels.
inline AlphabetPtr semai_inventory() {
    return Alphabet::Builder().vowels({"E", "O", "A"}).consonants({"c", "q", "t", "d", "N", "h", "f", "l"}).build();
}

// -- small builders ------------------------------------------------------------

inline Fsa consumer(const AlphabetPtr& a, const SymbolSet& s) { return symbol_arc(a, s, false); }
inline Fsa producer(const AlphabetPtr& a, const SymbolSet& s) { return symbol_arc(a, s, true); }

inline Fsa seq(const AlphabetPtr& a, std::initializer_list<Fsa> parts) {
    return concat(std::span<const Fsa>(parts.begin(), parts.size()), a);
}

inline Fsa both(const Fsa& x, const Fsa& y) { return intersect_open(x, y); }

/// [consumer(~':1' & seg)*, consumer(':1' & seg)]
inline Fsa right_synced(const AlphabetPtr& a) {
    const SymbolSet segs = a->segments_set();
    return seq(a, {star(consumer(a, segs & a->synced(false))), consumer(a, segs & a->synced(true))});
}

/// [consumer(':1' & seg), right_synced]
inline Fsa synced_constituent(const AlphabetPtr& a) {
    return seq(a, {consumer(a, a->segments_set() & a->synced(true)), right_synced(a)});
}

// -- lexicon -----------------------------------------------------------------

struct StemSpec {
    std::string name;
    Fsa first_seg; ///< expression preceding the body; the empty string for most stems
    std::string body;
};

struct NamedConstraint {
    std::string name;
    Fsa fsa;
};

/// The V/h alternation of vowel-initial stems: a producer vowel from
/// `base` or a producer h followed by a consumer skip.
inline Fsa underspecified_for_voicing(const AlphabetPtr& a, const SymbolSet& base) {
    Fsa vowel = producer(a, base & a->of_class(SegmentClass::vowel));
    Fsa h = seq(a, {producer(a, a->variants(a->segment_index("h"))), consumer(a, SymbolSet{Alphabet::kSkip})});
    return unite(vowel, h);
}

/// Producer string of first segment plus body, restricted by the
/// constraints (made transparent to technical symbols) in order. The
/// diagnostic names the constraint at which the intersection first
/// becomes empty.
inline Fsa constrained_stem(const StemSpec& s, const std::vector<NamedConstraint>& constraints) {
    if (s.body.empty()) throw PreconditionError("stem '" + s.name + "' has an empty body");
    AlphabetPtr a = s.first_seg.alphabet_ptr();
    Fsa out = concat(s.first_seg, build_from_string(a, s.body));
    for (const auto& c : constraints) {
        out = intersect_open(out, ignore_technicals(c.fsa));
        if (is_empty(out)) throw CompileError("stem '" + s.name + "' violates constraint '" + c.name + "'");
    }
    return out;
}

/// The constrained stem enriched with self loops, skips and repeats, in
/// that order.
inline Fsa build_stem(const StemSpec& s, const std::vector<NamedConstraint>& constraints) {
    return enrich(constrained_stem(s, constraints));
}

// -- Koasati -----------------------------------------------------------------

inline NamedConstraint moraification(const AlphabetPtr& a) {
    const SymbolSet vowel = a->of_class(SegmentClass::vowel);
    const SymbolSet consonant = a->of_class(SegmentClass::consonant);
    const SymbolSet mora = a->moraic();
    Fsa r = compile_rule(a, vowel, vowel & mora, a->all());
    r = both(r, compile_rule(a, consonant, consonant & mora, consonant));
    r = both(r, compile_rule(a, consonant, consonant & complement_symbols(*a, mora), vowel));
    return {"moraification", r};
}

inline Fsa heavy_rime(const AlphabetPtr& a) { return seq(a, {consumer(a, a->moraic()), consumer(a, a->moraic())}); }

inline Fsa heavy_syllable(const AlphabetPtr& a) {
    return seq(a, {consumer(a, complement_symbols(*a, a->moraic())), heavy_rime(a)});
}

/// [not_contains(X), X]
inline Fsa first_of(const Fsa& x) { return concat(not_contains(x), x); }

inline NamedConstraint mark_first_heavy_syllable(const AlphabetPtr& a) {
    Fsa first = both(first_of(heavy_rime(a)), synced_constituent(a));
    return {"mark_first_heavy_syllable", concat(first, synced_constituent(a))};
}

inline NamedConstraint positional_classification(const AlphabetPtr& a) {
    return {"positional_classification",
            seq(a, {consumer(a, a->at(Position::initial)), star(consumer(a, a->at(Position::medial))),
                    consumer(a, a->at(Position::final))})};
}

inline std::vector<NamedConstraint> koasati_constraints(const AlphabetPtr& a) {
    return {moraification(a), mark_first_heavy_syllable(a), positional_classification(a)};
}

/// Two producer o arcs, the second optional.
inline Fsa fixed_melody(const AlphabetPtr& a) {
    SymbolSet o = a->variants(a->segment_index("o")) & complement_symbols(*a, a->synced(true)) &
                  a->at(Position::medial) & a->moraic();
    return concat(producer(a, o), optional(producer(a, o)));
}

inline Fsa punctual_aspect_reduplication(const AlphabetPtr& a) {
    const SymbolSet synced = a->synced(true);
    return seq(a, {synced_constituent(a), star(producer(a, SymbolSet{Alphabet::kRepeat})),
                   consumer(a, synced & a->at(Position::initial) & a->of_class(SegmentClass::consonant)),
                   star(producer(a, SymbolSet{Alphabet::kSkip})), fixed_melody(a),
                   consumer(a, synced & a->segments_set() & complement_symbols(*a, a->moraic())),
                   right_synced(a)});
}

inline Fsa word_level_constraints(const AlphabetPtr& a) {
    Fsa any = star(consumer(a, a->all()));
    Fsa last_moraic = concat(any, consumer(a, a->moraic()));
    Fsa last_two_heavy = seq(a, {any, heavy_syllable(a), heavy_syllable(a)});
    return both(last_moraic, last_two_heavy);
}

/// closed_interpretation(word_level_constraints & entry & reduplication)
inline Fsa wordform(const Fsa& entry, ProductStats* stats = nullptr) {
    AlphabetPtr a = entry.alphabet_ptr();
    Fsa inner = intersect_open(word_level_constraints(a), entry, stats);
    return close(intersect_open(inner, punctual_aspect_reduplication(a), stats));
}

/// The same derivation over a lazily enriched stem; nothing beyond the
/// constrained stem string is built until the result is expanded.
inline LazyPtr wordform_lazy(const Fsa& constrained_stem) {
    AlphabetPtr a = constrained_stem.alphabet_ptr();
    LazyPtr entry = lazy_enrich_all(lazy_wrap(constrained_stem));
    LazyPtr inner = lazy_intersect(word_level_constraints(a), entry);
    return lazy_close(lazy_intersect(inner, punctual_aspect_reduplication(a)));
}

inline StemSpec koasati_stem(const AlphabetPtr& a, std::string_view name) {
    if (name == "tahaspin") return {"tahaspin", empty_string(a), "tahaspin"};
    if (name == "aklatlin") return {"aklatlin", underspecified_for_voicing(a, *a->named_set("low")), "klatlin"};
    if (name == "lapatkin") return {"lapatkin", empty_string(a), "lapatkin"};
    throw PreconditionError("no Koasati stem named '" + std::string(name) + "'");
}

// -- Bambara and Semai -------------------------------------------------------

/// Enriched base whose edges are sync-marked as one constituent.
inline Fsa synced_base(const AlphabetPtr& a, std::string_view tokens) {
    return trim(both(build_from_string(a, tokens), synced_constituent(a)));
}

/// Total copy with fixed melody o between base and copy.
inline Fsa bambara_morpheme(const AlphabetPtr& a) {
    return seq(a, {synced_constituent(a), producer(a, a->variants(a->segment_index("o"))),
                   star(producer(a, SymbolSet{Alphabet::kRepeat})), synced_constituent(a)});
}

inline Fsa bambara_pipeline(const AlphabetPtr& a, std::string_view noun, ProductStats* stats = nullptr) {
    if (a->tokenize(noun).size() < 2) throw PreconditionError("Bambara base needs at least two segments");
    return close(intersect_open(enrich(synced_base(a, noun)), bambara_morpheme(a), stats));
}

inline LazyPtr bambara_lazy(const AlphabetPtr& a, std::string_view noun) {
    if (a->tokenize(noun).size() < 2) throw PreconditionError("Bambara base needs at least two segments");
    return lazy_close(lazy_intersect(lazy_enrich_all(lazy_wrap(synced_base(a, noun))), bambara_morpheme(a)));
}

/// Reduplicant of first and last base segment, interior skipped, then a
/// move back and the full base.
inline Fsa semai_morpheme(const AlphabetPtr& a) {
    const SymbolSet synced = a->segments_set() & a->synced(true);
    return seq(a, {consumer(a, synced), star(producer(a, SymbolSet{Alphabet::kSkip})), consumer(a, synced),
                   star(producer(a, SymbolSet{Alphabet::kRepeat})), synced_constituent(a)});
}

inline Fsa semai_pipeline(const AlphabetPtr& a, std::string_view base, ProductStats* stats = nullptr) {
    if (a->tokenize(base).size() < 2) throw PreconditionError("Semai base needs at least two segments");
    return close(intersect_open(enrich(synced_base(a, base)), semai_morpheme(a), stats));
}

inline LazyPtr semai_lazy(const AlphabetPtr& a, std::string_view base) {
    if (a->tokenize(base).size() < 2) throw PreconditionError("Semai base needs at least two segments");
    return lazy_close(lazy_intersect(lazy_enrich_all(lazy_wrap(synced_base(a, base))), semai_morpheme(a)));
}

} // namespace redup::kit

#endif // REDUP_GRAMMAR_KIT_HPP
