#ifndef REDUP_ALPHABET_HPP
#define REDUP_ALPHABET_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "redup/errors.hpp"

namespace redup {

using SymbolId = std::uint16_t;

/// Upper bound on alphabet size; 2 technical symbols plus 12 variants per segment.
inline constexpr std::size_t kMaxSymbols = 1024;

/// Fixed-width membership set over the symbol alphabet.
class SymbolSet {
public:
    static constexpr std::size_t kWords = kMaxSymbols / 64;

    SymbolSet() = default;
    SymbolSet(std::initializer_list<SymbolId> ids) {
        for (SymbolId id : ids) insert(id);
    }

    void insert(SymbolId id) { words_[id / 64] |= std::uint64_t{1} << (id % 64); }
    void erase(SymbolId id) { words_[id / 64] &= ~(std::uint64_t{1} << (id % 64)); }
    bool contains(SymbolId id) const { return (words_[id / 64] >> (id % 64)) & 1U; }

    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool intersects(const SymbolSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool subset_of(const SymbolSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    SymbolSet& operator&=(const SymbolSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    SymbolSet& operator|=(const SymbolSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    SymbolSet& operator-=(const SymbolSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend SymbolSet operator&(SymbolSet a, const SymbolSet& b) { return a &= b; }
    friend SymbolSet operator|(SymbolSet a, const SymbolSet& b) { return a |= b; }
    friend SymbolSet operator-(SymbolSet a, const SymbolSet& b) { return a -= b; }

    friend bool operator==(const SymbolSet&, const SymbolSet&) = default;
    friend auto operator<=>(const SymbolSet&, const SymbolSet&) = default;

    /// Calls fn(id) for each member in increasing order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < kWords; ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                fn(static_cast<SymbolId>(i * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<SymbolId> members() const {
        std::vector<SymbolId> out;
        for_each([&](SymbolId id) { out.push_back(id); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct SymbolSetHash {
    std::size_t operator()(const SymbolSet& s) const { return s.hash(); }
};

enum class SegmentClass : std::uint8_t { vowel, consonant };
enum class Position : std::uint8_t { initial = 0, medial = 1, final = 2 };

/// Decoded view of one alphabet element.
struct Symbol {
    enum class Kind : std::uint8_t { segment, repeat, skip };
    Kind kind = Kind::segment;
    std::size_t segment = 0; ///< inventory index; meaningful for segments only
    bool mora = false;
    bool sync = false;
    Position pos = Position::initial;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Segment {
    std::string token;
    SegmentClass cls;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// The finite alphabet: every inventory segment crossed with mora, sync and
/// position attributes, plus the two technical symbols `repeat` and `skip`.
///
/// Symbol ids are dense: 0 is repeat, 1 is skip, segment variants follow in
/// blocks of twelve.
class Alphabet {
public:
    static constexpr SymbolId kRepeat = 0;
    static constexpr SymbolId kSkip = 1;
    static constexpr std::size_t kVariants = 12;

    class Builder;

    std::size_t size() const { return 2 + segments_.size() * kVariants; }
    const std::vector<Segment>& segments() const { return segments_; }

    SymbolId id_of(std::size_t segment, bool mora, bool sync, Position pos) const {
        return static_cast<SymbolId>(2 + segment * kVariants + (mora ? 6 : 0) + (sync ? 3 : 0) +
                                     static_cast<std::size_t>(pos));
    }

    Symbol symbol(SymbolId id) const {
        if (id == kRepeat) return Symbol{Symbol::Kind::repeat};
        if (id == kSkip) return Symbol{Symbol::Kind::skip};
        std::size_t off = id - 2U;
        std::size_t v = off % kVariants;
        return Symbol{Symbol::Kind::segment, off / kVariants, v >= 6, (v % 6) >= 3,
                      static_cast<Position>(v % 3)};
    }

    bool is_technical(SymbolId id) const { return id < 2; }

    std::optional<std::size_t> find_segment(std::string_view token) const {
        auto it = index_.find(std::string(token));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t segment_index(std::string_view token) const {
        auto idx = find_segment(token);
        if (!idx) throw InventoryError("unknown segment '" + std::string(token) + "'");
        return *idx;
    }

    // -- named symbol sets ------------------------------------------------

    SymbolSet all() const { return all_; }
    SymbolSet segments_set() const { return segs_; }
    SymbolSet technical() const { return SymbolSet{kRepeat, kSkip}; }
    SymbolSet complement(const SymbolSet& s) const { return all_ - s; }

    /// All twelve attribute variants of one segment.
    SymbolSet variants(std::size_t segment) const {
        SymbolSet out;
        for (std::size_t v = 0; v < kVariants; ++v)
            out.insert(static_cast<SymbolId>(2 + segment * kVariants + v));
        return out;
    }

    SymbolSet of_class(SegmentClass cls) const {
        return select([&](const Symbol& s) { return segments_[s.segment].cls == cls; });
    }
    SymbolSet moraic() const {
        return select([](const Symbol& s) { return s.mora; });
    }
    SymbolSet synced(bool bit) const {
        return select([&](const Symbol& s) { return s.sync == bit; });
    }
    SymbolSet at(Position p) const {
        return select([&](const Symbol& s) { return s.pos == p; });
    }

    /// Resolves a grammar-level class name: `seg`, `sigma`, `vowel`,
    /// `consonant`, `mora`, `:1`, `:0`, `initial`, `medial`, `final`,
    /// `repeat`, `skip`, a declared char class, or a segment token.
    std::optional<SymbolSet> named_set(std::string_view name) const {
        if (name == "sigma") return all();
        if (name == "seg") return segments_set();
        if (name == "vowel") return of_class(SegmentClass::vowel);
        if (name == "consonant") return of_class(SegmentClass::consonant);
        if (name == "mora") return moraic();
        if (name == ":1") return synced(true);
        if (name == ":0") return synced(false);
        if (name == "initial") return at(Position::initial);
        if (name == "medial") return at(Position::medial);
        if (name == "final") return at(Position::final);
        if (name == "repeat") return SymbolSet{kRepeat};
        if (name == "skip") return SymbolSet{kSkip};
        if (auto it = classes_.find(std::string(name)); it != classes_.end()) {
            SymbolSet out;
            for (std::size_t seg : it->second) out |= variants(seg);
            return out;
        }
        if (auto idx = find_segment(name)) return variants(*idx);
        return std::nullopt;
    }

    static bool is_reserved_name(std::string_view name) {
        for (std::string_view r : {"sigma", "seg", "vowel", "consonant", "mora", ":1", ":0", "initial",
                                   "medial", "final", "repeat", "skip"})
            if (name == r) return true;
        return false;
    }

    const std::map<std::string, std::vector<std::size_t>>& classes() const { return classes_; }

    /// Maximal-munch tokenization of a surface string against the inventory.
    std::vector<std::size_t> tokenize(std::string_view text) const {
        std::vector<std::size_t> out;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == ' ' || text[i] == '-') {
                ++i;
                continue;
            }
            std::size_t best_len = 0, best = 0;
            for (std::size_t s = 0; s < segments_.size(); ++s) {
                const auto& tok = segments_[s].token;
                if (tok.size() > best_len && text.substr(i, tok.size()) == tok) {
                    best_len = tok.size();
                    best = s;
                }
            }
            if (best_len == 0)
                throw InventoryError("cannot tokenize '" + std::string(text.substr(i)) +
                                     "': no segment matches at offset " + std::to_string(i));
            out.push_back(best);
            i += best_len;
        }
        return out;
    }

    // -- text rendering ---------------------------------------------------

    /// `t:-1i` style: token, mora (+/-), sync (1/0), position (i/m/f).
    std::string format_symbol(SymbolId id) const {
        Symbol s = symbol(id);
        if (s.kind == Symbol::Kind::repeat) return "repeat";
        if (s.kind == Symbol::Kind::skip) return "skip";
        std::string out = segments_[s.segment].token + ":";
        out += s.mora ? '+' : '-';
        out += s.sync ? '1' : '0';
        out += "imf"[static_cast<std::size_t>(s.pos)];
        return out;
    }

    /// Space-separated terms; `.` stands for an unconstrained attribute and
    /// `[im]` for a subset of positions. A full segment block prints as the
    /// bare token.
    std::string format_terms(const SymbolSet& set) const {
        std::vector<std::string> terms;
        if (set.contains(kRepeat)) terms.emplace_back("repeat");
        if (set.contains(kSkip)) terms.emplace_back("skip");
        for (std::size_t seg = 0; seg < segments_.size(); ++seg) {
            // posmask per (mora, sync) combination
            std::array<unsigned, 4> posmask{};
            bool any = false;
            for (std::size_t v = 0; v < kVariants; ++v) {
                if (set.contains(static_cast<SymbolId>(2 + seg * kVariants + v))) {
                    posmask[v / 3] |= 1U << (v % 3);
                    any = true;
                }
            }
            if (!any) continue;
            const std::string& tok = segments_[seg].token;
            if (posmask == std::array<unsigned, 4>{7, 7, 7, 7}) {
                terms.push_back(tok);
                continue;
            }
            std::array<bool, 4> done{};
            for (std::size_t c = 0; c < 4;) {
                if (done[c] || posmask[c] == 0) {
                    ++c;
                    continue;
                }
                unsigned pm = posmask[c];
                std::array<bool, 4> group{};
                for (std::size_t d = 0; d < 4; ++d) group[d] = !done[d] && posmask[d] == pm;
                // group index = mora*2 + sync
                auto emit = [&](std::string m, std::string s) {
                    terms.push_back(tok + ":" + m + s + pos_code(pm));
                };
                bool full = group[0] && group[1] && group[2] && group[3];
                if (full) {
                    emit(".", ".");
                    done = {true, true, true, true};
                    continue;
                }
                bool emitted = false;
                for (int m = 0; m < 2 && !emitted; ++m) {
                    if (group[m * 2] && group[m * 2 + 1]) {
                        emit(m ? "+" : "-", ".");
                        done[m * 2] = done[m * 2 + 1] = true;
                        emitted = true;
                    }
                }
                for (int s = 0; s < 2 && !emitted; ++s) {
                    if (group[s] && group[2 + s]) {
                        emit(".", s ? "1" : "0");
                        done[s] = done[2 + s] = true;
                        emitted = true;
                    }
                }
                if (!emitted) {
                    emit(c >= 2 ? "+" : "-", (c % 2) ? "1" : "0");
                    done[c] = true;
                }
                // c is revisited until it has been covered by some term
            }
        }
        std::string out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += ' ';
            out += terms[i];
        }
        return out;
    }

    /// `{terms}`, or the bare term when there is exactly one.
    std::string format_set(const SymbolSet& set) const {
        std::string terms = format_terms(set);
        if (!terms.empty() && terms.find(' ') == std::string::npos) return terms;
        return "{" + terms + "}";
    }

    /// Inverse of format_terms for a single term.
    SymbolSet parse_term(std::string_view term) const {
        if (term == "repeat") return SymbolSet{kRepeat};
        if (term == "skip") return SymbolSet{kSkip};
        auto colon = term.find(':');
        if (colon == std::string_view::npos) return variants(segment_index(term));
        std::size_t seg = segment_index(term.substr(0, colon));
        std::string_view attrs = term.substr(colon + 1);
        if (attrs.size() < 3) throw InventoryError("malformed symbol term '" + std::string(term) + "'");
        auto flag_options = [&](char c, char yes, char no) -> std::vector<bool> {
            if (c == '.') return {false, true};
            if (c == yes) return {true};
            if (c == no) return {false};
            throw InventoryError("malformed symbol term '" + std::string(term) + "'");
        };
        auto moras = flag_options(attrs[0], '+', '-');
        auto syncs = flag_options(attrs[1], '1', '0');
        std::vector<Position> positions;
        std::string_view pp = attrs.substr(2);
        if (pp == ".") {
            positions = {Position::initial, Position::medial, Position::final};
        } else {
            if (pp.size() > 2 && pp.front() == '[' && pp.back() == ']') pp = pp.substr(1, pp.size() - 2);
            for (char c : pp) {
                if (c == 'i') positions.push_back(Position::initial);
                else if (c == 'm') positions.push_back(Position::medial);
                else if (c == 'f') positions.push_back(Position::final);
                else throw InventoryError("malformed symbol term '" + std::string(term) + "'");
            }
        }
        SymbolSet out;
        for (bool m : moras)
            for (bool s : syncs)
                for (Position p : positions) out.insert(id_of(seg, m, s, p));
        return out;
    }

    /// Parses `{t1 t2 ...}` or a single bare term.
    SymbolSet parse_set(std::string_view text) const {
        if (!text.empty() && text.front() == '{') {
            if (text.back() != '}') throw InventoryError("unterminated symbol set '" + std::string(text) + "'");
            text = text.substr(1, text.size() - 2);
        }
        SymbolSet out;
        std::istringstream in{std::string(text)};
        std::string term;
        while (in >> term) out |= parse_term(term);
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.segments_ == b.segments_;
    }

private:
    Alphabet() = default;

    static std::string pos_code(unsigned mask) {
        switch (mask) {
            case 7: return ".";
            case 1: return "i";
            case 2: return "m";
            case 4: return "f";
            case 3: return "[im]";
            case 5: return "[if]";
            case 6: return "[mf]";
            default: return "?";
        }
    }

    template <typename Pred>
    SymbolSet select(Pred&& pred) const {
        SymbolSet out;
        segs_.for_each([&](SymbolId id) {
            if (pred(symbol(id))) out.insert(id);
        });
        return out;
    }

    std::vector<Segment> segments_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::vector<std::size_t>> classes_;
    SymbolSet all_;
    SymbolSet segs_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Declares a segment inventory and named char classes.
///
/// Rejects ambiguous inventories: a token that can also be spelled as a
/// sequence of other tokens would make maximal-munch tokenization lossy.
class Alphabet::Builder {
public:
    Builder& segment(std::string token, SegmentClass cls) {
        segments_.push_back({std::move(token), cls});
        return *this;
    }
    Builder& vowels(std::initializer_list<std::string_view> tokens) {
        for (auto t : tokens) segment(std::string(t), SegmentClass::vowel);
        return *this;
    }
    Builder& consonants(std::initializer_list<std::string_view> tokens) {
        for (auto t : tokens) segment(std::string(t), SegmentClass::consonant);
        return *this;
    }
    Builder& char_class(std::string name, std::vector<std::string> tokens) {
        classes_.emplace_back(std::move(name), std::move(tokens));
        return *this;
    }

    AlphabetPtr build() const {
        std::shared_ptr<Alphabet> a(new Alphabet());
        for (const auto& seg : segments_) {
            if (seg.token.empty()) throw InventoryError("empty segment token");
            for (char c : seg.token)
                if (c == ':' || c == '{' || c == '}' || c == ' ' || c == '-' || c == '.' || c == '"')
                    throw InventoryError("segment token '" + seg.token + "' contains a reserved character");
            if (Alphabet::is_reserved_name(seg.token))
                throw InventoryError("segment token '" + seg.token + "' collides with a reserved class name");
            if (!a->index_.emplace(seg.token, a->segments_.size()).second)
                throw InventoryError("segment '" + seg.token + "' declared twice");
            a->segments_.push_back(seg);
        }
        if (a->size() > kMaxSymbols)
            throw InventoryError("inventory of " + std::to_string(segments_.size()) +
                                 " segments exceeds the alphabet capacity");
        for (const auto& seg : a->segments_)
            if (spellable_by_others(seg.token, *a))
                throw InventoryError("segment '" + seg.token +
                                     "' is ambiguous: it can be spelled by other inventory tokens");
        for (const auto& [name, tokens] : classes_) {
            if (Alphabet::is_reserved_name(name) || a->index_.count(name))
                throw InventoryError("class name '" + name + "' collides with an existing name");
            std::vector<std::size_t> members;
            for (const auto& t : tokens) members.push_back(a->segment_index(t));
            a->classes_[name] = std::move(members);
        }
        for (std::size_t id = 0; id < a->size(); ++id) a->all_.insert(static_cast<SymbolId>(id));
        a->segs_ = a->all_ - a->technical();
        return a;
    }

private:
    static bool spellable_by_others(const std::string& token, const Alphabet& a) {
        // reach[i]: prefix of length i is a concatenation of other tokens
        std::vector<bool> reach(token.size() + 1, false);
        reach[0] = true;
        for (std::size_t i = 0; i < token.size(); ++i) {
            if (!reach[i]) continue;
            for (const auto& other : a.segments_) {
                if (other.token == token) continue;
                if (token.compare(i, other.token.size(), other.token) == 0)
                    reach[i + other.token.size()] = true;
            }
        }
        return reach[token.size()];
    }

    std::vector<Segment> segments_;
    std::vector<std::pair<std::string, std::vector<std::string>>> classes_;
};

/// Set complement over the full alphabet, technical symbols included.
inline SymbolSet complement_symbols(const Alphabet& alphabet, const SymbolSet& s) {
    return alphabet.complement(s);
}

} // namespace redup

#endif // REDUP_ALPHABET_HPP
