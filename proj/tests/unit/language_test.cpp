#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace redup;

TEST_CASE("emptiness", "[language]") {
    auto a = oracle::small_alphabet();
    Fsa none(a, 2);
    none.add_arc(0, 1, a->variants(0), true);
    CHECK(is_empty(none));
    CHECK_FALSE(is_empty(build_from_string(a, "pat")));
    CHECK(is_empty(empty_language(a)));
    CHECK_FALSE(is_empty(empty_string(a)));
}

TEST_CASE("enumeration picks one symbol per label member", "[language]") {
    auto a = oracle::small_alphabet();
    auto words = enumerate_language(build_from_string(a, "a"), 3);
    CHECK(words.size() == 12);
    for (const auto& w : words) {
        REQUIRE(w.size() == 1);
        CHECK(a->symbol(w[0].symbol).segment == a->segment_index("a"));
    }

    auto pool = oracle::pool(*a, 2);
    Fsa any = star(symbol_arc(a, SymbolSet{pool[0], pool[1]}, true));
    auto all = enumerate_language(any, 2);
    CHECK(all.size() == 7);
    CHECK_THROWS_AS(enumerate_language(any, 8, 50), EnumerationLimit);
}

TEST_CASE("enumeration agrees with the membership oracle", "[language][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(21);
    for (int i = 0; i < 50; ++i) {
        Fsa f = oracle::random_fsa(rng, a, pool, 4, true);
        std::set<oracle::Str> got;
        for (const auto& w : enumerate_language(f, 5)) {
            oracle::Str s;
            for (const auto& l : w) s.push_back(l.symbol);
            got.insert(s);
        }
        CHECK(got == oracle::language(f, pool, 5));
        for (const auto& s : got) CHECK(accepts(f, s));
    }
}

TEST_CASE("surface projection drops technicals and attributes", "[language]") {
    auto a = Alphabet::Builder().vowels({"a", "i", "o", "u"}).consonants({"w", "l", "k", "h", "t", "n"}).build();
    auto id = [&](const char* t, bool mora, bool sync) {
        return a->id_of(a->segment_index(t), mora, sync, Position::medial);
    };
    std::vector<SymbolId> wulu{id("w", false, true), id("u", true, false), id("l", false, false), id("u", true, false),
                               id("o", true, false)};
    for (int i = 0; i < 4; ++i) wulu.push_back(Alphabet::kRepeat);
    for (const char* t : {"w", "u", "l", "u"}) wulu.push_back(id(t, false, false));
    CHECK(spell(*a, project_surface(*a, wulu)) == "wuluowulu");

    std::vector<SymbolId> akh;
    for (const char* t : {"a", "k"}) akh.push_back(id(t, false, false));
    akh.push_back(Alphabet::kRepeat);
    akh.push_back(Alphabet::kRepeat);
    akh.push_back(id("h", false, true));
    akh.push_back(Alphabet::kSkip);
    akh.push_back(Alphabet::kSkip);
    for (const char* t : {"o", "l", "a", "t", "l", "i", "n"}) akh.push_back(id(t, false, false));
    CHECK(spell(*a, project_surface(*a, akh)) == "akholatlin");

    std::vector<SymbolId> plain{id("t", false, false), id("a", true, true)};
    CHECK(spell(*a, project_surface(*a, plain)) == "ta");
}

TEST_CASE("surface forms are sorted, deduplicated and capped", "[language]") {
    auto a = oracle::small_alphabet();
    Fsa f = unite(std::vector<Fsa>{build_from_string(a, "tip"), build_from_string(a, "pat"), build_from_string(a, "tip")});
    auto forms = surface_forms(f);
    CHECK(forms.forms == std::vector<std::string>{"pat", "tip"});
    CHECK_FALSE(forms.truncated);

    Fsa loop = star(build_from_string(a, "ta"));
    auto capped = surface_forms(loop, 64, 3);
    CHECK(capped.forms.size() == 3);
    CHECK(capped.truncated);
    auto short_only = surface_forms(loop, 4, 100);
    CHECK(short_only.forms == std::vector<std::string>{"", "ta", "tata"});
    CHECK(short_only.truncated);
}
