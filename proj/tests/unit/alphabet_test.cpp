#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace redup;

TEST_CASE("symbol ids follow the attribute cross-product", "[alphabet]") {
    auto a = oracle::small_alphabet();
    REQUIRE(a->size() == 2 + 5 * 12);
    std::set<SymbolId> seen;
    for (std::size_t seg = 0; seg < a->segments().size(); ++seg)
        for (bool mora : {false, true})
            for (bool sync : {false, true})
                for (auto pos : {Position::initial, Position::medial, Position::final}) {
                    SymbolId id = a->id_of(seg, mora, sync, pos);
                    Symbol s = a->symbol(id);
                    CHECK(s.segment == seg);
                    CHECK(s.mora == mora);
                    CHECK(s.sync == sync);
                    CHECK(s.pos == pos);
                    CHECK_FALSE(a->is_technical(id));
                    seen.insert(id);
                }
    CHECK(seen.size() == 60);
    CHECK(a->is_technical(Alphabet::kRepeat));
    CHECK(a->is_technical(Alphabet::kSkip));
}

TEST_CASE("named sets", "[alphabet]") {
    auto a = oracle::small_alphabet();
    CHECK(a->named_set("sigma")->size() == 62);
    CHECK(a->named_set("seg")->size() == 60);
    CHECK(a->named_set("vowel")->size() == 24);
    CHECK(a->named_set("consonant")->size() == 36);
    CHECK(a->named_set("mora")->size() == 30);
    CHECK(a->named_set(":1")->size() == 30);
    CHECK(a->named_set("final")->size() == 20);
    CHECK(*a->named_set("repeat") == SymbolSet{Alphabet::kRepeat});
    CHECK(*a->named_set("t") == a->variants(a->segment_index("t")));
    CHECK_FALSE(a->named_set("nonsense").has_value());
}

TEST_CASE("complement is over the full alphabet", "[alphabet]") {
    auto a = oracle::small_alphabet();
    SymbolSet not_mora = complement_symbols(*a, a->moraic());
    CHECK(not_mora.contains(Alphabet::kRepeat));
    CHECK(not_mora.contains(Alphabet::kSkip));
    CHECK(complement_symbols(*a, a->all()).empty());
    CHECK((complement_symbols(*a, a->synced(true)) & a->segments_set()) == (a->synced(false) & a->segments_set()));

    std::mt19937 rng(7);
    std::vector<SymbolId> every = a->all().members();
    for (int i = 0; i < 50; ++i) {
        SymbolSet s = oracle::random_subset(rng, every);
        CHECK(complement_symbols(*a, complement_symbols(*a, s)) == s);
    }
}

TEST_CASE("tokenization is maximal munch", "[alphabet]") {
    auto a = Alphabet::Builder().vowels({"a"}).consonants({"n", "ny"}).build();
    auto t = a->tokenize("nyan");
    REQUIRE(t.size() == 3);
    CHECK(a->segments()[t[0]].token == "ny");
    CHECK(a->segments()[t[1]].token == "a");
    CHECK(a->segments()[t[2]].token == "n");
    CHECK(a->tokenize("ny a-n").size() == 3);
}

TEST_CASE("tokens spellable by other tokens are rejected", "[alphabet]") {
    CHECK_THROWS_AS(Alphabet::Builder().vowels({"a", "aa"}).build(), InventoryError);
    CHECK_THROWS_AS(Alphabet::Builder().consonants({"n", "y", "ny"}).build(), InventoryError);
}

TEST_CASE("unknown tokens are inventory errors naming the token", "[alphabet]") {
    auto a = oracle::small_alphabet();
    try {
        a->tokenize("paxt");
        FAIL("expected an inventory error");
    } catch (const InventoryError& e) {
        CHECK(std::string(e.what()).find('x') != std::string::npos);
    }
    CHECK_THROWS_AS(a->segment_index("q"), InventoryError);
}

TEST_CASE("duplicate segments are rejected at build time", "[alphabet]") {
    CHECK_THROWS_AS(Alphabet::Builder().vowels({"a"}).consonants({"a"}).build(), InventoryError);
}

TEST_CASE("set formatting round-trips through parse_set", "[alphabet]") {
    auto a = oracle::small_alphabet();
    std::mt19937 rng(11);
    std::vector<SymbolId> every = a->all().members();
    for (int i = 0; i < 100; ++i) {
        SymbolSet s = oracle::random_subset(rng, every);
        if (s.empty()) continue;
        INFO(a->format_set(s));
        CHECK(a->parse_set(a->format_set(s)) == s);
    }
}
