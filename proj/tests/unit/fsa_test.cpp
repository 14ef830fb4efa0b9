#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace redup;

namespace {

AlphabetPtr bambara() { return Alphabet::Builder().vowels({"a", "o", "u"}).consonants({"w", "l", "b"}).build(); }

oracle::Str plain(const Alphabet& a, std::string_view text) {
    oracle::Str s;
    for (auto seg : a.tokenize(text)) s.push_back(a.id_of(seg, false, false, Position::initial));
    return s;
}

} // namespace

TEST_CASE("build_from_string makes an underspecified producer chain", "[fsa]") {
    auto a = bambara();
    Fsa w = build_from_string(a, "wulu");
    REQUIRE(w.num_states() == 5);
    REQUIRE(w.num_arcs() == 4);
    const char* toks[] = {"w", "u", "l", "u"};
    for (StateId q = 0; q < 4; ++q) {
        REQUIRE(w.arcs(q).size() == 1);
        CHECK(w.arcs(q)[0].target == q + 1);
        CHECK(w.arcs(q)[0].label.producer);
        CHECK(w.arcs(q)[0].label.symbols == a->variants(a->segment_index(toks[q])));
    }
    CHECK(w.is_final(4));
    CHECK(w.finals().size() == 1);
}

TEST_CASE("empty string and attribute specs", "[fsa]") {
    auto a = bambara();
    Fsa e = build_from_string(a, "");
    CHECK(e.num_states() == 1);
    CHECK(e.num_arcs() == 0);
    CHECK(e.is_final(e.start()));

    Fsa m = build_from_string(a, "a", a->moraic());
    REQUIRE(m.num_arcs() == 1);
    CHECK(m.arcs(0)[0].label.symbols.size() == 6);

    CHECK_THROWS_AS(build_from_string(a, "wxlu"), InventoryError);
}

TEST_CASE("regular operations", "[fsa]") {
    auto a = bambara();
    auto pool = oracle::pool(*a, 2); // "a" and "o" plain variants
    Fsa x = symbol_arc(a, SymbolSet{pool[0]}, true);
    Fsa y = symbol_arc(a, SymbolSet{pool[1]}, true);

    Fsa u = unite(x, y);
    CHECK(oracle::language(u, pool, 3) == std::set<oracle::Str>{{pool[0]}, {pool[1]}});

    Fsa ab = concat(x, y);
    Fsa s = star(ab);
    oracle::for_each_string(pool, 6, [&](const oracle::Str& str) {
        bool expected = str.size() % 2 == 0;
        for (std::size_t i = 0; expected && i < str.size(); ++i) expected = str[i] == pool[i % 2];
        CHECK(oracle::member(s, str) == expected);
    });

    Fsa opt = optional(x);
    CHECK(oracle::language(opt, pool, 3) == std::set<oracle::Str>{{}, {pool[0]}});

    Fsa c = concat(build_from_string(a, "wulu"), build_from_string(a, "o"));
    CHECK(oracle::member(c, plain(*a, "wuluo")));
    CHECK_FALSE(oracle::member(c, plain(*a, "wulu")));
    CHECK(surface_forms(c).forms == std::vector<std::string>{"wuluo"});
}

TEST_CASE("combine checks arity", "[fsa]") {
    auto a = bambara();
    Fsa x = build_from_string(a, "a");
    std::vector<Fsa> none;
    std::vector<Fsa> two{x, x};
    CHECK_THROWS_AS(combine(CombineKind::concat, none), ArityError);
    CHECK_THROWS_AS(combine(CombineKind::union_, none), ArityError);
    CHECK_THROWS_AS(combine(CombineKind::star, two), ArityError);
    CHECK_THROWS_AS(combine(CombineKind::optional, two), ArityError);
    std::vector<Fsa> one{x};
    CHECK(combine(CombineKind::star, one).num_states() >= 1);
}

TEST_CASE("regular operations preserve polarity and stay epsilon-free", "[fsa][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(3);
    for (int i = 0; i < 60; ++i) {
        bool px = i % 2, py = i % 3 == 0;
        Fsa x = oracle::random_fsa(rng, a, pool, 4, px);
        Fsa y = oracle::random_fsa(rng, a, pool, 4, py);
        auto lx = oracle::language(x, pool, 5), ly = oracle::language(y, pool, 5);

        Fsa u = unite(x, y);
        Fsa c = concat(x, y);
        Fsa s = star(x);
        for (const Fsa* f : {&u, &c, &s}) REQUIRE(oracle::epsilon_free(*f));

        std::set<oracle::Str> lu = lx;
        lu.insert(ly.begin(), ly.end());
        CHECK(oracle::language(u, pool, 5) == lu);

        std::set<oracle::Str> lc;
        for (const auto& p : lx)
            for (const auto& q : ly) {
                oracle::Str pq = p;
                pq.insert(pq.end(), q.begin(), q.end());
                if (pq.size() <= 5) lc.insert(pq);
            }
        CHECK(oracle::language(c, pool, 5) == lc);

        if (px == py) {
            for (StateId q = 0; q < u.num_states(); ++q)
                for (const auto& arc : u.arcs(q)) CHECK(arc.label.producer == px);
        }
    }
}

TEST_CASE("trim keeps only useful states", "[fsa]") {
    auto a = bambara();
    Fsa f(a, 4);
    f.add_arc(0, 1, a->variants(0), true);
    f.add_arc(2, 1, a->variants(1), true); // unreachable
    f.add_arc(0, 3, a->variants(2), true); // dead end
    f.set_final(1);
    Fsa t = trim(f);
    CHECK(t.num_states() == 2);
    CHECK(t.num_arcs() == 1);
}

TEST_CASE("remove_epsilon eliminates empty labels", "[fsa]") {
    auto a = bambara();
    Fsa f(a, 3);
    f.add_arc(0, 1, SymbolSet{}, false);
    f.add_arc(1, 2, a->variants(0), true);
    f.set_final(2);
    REQUIRE(f.has_epsilon());
    Fsa g = remove_epsilon(f);
    CHECK_FALSE(g.has_epsilon());
    auto pool = oracle::pool(*a, 1);
    CHECK(oracle::language(g, pool, 2) == std::set<oracle::Str>{{pool[0]}});
}
