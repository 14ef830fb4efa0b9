#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace redup;

TEST_CASE("open intersection ORs polarity and intersects labels", "[interpretation]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    Fsa x(a, 2), y(a, 2);
    x.add_arc(0, 1, SymbolSet{pool[0], pool[1]}, false);
    y.add_arc(0, 1, SymbolSet{pool[1], pool[2]}, true);
    x.set_final(1);
    y.set_final(1);
    Fsa r = intersect_open(x, y);
    REQUIRE(r.num_arcs() == 1);
    CHECK(r.arcs(r.start())[0].label.symbols == SymbolSet{pool[1]});
    CHECK(r.arcs(r.start())[0].label.producer);

    ProductStats stats;
    intersect_open(x, y, &stats);
    CHECK(stats.product_states == 2);
}

TEST_CASE("producer dominance on random machines", "[interpretation][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(41);
    for (int i = 0; i < 50; ++i) {
        Fsa x = oracle::random_fsa(rng, a, pool, 4, i % 2 == 0);
        Fsa y = oracle::random_fsa(rng, a, pool, 4, i % 3 == 0);
        Fsa r = intersect_open(x, y);
        bool expect_producer = (i % 2 == 0) || (i % 3 == 0);
        for (StateId q = 0; q < r.num_states(); ++q)
            for (const auto& arc : r.arcs(q)) CHECK(arc.label.producer == expect_producer);
    }
}

TEST_CASE("intersection with the universal producer language forces producers", "[interpretation]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(43);
    for (int i = 0; i < 20; ++i) {
        Fsa x = oracle::random_fsa(rng, a, pool, 4, false);
        Fsa r = intersect_open(x, universal(a, a->all(), true));
        CHECK(equivalent(r, with_polarity(trim(x), true)));
    }
}

TEST_CASE("closing removes consumer arcs", "[interpretation]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(47);
    for (int i = 0; i < 30; ++i) {
        Fsa x = unite(oracle::random_fsa(rng, a, pool, 4, false), oracle::random_fsa(rng, a, pool, 4, true));
        Fsa c = close(x);
        for (StateId q = 0; q < c.num_states(); ++q)
            for (const auto& arc : c.arcs(q)) CHECK(arc.label.producer);
    }
    Fsa all_producer = build_from_string(a, "pita");
    CHECK(same_structure(close(all_producer), trim(all_producer)));
}

TEST_CASE("parse input is a consumer chain with technical loops", "[interpretation]") {
    auto a = oracle::small_alphabet();
    Fsa in = prepare_parse_input(a, "pat");
    CHECK(in.num_states() == 4);
    CHECK(in.num_arcs() == 3 + 4);
    for (StateId q = 0; q < in.num_states(); ++q)
        for (const auto& arc : in.arcs(q)) {
            CHECK_FALSE(arc.label.producer);
            if (arc.target == q) CHECK(arc.label.symbols == a->technical());
        }
    Fsa empty = prepare_parse_input(a, "");
    CHECK(empty.num_states() == 1);
    CHECK(empty.num_arcs() == 1);
    CHECK(is_empty(close(intersect_open(build_from_string(a, "pa"), empty))));
    CHECK_THROWS_AS(prepare_parse_input(a, "pxt"), InventoryError);
}

TEST_CASE("parsing requires every segment to be produced", "[interpretation]") {
    auto a = oracle::small_alphabet();
    Fsa grammar = unite(build_from_string(a, "pat"), build_from_string(a, "tip"));
    CHECK(parse(grammar, "pat").accepted);
    CHECK(parse(grammar, "tip").accepted);
    CHECK_FALSE(parse(grammar, "pa").accepted);
    CHECK_FALSE(parse(grammar, "pit").accepted);
    CHECK_FALSE(parse(with_polarity(grammar, false), "pat").accepted);
}
