#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace redup;

namespace {

AlphabetPtr wulu_alphabet() { return Alphabet::Builder().vowels({"u", "o"}).consonants({"w", "l"}).build(); }

} // namespace

TEST_CASE("wrapping and materializing is the identity", "[lazy]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(81);
    for (int i = 0; i < 20; ++i) {
        Fsa f = trim(oracle::random_fsa(rng, a, pool, 5, true));
        Fsa g = materialize(lazy_wrap(f));
        Fsa fc = f, gc = g;
        fc.canonicalize_arcs();
        gc.canonicalize_arcs();
        REQUIRE(g.num_states() == f.num_states());
        for (StateId q = 0; q < f.num_states(); ++q) {
            CHECK(fc.arcs(q) == gc.arcs(q));
            CHECK(f.is_final(q) == g.is_final(q));
        }
    }
}

TEST_CASE("lazy enrichment matches eager enrichment", "[lazy]") {
    auto a = wulu_alphabet();
    Fsa w = build_from_string(a, "wulu");
    CHECK(equivalent(materialize(lazy_enrich(w, EnrichKind::self_loops)), add_self_loops(w)));
    CHECK(equivalent(materialize(lazy_enrich(w, EnrichKind::skips)), add_skips(w)));
    CHECK(equivalent(materialize(lazy_enrich(w, EnrichKind::repeats)), add_repeats(w)));
    CHECK(equivalent(materialize(lazy_enrich_all(lazy_wrap(w))), enrich(w)));
}

TEST_CASE("lazy enrichment matches eager enrichment on random machines", "[lazy][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(83);
    for (int i = 0; i < 30; ++i) {
        Fsa f = trim(oracle::random_fsa(rng, a, pool, 4, i % 2 == 0));
        CHECK(equivalent(materialize(lazy_enrich_all(lazy_wrap(f))), enrich(f)));
        // Repeats over a non-stored operand take the materializing route.
        LazyPtr product = lazy_intersect(f, universal(a, a->all(), false));
        CHECK(equivalent(materialize(lazy_enrich(product, EnrichKind::repeats)),
                         add_repeats(intersect_open(f, universal(a, a->all(), false)))));
    }
}

TEST_CASE("lazy intersection matches eager intersection", "[lazy][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(89);
    for (int i = 0; i < 40; ++i) {
        Fsa x = oracle::random_fsa(rng, a, pool, 4, i % 2 == 0);
        Fsa y = oracle::random_fsa(rng, a, pool, 4, i % 3 == 0);
        CHECK(equivalent(materialize(lazy_intersect(x, y)), intersect_open(x, y)));
        CHECK(equivalent(materialize(lazy_close(lazy_intersect(x, y))), close(intersect_open(x, y))));
    }
    Fsa w = build_from_string(a, "pat");
    CHECK(equivalent(materialize(lazy_intersect(with_polarity(w, false), universal(a, a->all(), true))), w));
}

TEST_CASE("only discovered descriptors are expanded", "[lazy]") {
    auto a = wulu_alphabet();
    LazyPtr l = lazy_enrich_all(lazy_wrap(build_from_string(a, "wulu")));
    CHECK(l->cache_size() == 0);
    l->expand(l->start());
    CHECK(l->cache_size() == 1);
    CHECK_THROWS_AS(l->expand(4), PreconditionError);

    LazyPtr p = lazy_intersect(build_from_string(a, "wulu"), build_from_string(a, "wulu"));
    p->expand(p->start());
    CHECK(p->cache_size() == 1);
}

TEST_CASE("expansions are memoized", "[lazy]") {
    auto a = wulu_alphabet();
    LazyPtr l = lazy_wrap(build_from_string(a, "wu"));
    l->expand(l->start());
    l->expand(l->start());
    CHECK(l->stats().expanded == 1);
    CHECK(l->stats().cache_hits == 1);

    LazyPtr p = lazy_intersect(build_from_string(a, "wulu"), build_from_string(a, "wulu"));
    materialize(p);
    std::size_t once = p->stats().expanded;
    materialize(p);
    CHECK(p->stats().expanded == once);
    CHECK(p->stats().cache_hits >= once);
    CHECK(total_stats(p).expanded >= once);
    CHECK(product_descriptors(p) == once);
}

TEST_CASE("every cached descriptor was reached from start", "[lazy][property]") {
    auto a = oracle::small_alphabet();
    auto pool = oracle::pool(*a, 3);
    std::mt19937 rng(97);
    for (int i = 0; i < 20; ++i) {
        LazyPtr l = lazy_intersect(oracle::random_fsa(rng, a, pool, 4, true), oracle::random_fsa(rng, a, pool, 4, false));
        Fsa m = materialize(l);
        auto reach = detail::forward_reachable(m);
        for (StateId d = 0; d < m.num_states(); ++d)
            if (l->is_expanded(d)) CHECK(reach[d]);
    }
}

TEST_CASE("materialization honours the budget", "[lazy]") {
    auto a = wulu_alphabet();
    LazyPtr two = lazy_wrap(build_from_string(a, "w"));
    try {
        materialize(two, 1);
        FAIL("expected a budget error");
    } catch (const BudgetExceeded& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    CHECK_NOTHROW(materialize(two, 2));
}
