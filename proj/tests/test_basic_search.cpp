// The three exhaustive searches: identical outcomes, exact visit counts for
// the residue enumeration, the canonicality guard, and prefix replay.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "jac/basic_search.hpp"
#include "jac/known_values.hpp"
#include "jac/primes.hpp"

using namespace jac;

namespace {

std::uint64_t residue_leaf_count(int n) {
    PrimeSet ps(n);
    std::uint64_t prod = 1;
    for (int p : ps.odd()) prod *= static_cast<std::uint64_t>(p - 1);
    return prod;
}

}  // namespace

TEST_CASE("all three searches agree with each other and the reference rows") {
    for (int n = 2; n <= 8; ++n) {
        SearchOutcome a = bsa(n);
        SearchOutcome b = bpa(n);
        SearchOutcome c = rpa(n);
        const KnownRow* row = known_row(n);
        REQUIRE(row != nullptr);
        CHECK(a.omega == row->omega);
        CHECK(static_cast<int>(a.sequences.size()) == row->count);
        CHECK(b.omega == a.omega);
        CHECK(c.omega == a.omega);
        CHECK(b.sequences == a.sequences);
        CHECK(c.sequences == a.sequences);
        // Residue enumeration walks every complete assignment exactly once.
        CHECK(a.visited == residue_leaf_count(n));
        // The guard only ever removes duplicate placement orders.
        CHECK(c.visited <= b.visited);
    }
}

TEST_CASE("smallest run finds the two mirrored covers") {
    SearchOutcome out = bsa(3);
    CHECK(out.omega == 2);
    REQUIRE(out.sequences.size() == 2);
    CHECK(out.sequences[0] == Remainders{1, 2});
    CHECK(out.sequences[1] == Remainders{2, 1});
}

TEST_CASE("sequences come out sorted and unique") {
    for (int n : {5, 7}) {
        SearchOutcome out = rpa(n);
        std::set<Remainders> dedup(out.sequences.begin(), out.sequences.end());
        CHECK(dedup.size() == out.sequences.size());
        CHECK(std::vector<Remainders>(dedup.begin(), dedup.end()) == out.sequences);
    }
}

TEST_CASE("size guards refuse out-of-range n with a helpful message") {
    CHECK_THROWS_AS(bsa(1), std::invalid_argument);
    CHECK_THROWS_AS(bsa(10), std::invalid_argument);
    CHECK_THROWS_AS(bpa(11), std::invalid_argument);
    CHECK_THROWS_AS(rpa(13), std::invalid_argument);
    try {
        bsa(12);
        FAIL("guard did not fire");
    } catch (const std::invalid_argument& e) {
        // The refusal names a feasible alternative.
        CHECK(std::string(e.what()).find("dsa") != std::string::npos);
    }
}

TEST_CASE("canonicality guard keeps the smallest prime on each anchor") {
    // With 5 already on anchor 1, placing 3 on anchor 4 duplicates a cover
    // already enumerated with 3 on anchor 1 (1 and 4 agree mod 3, and the
    // prime sitting there is larger).
    CHECK(rpa_skip_placement({5}, {1}, 3, 4));
    // The mirrored order is the canonical one and must survive.
    CHECK_FALSE(rpa_skip_placement({3}, {1}, 5, 2));
    // Earlier prime smaller than the candidate: nothing to undo.
    CHECK_FALSE(rpa_skip_placement({3}, {1}, 5, 6));
    // Anchors in different classes never interact.
    CHECK_FALSE(rpa_skip_placement({5}, {1}, 3, 3));
    // Any one offending earlier pair suffices.
    CHECK(rpa_skip_placement({3, 7}, {1, 2}, 5, 7));
    CHECK_THROWS_AS(rpa_skip_placement({3, 5}, {1}, 7, 2), std::invalid_argument);
}

TEST_CASE("explicit working lengths reproduce the default result") {
    SearchOutcome small = bsa(5, 30);
    SearchOutcome dflt = bsa(5);
    CHECK(small.omega == dflt.omega);
    CHECK(small.sequences == dflt.sequences);
    // A length below the answer forces regrowth and still succeeds.
    SearchOutcome tight = bpa(6, 4);
    CHECK(tight.omega == 10);
}

TEST_CASE("placement prefixes partition the permutation searches") {
    for (bool reduced : {false, true}) {
        for (int n : {5, 6, 7}) {
            SearchOutcome whole = reduced ? rpa(n) : bpa(n);
            for (int placements = 1; placements <= n - 2; ++placements) {
                auto prefixes = perm_prefixes(n, placements, reduced, whole.omega);
                SequenceRecorder rec;
                std::uint64_t visited = 0;
                for (const PermPrefix& pre : prefixes) {
                    SearchOutcome part = reduced ? rpa_unit(n, pre.pairs) : bpa_unit(n, pre.pairs);
                    visited += part.visited;
                    for (const Remainders& rem : part.sequences) rec.offer(part.omega, rem);
                }
                CHECK(rec.best() == whole.omega);
                CHECK(rec.sorted_sequences() == whole.sequences);
                // Placement subtrees are disjoint, so the branch visits add up.
                CHECK(visited == whole.visited);
            }
        }
    }
}

TEST_CASE("prefix replay rejects histories the search could not produce") {
    // Anchor 2 is not the first free position at the start.
    CHECK_THROWS_AS(bpa_unit(6, {3, 2}), std::invalid_argument);
    // Odd-length pair list.
    CHECK_THROWS_AS(bpa_unit(6, {3}), std::invalid_argument);
    // 4 is not a member of the prime set.
    CHECK_THROWS_AS(bpa_unit(6, {4, 1}), std::invalid_argument);
    // Same prime twice.
    CHECK_THROWS_AS(bpa_unit(6, {3, 1, 3, 2}), std::invalid_argument);
    // More pairs than primes.
    CHECK_THROWS_AS(bpa_unit(4, {3, 1, 5, 2, 7, 3, 11, 4}), std::invalid_argument);
    // A non-canonical history is replayable by the plain search but not the
    // guarded one: with 5 on anchor 1, putting 3 on anchor 4 re-derives a
    // cover already found with 3 on anchor 1.
    std::vector<int> shadowed{5, 1, 7, 2, 11, 3, 3, 4};
    CHECK(bpa_unit(6, shadowed).omega >= 0);
    CHECK_THROWS_AS(rpa_unit(6, shadowed), std::invalid_argument);
}

TEST_CASE("prefix generation validates its arguments") {
    CHECK_THROWS_AS(perm_prefixes(6, 0, false, 10), std::invalid_argument);
    CHECK_THROWS_AS(perm_prefixes(6, 5, false, 10), std::invalid_argument);
    CHECK_THROWS_AS(perm_prefixes(6, 2, false, 0), std::invalid_argument);
    auto ps = perm_prefixes(6, 1, false, 10);
    // First placement: one pair per odd prime, all anchored at 1.
    CHECK(ps.size() == 5);
    for (const PermPrefix& pre : ps) {
        REQUIRE(pre.pairs.size() == 2);
        CHECK(pre.pairs[1] == 1);
        CHECK(pre.psi >= 1);
    }
}

TEST_CASE("default working length covers the known answer with slack") {
    for (int n = 2; n <= 14; ++n) {
        const KnownRow* row = known_row(n);
        REQUIRE(row != nullptr);
        CHECK(default_array_length(n, 0) > row->omega);
        CHECK(default_array_length(n, row->omega + 5) > row->omega + 5);
    }
}
