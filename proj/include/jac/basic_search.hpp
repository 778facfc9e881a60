#pragma once
// Exhaustive searches for maximal covered prefixes, in the three equivalent
// views of the problem:
//
//   bsa — residue enumeration: every non-zero class per odd prime, in prime
//         order. Exact but factorial-size: prod(p_i - 1) leaves.
//   bpa — permutation enumeration: primes are placed one at a time on the
//         first still-free position (the anchor), skipping primes whose class
//         would be zero there. Visits every placement order, so the same
//         cover is found repeatedly; results are deduplicated.
//   rpa — bpa plus a canonicality guard that keeps, of all placement orders
//         producing one cover, only the one that always puts the smallest
//         possible prime on each anchor.
//
// All three agree on omega and on the sequence set; they differ only in cost.

#include "jac/search.hpp"

namespace jac {

// initial_length = 0 picks a default working-array size (the known reference
// value plus slack when available). Arrays grow and the search restarts if a
// run ever needs more room.
SearchOutcome bsa(int n, int initial_length = 0);  // 2 <= n <= 9
SearchOutcome bpa(int n, int initial_length = 0);  // 2 <= n <= 10
SearchOutcome rpa(int n, int initial_length = 0);  // 2 <= n <= 12

// The rpa canonicality test, exposed for direct checks: placing prime p on
// `anchor` is skipped when some earlier anchor is congruent to this one
// mod p while the prime placed there is larger than p (the cover would
// already have been enumerated with p sitting on that earlier anchor).
bool rpa_skip_placement(const std::vector<int>& earlier_primes,
                        const std::vector<int>& earlier_anchors, int p, int anchor);

// Work-unit entry points. A placement prefix is a flat (prime, anchor,
// prime, anchor, ...) list; replaying it must land every prime on the first
// free position of its step, or the prefix is rejected.
SearchOutcome bpa_unit(int n, const std::vector<int>& pair_prefix, int initial_length = 0);
SearchOutcome rpa_unit(int n, const std::vector<int>& pair_prefix, int initial_length = 0);

// All branches of the placement search with exactly `placements` primes down,
// as pair prefixes, each with its covered count on 1..window (the work-unit
// ordering key).
struct PermPrefix {
    std::vector<int> pairs;
    int psi = 0;
};
std::vector<PermPrefix> perm_prefixes(int n, int placements, bool reduced, int window);

// Default working-array length for prime index n given a tentative length
// seed (0 = none): reference omega plus slack when known, else a heuristic.
int default_array_length(int n, int m0);

}  // namespace jac
