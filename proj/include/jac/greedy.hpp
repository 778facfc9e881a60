#pragma once
// Greedy permutation search. The first levels fill residues sequentially;
// from level k_star on, every step picks the (prime, class) pair covering the
// most still-uncovered window positions, recurses, blocks the consumed pair
// and re-selects. Blocked pairs travel down with the table copy, so no two
// branches examine the same combination twice.
//
// A branch is rejected when even the optimistic per-prime maxima cannot cover
// what is left:  sum over pending p of rho_max(p)  <  |uncovered|.
//
// The search runs at a fixed window length w and repeats: starting from the
// seed m0, w is raised by one as long as some branch covers 1..w completely
// (each such probe aborts at its first witness). The first w that fails
// proves omega = w-1, and one final pass at that window collects every
// maximal sequence. A node whose window is already full falls back to plain
// enumeration of all residue choices for its pending primes; they are free.

#include <atomic>
#include <vector>

#include "jac/coverage.hpp"
#include "jac/discarding.hpp"
#include "jac/search.hpp"

namespace jac {

// Exact per-class tallies of the uncovered positions, one row per pending
// prime: counts[i][r] = |{ q <= m uncovered, q ≡ r (mod primes[i]) }| for
// r in 1..primes[i]-1. A blocked class keeps its true count but is invisible
// to rho_max and to the greedy selection.
struct FrequencyTable {
    std::vector<int> primes;
    std::vector<std::vector<int>> counts;    // counts[i][0] stays 0
    std::vector<std::vector<char>> blocked;  // same shape

    int rho_max(int i) const;
    void block(int i, int r);
};

FrequencyTable build_frequency_table(const CoverageArray& arr, int m,
                                     const std::vector<int>& pending);

bool criterion5_discard(const FrequencyTable& ftab, int uncovered);

// cfg reuses the DsaConfig fields: k_star is where greedy selection and the
// rejection test take over from sequential filling; t and switch_ratio are
// ignored; use_criterion toggles only the rejection test, not the greedy
// structure.
DsaConfig resolve_gpa_config(int n, DsaConfig cfg);

SearchOutcome gpa(int n, DsaConfig cfg = {});

// Work-unit entry point, mirroring dsa_unit: replay a residue prefix of the
// sequential part and search its subtree. A unit whose subtree cannot reach
// the seed window reports omega = seed-1 with no sequences; the driver drops
// it during the merge.
SearchOutcome gpa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                       std::atomic<int>* shared_best);

}  // namespace jac
