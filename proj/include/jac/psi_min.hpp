#pragma once
// Worst-case coverage bounds used for branch pruning.
//
// psi_min(m, k) is the minimum number of positions of a length-m window that
// the primes p_2..p_k can mark, minimized over every residue choice including
// the zero class (equivalently over all integer offsets). It is exhaustively
// brute-forced once and tabulated; k = 1 means no primes and is always 0.
//
// From the table, the largest possible number of *new* positions a prime p_k
// can mark in a length-m window is bounded by
//     r(m, p_k) - psi_min(r(m, p_k), t)      for any t < k within the table,
// where r(m, p) = 1 + floor((m-1)/p) counts the multiples of p that can fall
// into the window. Summing the bound over all pending primes and comparing
// against the number of still-uncovered positions gives the discard test.

#include <string>
#include <vector>

namespace jac {

struct PsiMinTable {
    int max_m = 0;
    int max_k = 0;
    // value for window length m (1..max_m) and prime depth k (1..max_k)
    int value(int m, int k) const;
    std::vector<int> data;  // row-major: data[(m-1)*max_k + (k-1)]
};

// Exhaustive enumeration over all residue tuples of p_2..p_max_k. Guarded at
// max_k <= 8 and max_m <= 500 (the enumeration is a product of the primes).
PsiMinTable compute_psi_min(int max_m, int max_k, bool allow_large = false);

void save_psi_min(const PsiMinTable& table, const std::string& path);
PsiMinTable load_psi_min(const std::string& path);

// Count of multiples of p that can intersect a window of m consecutive
// positions: 1 + floor((m-1)/p). m >= 1.
int r_multiples(int m, int p);

// Upper bound on the newly-covered count of prime p_k in a length-m window,
// with all of p_2..p_{k-1} already placed. Uses the deepest table row
// available below k.
int nu_max_bound(int m, int k, const PsiMinTable& table);

// State of a partially filled window: the first k-1 primes are placed and
// cover psi_prefix of the m window positions; primes p_k..p_n are pending;
// t is the psi_min depth to bound with (t < k, clamped to the table).
struct CriterionContext {
    int m;
    int psi_prefix;
    int k;
    int n;
    int t;
};

// True when the pending primes cannot possibly cover the remaining
// m - psi_prefix positions, i.e. the branch is hopeless and may be discarded.
bool criterion_discard(const CriterionContext& ctx, const PsiMinTable& table);

}  // namespace jac
