#pragma once
// Pruned exhaustive searches. Both engines keep a tentative window length m,
// seeded with m0 and raised whenever a longer cover is found, and discard a
// branch as soon as the pending primes provably cannot cover what is left of
// the reduced window:
//
//     sum over pending p of [ r(m*,p) - psi_min(r(m*,p), t) ]  <  m* - psi*
//
// dsa enumerates residues prime by prime in index order and applies the test
// at every level from k_star on. crpdsa runs the same way for the small
// primes (below p_n * switch_ratio) and then places the remaining large
// primes at first-free anchors in every canonical order, reusing the
// equivalence guard of rpa; the test is applied in both phases.

#include <atomic>
#include <vector>

#include "jac/psi_min.hpp"
#include "jac/search.hpp"

namespace jac {

struct DsaConfig {
    int k_star = 0;  // level where discard checks begin; 0 = pick a default
    int t = 0;       // psi_min depth used by the bound; 0 = pick a default
    int m0 = 0;      // seed window length; 0 = known omega(n-1)+1, fallback 1
    double switch_ratio = 1.0 / 3.0;  // crpdsa: p < p_n*ratio runs sequentially
    bool use_criterion = true;        // false: plain exhaustive enumeration
    int initial_length = 0;           // working array capacity; 0 = pick a default
};

// Largest prime index s with p_s < p_n * ratio, or 1 when even p_2 fails
// (crpdsa then has no sequential part at all).
int switch_index(int n, double ratio);

// Fills the zero fields with defaults and validates the rest. combined
// selects the crpdsa rules: when a sequential part exists, k_star must fall
// inside it. Throws std::invalid_argument on misconfiguration.
DsaConfig resolve_dsa_config(int n, DsaConfig cfg, const PsiMinTable* table, bool combined);

// table may be null; a sufficient table is then computed on the fly.
SearchOutcome dsa(int n, DsaConfig cfg = {}, const PsiMinTable* table = nullptr);
SearchOutcome crpdsa(int n, DsaConfig cfg = {}, const PsiMinTable* table = nullptr);

// Work-unit entry points: replay a fixed residue prefix (one residue per odd
// prime, in index order) and search only the subtree below it. The prefix
// must not extend past the sequential part. shared_best, when non-null, is
// read as an extra lower bound for the window and updated on improvement, so
// concurrent units can prune against each other.
SearchOutcome dsa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                       const PsiMinTable* table, std::atomic<int>* shared_best);
SearchOutcome crpdsa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                          const PsiMinTable* table, std::atomic<int>* shared_best);

// All depth-`depth` residue prefixes that survive the discard test at the
// seed window, each with its covered count on 1..m0 (the work-unit ordering
// key). With use_criterion off every tuple survives. combined selects the
// crpdsa layout, whose sequential part bounds the depth.
struct ResiduePrefix {
    std::vector<int> residues;
    int psi = 0;
};
std::vector<ResiduePrefix> residue_prefixes(int n, int depth, const DsaConfig& cfg,
                                            const PsiMinTable* table, bool combined);

}  // namespace jac
