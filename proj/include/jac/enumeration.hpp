#pragma once

#include "jac/primes.hpp"
#include "jac/search.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jac {

// A maximum-length sequence in three equivalent descriptions:
//  - remainders: one nonzero residue a_i per odd prime, whose classes cover 1..m;
//  - moduli: for each position q in 1..m the smallest prime covering it;
//  - placement: an ordering of the odd primes where each prime is assigned to
//    the first position left free by its predecessors (anchors strictly increase).
struct SequenceRecord {
    int n = 0;
    int m = 0;
    Remainders remainders;        // a_2..a_n
    std::vector<int> moduli;      // moduli[q-1], q in 1..m
    std::vector<int> perm_primes; // pi_2..pi_n
    std::vector<int> perm_anchors;// q_2..q_n, q_2 = 1
};

struct PermutationPart {
    std::vector<int> primes;
    std::vector<int> anchors;
};

// Walks first-free positions, each time placing the smallest not-yet-used prime
// whose class contains the position. Throws std::invalid_argument if the
// remainders do not cover 1..m or the walk finishes with unplaced primes.
PermutationPart remainders_to_permutation(const Remainders& rem, int m, const PrimeSet& primes);

// Inverse direction: a_i = q_j mod p_i for the placement (pi_j, q_j) with pi_j = p_i.
Remainders permutation_to_remainders(const PermutationPart& perm, const PrimeSet& primes);

// moduli[q-1] = smallest prime whose class contains q. Throws if some position
// is uncovered.
std::vector<int> minimal_moduli(const Remainders& rem, int m, const PrimeSet& primes);

// Builds all three representations from the remainder tuple and cross-checks
// them. Throws std::invalid_argument on any inconsistency.
SequenceRecord make_record(int n, int m, const Remainders& rem);

// Re-derives every representation from the remainders and compares.
bool validate_record(const SequenceRecord& rec);

// The mirrored cover b_i = m+1-a_i mod p_i, reduced into 1..p_i-1. Mirroring a
// maximal cover yields a maximal cover, so the result is built with make_record.
SequenceRecord reverse_record(const SequenceRecord& rec);

// One record per sequence of the outcome, in the recorder's canonical order
// (lexicographically ascending remainders).
std::vector<SequenceRecord> build_records(const SearchOutcome& out);

enum class ExportKind { remainders, moduli, permutations };

// Writes one section: a `# n=<n> omega=<m> count=<c>` header line followed by
// one space-separated line per record. Record order is the input order, so all
// three kinds stay aligned line-by-line. For `permutations` each line holds
// pi_2..pi_n followed by q_2..q_n.
void export_records(int n, int omega, const std::vector<SequenceRecord>& records,
                    ExportKind kind, std::ostream& os);

// Writes remainders.txt, moduli.txt and permutations.txt into dir.
// Returns the three paths written.
std::vector<std::string> export_record_files(int n, int omega,
                                             const std::vector<SequenceRecord>& records,
                                             const std::string& dir);

} // namespace jac
