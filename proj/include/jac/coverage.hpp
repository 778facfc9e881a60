#pragma once
// Fixed-capacity coverage bitset over positions 1..length, plus the window
// statistics the pruning rules need and Chinese-remainder offset recovery.
//
// A residue class "cls mod p" marks every position q with q ≡ cls (mod p).
// Classes with cls ≡ 0 (mod p) are rejected: a zero class would mark the
// prime itself, and the whole construction lives on non-zero remainders.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jac/bigint.hpp"
#include "jac/primes.hpp"

namespace jac {

// Thrown when a search needs a position beyond the working array; the caller
// grows the array and restarts.
struct CapacityExhausted : std::runtime_error {
    CapacityExhausted() : std::runtime_error("coverage array capacity exhausted") {}
};

class CoverageArray {
public:
    explicit CoverageArray(int length);

    int length() const { return length_; }
    bool test(int q) const {
        return (words_[static_cast<std::size_t>(q - 1) >> 6] >> ((q - 1) & 63)) & 1u;
    }
    void set(int q) {
        words_[static_cast<std::size_t>(q - 1) >> 6] |= 1ULL << ((q - 1) & 63);
    }

    // Marks the class through the whole array. Returns how many positions in
    // 1..window were newly marked. cls may be an anchor larger than p.
    int fill_class(int cls, int p, int window);
    void fill_class(int cls, int p) { fill_class(cls, p, 0); }

    // Smallest unmarked position, or length+1 if the array is full.
    int next_free() const;

    // Marked count in 1..m.
    int psi(int m) const;

    // Span between the first and last unmarked positions in 1..m. m_star == 0
    // means the window is completely covered. All unmarked positions of 1..m
    // lie inside the span, so psi_star = m_star - (m - psi(m)).
    struct Window {
        int m_star;
        int psi_star;
    };
    Window reduced_window(int m) const;

private:
    int length_;
    std::vector<std::uint64_t> words_;
};

// Smallest non-negative offset a with a + q divisible by p_i exactly for the
// positions q marked by class a_i mod p_i, i.e. a ≡ -a_i (mod p_i) for every
// odd prime of the set. remainders holds a_2..a_n.
BigUint reconstruct_offset(const std::vector<int>& remainders, const PrimeSet& primes);

}  // namespace jac
