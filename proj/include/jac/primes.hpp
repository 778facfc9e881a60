#pragma once
// Prime indexing and the elementary Jacobsthal-function identities.
//
// Convention used across the whole library: primes are 1-based, p_1 = 2,
// p_2 = 3, ... A "prime index" n always refers to this numbering. The search
// code works on the odd slice p_2..p_n exclusively; the factor 2 enters only
// through the doubling identity.

#include <cstdint>
#include <vector>

namespace jac {

// First n primes. n beyond 54 (p_54 = 251) is refused unless allow_large is
// set: larger runs are far outside what the search algorithms finish, and an
// accidental huge n should fail fast.
class PrimeSet {
public:
    explicit PrimeSet(int n, bool allow_large = false);

    int n() const { return n_; }
    int prime(int index) const;                    // 1-based, prime(1) == 2
    const std::vector<int>& odd() const { return odd_; }  // p_2..p_n
    int max_prime() const { return primes_.back(); }

private:
    int n_ = 0;
    std::vector<int> primes_;
    std::vector<int> odd_;
};

// h(n) = j(p_n#) from the condensed value: h(1) = 2, h(n) = 2*omega + 2.
std::uint64_t h_from_omega(std::uint64_t omega, int n);

// j(2u) = 2*j(u) for odd u.
std::uint64_t j_even_doubling(std::uint64_t j_odd_value);

// p_n# / 2 as a plain integer; fits in 64 bits for n <= 15 (guarded).
std::uint64_t primorial_half(int n);

// j(m) by definition: one more than the longest run of consecutive integers
// all sharing a factor with m. Direct scan over one period (plus wrap), so
// only sensible for small moduli (guarded at 1e8).
int brute_force_jacobsthal(std::uint64_t modulus);

}  // namespace jac
