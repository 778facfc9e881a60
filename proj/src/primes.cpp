#include "jac/primes.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jac {

static std::vector<int> sieve_first(int n) {
    // Upper bound for p_n, generous for small n.
    int limit = 16;
    if (n > 6) {
        double nd = n;
        limit = static_cast<int>(nd * (std::log(nd) + std::log(std::log(nd))) * 1.2) + 16;
    }
    std::vector<int> out;
    for (;;) {
        std::vector<char> composite(limit + 1, 0);
        out.clear();
        for (int i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            if (static_cast<int>(out.size()) == n) return out;
            for (long long j = static_cast<long long>(i) * i; j <= limit; j += i)
                composite[static_cast<std::size_t>(j)] = 1;
        }
        limit *= 2;
    }
}

PrimeSet::PrimeSet(int n, bool allow_large) : n_(n) {
    if (n < 1) throw std::invalid_argument("PrimeSet: n must be >= 1");
    if (n > 54 && !allow_large)
        throw std::invalid_argument("PrimeSet: n = " + std::to_string(n) +
                                    " exceeds 54; pass allow_large to override");
    primes_ = sieve_first(n);
    odd_.assign(primes_.begin() + 1, primes_.end());
}

int PrimeSet::prime(int index) const {
    if (index < 1 || index > n_) throw std::out_of_range("PrimeSet::prime index");
    return primes_[static_cast<std::size_t>(index - 1)];
}

std::uint64_t h_from_omega(std::uint64_t omega, int n) {
    if (n < 1) throw std::invalid_argument("h_from_omega: n must be >= 1");
    if (n == 1) return 2;
    return 2 * omega + 2;
}

std::uint64_t j_even_doubling(std::uint64_t j_odd_value) {
    return 2 * j_odd_value;
}

std::uint64_t primorial_half(int n) {
    if (n < 1 || n > 15)
        throw std::invalid_argument("primorial_half: only n in 1..15 fits 64 bits");
    PrimeSet ps(n);
    std::uint64_t prod = 1;
    for (int p : ps.odd()) prod *= static_cast<std::uint64_t>(p);
    return prod;  // p_n# / 2 = product of the odd primes
}

int brute_force_jacobsthal(std::uint64_t modulus) {
    if (modulus == 0 || modulus > 100000000ULL)
        throw std::invalid_argument("brute_force_jacobsthal: modulus out of range");
    // Longest run of non-coprimes is < modulus, so scanning one period plus a
    // leading wrap-around window of the same length is enough.
    std::uint64_t span = 2 * modulus;
    int run = 0, best = 0;
    for (std::uint64_t x = 1; x <= span; ++x) {
        if (std::gcd(x, modulus) > 1) {
            ++run;
            if (run > best) best = run;
        } else {
            run = 0;
        }
    }
    return best + 1;
}

}  // namespace jac
