#include "jac/coverage.hpp"

#include <bit>
#include <string>

namespace jac {

CoverageArray::CoverageArray(int length) : length_(length) {
    if (length < 1) throw std::invalid_argument("CoverageArray: length must be >= 1");
    words_.assign(static_cast<std::size_t>((length + 63) / 64), 0);
    // Mark the padding bits beyond `length` so next_free never lands there.
    int tail = length & 63;
    if (tail != 0) words_.back() = ~0ULL << tail;
}

int CoverageArray::fill_class(int cls, int p, int window) {
    int r = cls % p;
    if (r == 0)
        throw std::invalid_argument("fill_class: class is 0 mod " + std::to_string(p));
    if (r < 0) r += p;
    int fresh = 0;
    for (int q = r; q <= length_; q += p) {
        std::size_t w = static_cast<std::size_t>(q - 1) >> 6;
        std::uint64_t bit = 1ULL << ((q - 1) & 63);
        if (q <= window && !(words_[w] & bit)) ++fresh;
        words_[w] |= bit;
    }
    return fresh;
}

int CoverageArray::next_free() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t inv = ~words_[w];
        if (inv != 0)
            return static_cast<int>(w * 64) + std::countr_zero(inv) + 1;
    }
    return length_ + 1;
}

int CoverageArray::psi(int m) const {
    if (m <= 0) return 0;
    if (m > length_) throw std::out_of_range("CoverageArray::psi: m beyond length");
    int full = m >> 6;
    int count = 0;
    for (int w = 0; w < full; ++w) count += std::popcount(words_[static_cast<std::size_t>(w)]);
    int tail = m & 63;
    if (tail != 0)
        count += std::popcount(words_[static_cast<std::size_t>(full)] & ((1ULL << tail) - 1));
    return count;
}

CoverageArray::Window CoverageArray::reduced_window(int m) const {
    int covered = psi(m);
    if (covered == m) return {0, 0};
    int first = next_free();  // <= m because the window is not fully covered
    int last = 0;
    for (int w = (m - 1) >> 6; w >= 0; --w) {
        std::uint64_t inv = ~words_[static_cast<std::size_t>(w)];
        if (w == (m - 1) >> 6) {
            int tail = m & 63;
            if (tail != 0) inv &= (1ULL << tail) - 1;
        }
        if (inv != 0) {
            last = w * 64 + 63 - std::countl_zero(inv) + 1;
            break;
        }
    }
    int m_star = last - first + 1;
    return {m_star, m_star - (m - covered)};
}

BigUint reconstruct_offset(const std::vector<int>& remainders, const PrimeSet& primes) {
    if (remainders.size() != primes.odd().size())
        throw std::invalid_argument("reconstruct_offset: remainder count != odd prime count");
    BigUint a(0), modulus(1);
    for (std::size_t i = 0; i < remainders.size(); ++i) {
        std::uint64_t p = static_cast<std::uint64_t>(primes.odd()[i]);
        int ai = remainders[i];
        if (ai <= 0 || ai >= static_cast<int>(p))
            throw std::invalid_argument("reconstruct_offset: remainder out of range");
        std::uint64_t target = (p - static_cast<std::uint64_t>(ai)) % p;  // -a_i mod p
        std::uint64_t cur = a.mod_small(p);
        std::uint64_t delta = (target + p - cur) % p;
        // step = delta / modulus (mod p); modulus is coprime to p
        std::uint64_t minv = 1, base = modulus.mod_small(p) % p, e = p - 2;
        while (e > 0) {  // Fermat inverse, p prime
            if (e & 1) minv = minv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        std::uint64_t step = delta * minv % p;
        BigUint add = modulus;
        add.mul_small(step);
        a.add(add);
        modulus.mul_small(p);
    }
    return a;
}

}  // namespace jac
