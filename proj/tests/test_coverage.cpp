// Bitset coverage array against a naive boolean-vector reference, and
// remainder-tuple offset reconstruction (round trip plus a pinned value).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "jac/bigint.hpp"
#include "jac/coverage.hpp"
#include "jac/primes.hpp"

using namespace jac;

namespace {

// Transparent re-implementation used as the comparison oracle.
struct NaiveArray {
    std::vector<char> marked;  // index 1..length
    explicit NaiveArray(int length) : marked(static_cast<std::size_t>(length) + 1, 0) {}
    int length() const { return static_cast<int>(marked.size()) - 1; }
    int fill_class(int cls, int p, int window) {
        int r = cls % p;
        if (r < 0) r += p;
        int fresh = 0;
        for (int q = r; q <= length(); q += p) {
            if (q <= window && !marked[static_cast<std::size_t>(q)]) ++fresh;
            marked[static_cast<std::size_t>(q)] = 1;
        }
        return fresh;
    }
    int next_free() const {
        for (int q = 1; q <= length(); ++q)
            if (!marked[static_cast<std::size_t>(q)]) return q;
        return length() + 1;
    }
    int psi(int m) const {
        int c = 0;
        for (int q = 1; q <= m; ++q) c += marked[static_cast<std::size_t>(q)];
        return c;
    }
    CoverageArray::Window reduced_window(int m) const {
        int first = 0, last = 0;
        for (int q = 1; q <= m; ++q)
            if (!marked[static_cast<std::size_t>(q)]) {
                if (first == 0) first = q;
                last = q;
            }
        if (first == 0) return {0, 0};
        int m_star = last - first + 1;
        return {m_star, m_star - (m - psi(m))};
    }
};

}  // namespace

TEST_CASE("marks, counts and windows agree with a naive reference") {
    std::mt19937 rng(20240811);
    for (int round = 0; round < 200; ++round) {
        int length = 1 + static_cast<int>(rng() % 200);
        CoverageArray fast(length);
        NaiveArray slow(length);
        CHECK(fast.next_free() == 1);
        for (int step = 0; step < 12; ++step) {
            int p = 2 + static_cast<int>(rng() % 30);
            int cls = 1 + static_cast<int>(rng() % (2 * p - 1));
            if (cls % p == 0) cls += 1;
            int window = static_cast<int>(rng() % (length + 1));
            CHECK(fast.fill_class(cls, p, window) == slow.fill_class(cls, p, window));
        }
        CHECK(fast.next_free() == slow.next_free());
        int m = 1 + static_cast<int>(rng() % length);
        CHECK(fast.psi(m) == slow.psi(m));
        auto fw = fast.reduced_window(m);
        auto sw = slow.reduced_window(m);
        CHECK(fw.m_star == sw.m_star);
        CHECK(fw.psi_star == sw.psi_star);
        for (int q = 1; q <= length; ++q)
            CHECK(fast.test(q) == static_cast<bool>(slow.marked[static_cast<std::size_t>(q)]));
    }
}

TEST_CASE("word-boundary lengths behave") {
    for (int length : {63, 64, 65, 127, 128, 129}) {
        CoverageArray arr(length);
        for (int q = 1; q <= length; ++q) arr.set(q);
        CHECK(arr.psi(length) == length);
        CHECK(arr.next_free() == length + 1);
        auto w = arr.reduced_window(length);
        CHECK(w.m_star == 0);
    }
}

TEST_CASE("zero classes are rejected, anchors beyond p are folded") {
    CoverageArray arr(20);
    CHECK_THROWS_AS(arr.fill_class(0, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(arr.fill_class(10, 5, 0), std::invalid_argument);
    arr.fill_class(7, 5, 0);  // same class as 2 mod 5
    CHECK(arr.test(2));
    CHECK(arr.test(7));
    CHECK(arr.test(12));
    CHECK(arr.test(17));
    CHECK(arr.psi(20) == 4);
    CHECK_THROWS_AS(CoverageArray(0), std::invalid_argument);
    CHECK_THROWS_AS(arr.psi(21), std::out_of_range);
}

TEST_CASE("reduced window drops the covered margins only") {
    CoverageArray arr(30);
    arr.fill_class(1, 3, 0);  // covers 1,4,7,...
    auto w = arr.reduced_window(10);
    // free positions in 1..10: 2,3,5,6,8,9 -> span 2..9, eight wide, two covered
    CHECK(w.m_star == 8);
    CHECK(w.psi_star == 2);
}

TEST_CASE("pinned offset of the published length-10 cover") {
    // Remainders (1,3,2,5,6) for the six-prime run: the matching offset is
    // 12227, i.e. 12227+q is divisible by an odd prime <= 13 for q = 1..10.
    PrimeSet primes(6);
    BigUint a = reconstruct_offset({1, 3, 2, 5, 6}, primes);
    REQUIRE(a.fits_u64());
    CHECK(a.to_u64() == 12227);
    CHECK(a.to_string() == "12227");
    for (int q = 1; q <= 10; ++q) {
        bool divisible = false;
        for (int p : primes.odd()) divisible = divisible || (12227 + q) % p == 0;
        CHECK(divisible);
    }
}

TEST_CASE("offset reconstruction round-trips random remainder tuples") {
    std::mt19937 rng(77);
    for (int n : {2, 5, 9, 12, 15}) {
        PrimeSet primes(n);
        for (int round = 0; round < 40; ++round) {
            std::vector<int> rem;
            for (int p : primes.odd()) rem.push_back(1 + static_cast<int>(rng() % (p - 1)));
            BigUint a = reconstruct_offset(rem, primes);
            // Definition: a ≡ -a_i (mod p_i) for every odd prime.
            for (std::size_t i = 0; i < rem.size(); ++i) {
                std::uint64_t p = static_cast<std::uint64_t>(primes.odd()[i]);
                CHECK((a.mod_small(p) + static_cast<std::uint64_t>(rem[i])) % p == 0);
            }
            // Minimality: the offset is below the product of the moduli.
            BigUint prod(1);
            for (int p : primes.odd()) prod.mul_small(static_cast<std::uint64_t>(p));
            if (n <= 12) {  // products up to 12 primes fit in 64 bits
                CHECK(a.to_u64() < prod.to_u64());
            }
        }
    }
    CHECK_THROWS_AS(reconstruct_offset({1, 2}, PrimeSet(4)), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_offset({3}, PrimeSet(2)), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_offset({0}, PrimeSet(2)), std::invalid_argument);
}

TEST_CASE("big integers track exact 64-bit arithmetic on random programs") {
    std::mt19937_64 rng(123);
    for (int round = 0; round < 300; ++round) {
        std::uint64_t ref = rng() % 1000000;
        BigUint big(ref);
        for (int step = 0; step < 6; ++step) {
            std::uint64_t f = 1 + rng() % 1000;
            std::uint64_t add = rng() % 100000;
            if (ref <= ~0ULL / f) {  // keep the reference inside 64 bits
                ref = ref * f + add;
                big.mul_small(f);
                big.add_small(add);
            }
        }
        REQUIRE(big.fits_u64());
        CHECK(big.to_u64() == ref);
        CHECK(big.to_string() == std::to_string(ref));
        std::uint64_t m = 1 + rng() % 999983;
        CHECK(big.mod_small(m) == ref % m);
    }
}

TEST_CASE("big integers grow past 64 bits without losing digits") {
    // 2^100 computed by repeated doubling; digits pinned from an independent
    // computation.
    BigUint v(1);
    for (int i = 0; i < 100; ++i) v.mul_small(2);
    CHECK_FALSE(v.fits_u64());
    CHECK(v.to_string() == "1267650600228229401496703205376");
    CHECK(v.mod_small(1000000007ULL) == 976371285ULL);  // 2^100 mod 1e9+7
    BigUint w(0);
    w.add(v);
    CHECK(w == v);
}
