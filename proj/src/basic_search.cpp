#include "jac/basic_search.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "jac/coverage.hpp"
#include "jac/known_values.hpp"
#include "jac/primes.hpp"

namespace jac {

int default_array_length(int n, int m0) {
    const KnownRow* row = known_row(n);
    int base = row && row->omega > 0
                   ? row->omega + 16
                   : static_cast<int>(4.0 * n * std::log(std::max(n, 2))) + 16;
    PrimeSet ps(n, true);
    int floor_len = std::max(m0, 1) + ps.max_prime() + 1;
    return std::max(base, floor_len);
}

static void check_n(const char* algo, int n, int limit) {
    if (n < 2 || n > limit)
        throw std::invalid_argument(std::string(algo) + ": n must be in 2.." +
                                    std::to_string(limit) +
                                    (n > limit ? "; dsa, crpdsa and gpa handle larger n" : ""));
}

namespace {

// Measures a complete assignment: length of the covered prefix. Throws when
// the array is too small to see the first free position.
int measure(const CoverageArray& arr) {
    int f = arr.next_free();
    if (f > arr.length()) throw CapacityExhausted();
    return f - 1;
}

struct BsaEngine {
    const std::vector<int>& odd;
    int levels;
    std::vector<CoverageArray> buf;  // buf[k] = state before level k fills
    Remainders rem;
    SequenceRecorder rec;
    std::uint64_t visited = 0;

    BsaEngine(const std::vector<int>& odd_primes, int length)
        : odd(odd_primes),
          levels(static_cast<int>(odd_primes.size())),
          buf(static_cast<std::size_t>(levels) + 1, CoverageArray(length)),
          rem(odd_primes.size(), 0) {}

    void descend(int k) {
        int p = odd[static_cast<std::size_t>(k)];
        bool last = (k + 1 == levels);
        for (int r = 1; r < p; ++r) {
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(r, p);
            rem[static_cast<std::size_t>(k)] = r;
            if (last) {
                ++visited;
                rec.offer(measure(child), rem);
            } else {
                descend(k + 1);
            }
        }
    }
};

struct PermEngine {
    const std::vector<int>& odd;
    int levels;
    bool reduced;  // apply the canonicality guard (rpa) or not (bpa)
    std::vector<CoverageArray> buf;
    std::vector<std::vector<int>> slots;  // per-level prime orderings
    std::vector<int> placed_prime;
    std::vector<int> placed_anchor;
    std::vector<int> odd_index;  // prime value -> position in odd list
    Remainders rem;
    SequenceRecorder rec;
    std::uint64_t visited = 0;

    PermEngine(const std::vector<int>& odd_primes, int length, bool reduced_mode)
        : odd(odd_primes),
          levels(static_cast<int>(odd_primes.size())),
          reduced(reduced_mode),
          buf(static_cast<std::size_t>(levels) + 1, CoverageArray(length)),
          slots(static_cast<std::size_t>(levels) + 1, odd_primes),
          placed_prime(odd_primes.size(), 0),
          placed_anchor(odd_primes.size(), 0),
          rem(odd_primes.size(), 0) {
        odd_index.assign(static_cast<std::size_t>(odd_primes.back()) + 1, -1);
        for (int i = 0; i < levels; ++i)
            odd_index[static_cast<std::size_t>(odd_primes[static_cast<std::size_t>(i)])] = i;
    }

    void record_leaf(const CoverageArray& arr) {
        ++visited;
        int len = measure(arr);
        for (int j = 0; j < levels; ++j) {
            int p = placed_prime[static_cast<std::size_t>(j)];
            rem[static_cast<std::size_t>(odd_index[static_cast<std::size_t>(p)])] =
                placed_anchor[static_cast<std::size_t>(j)] % p;
        }
        rec.offer(len, rem);
    }

    bool skip_here(int k, int p, int anchor) const {
        if (!reduced) return false;
        for (int j = 0; j < k; ++j)
            if (placed_anchor[static_cast<std::size_t>(j)] % p == anchor % p &&
                placed_prime[static_cast<std::size_t>(j)] > p)
                return true;
        return false;
    }

    void descend(int k, int anchor) {
        bool last = (k + 1 == levels);
        const auto& order = slots[static_cast<std::size_t>(k)];
        for (int i = k; i < levels; ++i) {
            int p = order[static_cast<std::size_t>(i)];
            if (anchor % p == 0) continue;
            if (skip_here(k, p, anchor)) continue;
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(anchor, p);
            placed_prime[static_cast<std::size_t>(k)] = p;
            placed_anchor[static_cast<std::size_t>(k)] = anchor;
            if (last) {
                record_leaf(child);
            } else {
                auto& next_order = slots[static_cast<std::size_t>(k) + 1];
                next_order = order;
                std::swap(next_order[static_cast<std::size_t>(k)],
                          next_order[static_cast<std::size_t>(i)]);
                int next_anchor = child.next_free();
                if (next_anchor > child.length()) throw CapacityExhausted();
                descend(k + 1, next_anchor);
            }
        }
    }

    // Forces the first pairs.size()/2 placements. Returns the depth reached.
    int replay(const std::vector<int>& pairs) {
        if (pairs.size() % 2 != 0)
            throw std::invalid_argument("placement prefix must list (prime, anchor) pairs");
        int k = 0;
        for (std::size_t x = 0; x + 1 < pairs.size(); x += 2) {
            int p = pairs[x];
            int anchor = pairs[x + 1];
            if (k >= levels)
                throw std::invalid_argument("placement prefix longer than the prime set");
            int expected = buf[static_cast<std::size_t>(k)].next_free();
            if (expected > buf[static_cast<std::size_t>(k)].length()) throw CapacityExhausted();
            if (anchor != expected)
                throw std::invalid_argument("placement prefix anchor " + std::to_string(anchor) +
                                            " is not the first free position");
            auto& order = slots[static_cast<std::size_t>(k)];
            int at = -1;
            for (int i = k; i < levels; ++i)
                if (order[static_cast<std::size_t>(i)] == p) {
                    at = i;
                    break;
                }
            if (at < 0)
                throw std::invalid_argument("placement prefix reuses or lacks prime " +
                                            std::to_string(p));
            if (anchor % p == 0 || skip_here(k, p, anchor))
                throw std::invalid_argument("placement prefix pair (" + std::to_string(p) + ", " +
                                            std::to_string(anchor) + ") is never enumerated");
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(anchor, p);
            placed_prime[static_cast<std::size_t>(k)] = p;
            placed_anchor[static_cast<std::size_t>(k)] = anchor;
            auto& next_order = slots[static_cast<std::size_t>(k) + 1];
            next_order = order;
            std::swap(next_order[static_cast<std::size_t>(k)],
                      next_order[static_cast<std::size_t>(at)]);
            ++k;
        }
        return k;
    }

    // descend, but stop at `target` placements and collect the branch points.
    void collect(int k, int anchor, int target, int window, std::vector<PermPrefix>& out) {
        const auto& order = slots[static_cast<std::size_t>(k)];
        for (int i = k; i < levels; ++i) {
            int p = order[static_cast<std::size_t>(i)];
            if (anchor % p == 0) continue;
            if (skip_here(k, p, anchor)) continue;
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(anchor, p);
            placed_prime[static_cast<std::size_t>(k)] = p;
            placed_anchor[static_cast<std::size_t>(k)] = anchor;
            if (k + 1 == target) {
                PermPrefix pp;
                for (int j = 0; j <= k; ++j) {
                    pp.pairs.push_back(placed_prime[static_cast<std::size_t>(j)]);
                    pp.pairs.push_back(placed_anchor[static_cast<std::size_t>(j)]);
                }
                pp.psi = child.psi(window);
                out.push_back(std::move(pp));
            } else {
                auto& next_order = slots[static_cast<std::size_t>(k) + 1];
                next_order = order;
                std::swap(next_order[static_cast<std::size_t>(k)],
                          next_order[static_cast<std::size_t>(i)]);
                int next_anchor = child.next_free();
                if (next_anchor > child.length()) throw CapacityExhausted();
                collect(k + 1, next_anchor, target, window, out);
            }
        }
    }
};

template <typename Run>
SearchOutcome with_growth(int length, Run run) {
    for (;;) {
        try {
            return run(length);
        } catch (const CapacityExhausted&) {
            length *= 2;
        }
    }
}

}  // namespace

bool rpa_skip_placement(const std::vector<int>& earlier_primes,
                        const std::vector<int>& earlier_anchors, int p, int anchor) {
    if (earlier_primes.size() != earlier_anchors.size())
        throw std::invalid_argument("rpa_skip_placement: mismatched history");
    for (std::size_t j = 0; j < earlier_primes.size(); ++j)
        if (earlier_anchors[j] % p == anchor % p && earlier_primes[j] > p) return true;
    return false;
}

SearchOutcome bsa(int n, int initial_length) {
    if (n > 9 && n <= 54) {
        PrimeSet all(n, true);
        double leaves = 1;
        for (int i = 2; i <= n; ++i) leaves *= all.prime(i) - 1;
        char approx[32];
        std::snprintf(approx, sizeof approx, "%.3g", leaves);
        throw std::invalid_argument(
            "bsa: n must be in 2..9; the full enumeration would measure about " +
            std::string(approx) + " complete assignments (prod of p_i - 1); "
            "use rpa, dsa, crpdsa or gpa instead");
    }
    check_n("bsa", n, 9);
    PrimeSet ps(n);
    int length = initial_length > 0 ? initial_length : default_array_length(n, 0);
    return with_growth(length, [&](int len) {
        BsaEngine e(ps.odd(), len);
        e.descend(0);
        return SearchOutcome{n, e.rec.best(), e.rec.sorted_sequences(), e.visited};
    });
}

static SearchOutcome run_perm(int n, int initial_length, bool reduced,
                              const std::vector<int>& pair_prefix = {}) {
    PrimeSet ps(n);
    int length = initial_length > 0 ? initial_length : default_array_length(n, 0);
    return with_growth(length, [&](int len) {
        PermEngine e(ps.odd(), len, reduced);
        int k = e.replay(pair_prefix);
        if (k == e.levels) {
            e.record_leaf(e.buf[static_cast<std::size_t>(k)]);
        } else {
            int anchor = e.buf[static_cast<std::size_t>(k)].next_free();
            if (anchor > len) throw CapacityExhausted();
            e.descend(k, anchor);
        }
        return SearchOutcome{n, e.rec.best(), e.rec.sorted_sequences(), e.visited};
    });
}

SearchOutcome bpa(int n, int initial_length) {
    check_n("bpa", n, 10);
    return run_perm(n, initial_length, false);
}

SearchOutcome rpa(int n, int initial_length) {
    check_n("rpa", n, 12);
    return run_perm(n, initial_length, true);
}

SearchOutcome bpa_unit(int n, const std::vector<int>& pair_prefix, int initial_length) {
    check_n("bpa", n, 10);
    return run_perm(n, initial_length, false, pair_prefix);
}

SearchOutcome rpa_unit(int n, const std::vector<int>& pair_prefix, int initial_length) {
    check_n("rpa", n, 12);
    return run_perm(n, initial_length, true, pair_prefix);
}

std::vector<PermPrefix> perm_prefixes(int n, int placements, bool reduced, int window) {
    check_n(reduced ? "rpa" : "bpa", n, reduced ? 12 : 10);
    if (placements < 1 || placements >= n - 1)
        throw std::invalid_argument("prefix depth must be in 1..n-2");
    if (window < 1) throw std::invalid_argument("ordering window must be >= 1");
    PrimeSet ps(n);
    int length = std::max(default_array_length(n, 0), window);
    for (;;) {
        try {
            std::vector<PermPrefix> out;
            PermEngine e(ps.odd(), length, reduced);
            e.collect(0, 1, placements, window, out);
            return out;
        } catch (const CapacityExhausted&) {
            length *= 2;
        }
    }
}

}  // namespace jac
