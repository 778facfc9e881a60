#include "jac/discarding.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "jac/basic_search.hpp"
#include "jac/coverage.hpp"
#include "jac/known_values.hpp"
#include "jac/primes.hpp"

namespace jac {

int switch_index(int n, double ratio) {
    PrimeSet ps(n, true);
    double boundary = ps.max_prime() * ratio;
    int s = 1;
    for (int i = 2; i <= n; ++i)
        if (ps.prime(i) < boundary) s = i;
    return s;
}

DsaConfig resolve_dsa_config(int n, DsaConfig cfg, const PsiMinTable* table, bool combined) {
    if (n < 2) throw std::invalid_argument("dsa: n must be >= 2");
    if (!(cfg.switch_ratio > 0.0) || cfg.switch_ratio > 1.0)
        throw std::invalid_argument("dsa: switch_ratio must be in (0,1]");
    int s = combined ? switch_index(n, cfg.switch_ratio) : n;
    if (cfg.m0 == 0) {
        const KnownRow* prev = n >= 3 ? known_row(n - 1) : nullptr;
        cfg.m0 = prev && prev->omega > 0 ? prev->omega + 1 : 1;
    }
    if (cfg.m0 < 1) throw std::invalid_argument("dsa: m0 must be >= 1");
    if (cfg.k_star == 0) {
        int k = std::min(8, combined && s >= 2 ? s : n);
        if (cfg.t > 0) k = std::max(k, cfg.t + 1);
        cfg.k_star = std::max(2, k);
    }
    if (cfg.k_star < 2 || cfg.k_star > n + 1)
        throw std::invalid_argument("dsa: k_star must be in 2..n+1");
    if (combined && s >= 2 && cfg.k_star > s)
        throw std::invalid_argument(
            "crpdsa: discard checks must start inside the sequential part (k_star <= " +
            std::to_string(s) + ")");
    if (cfg.t == 0) cfg.t = std::max(1, std::min(cfg.k_star - 1, 7));
    if (table)
        cfg.t = std::max(1, std::min(cfg.t, table->max_k));
    else
        cfg.t = std::min(cfg.t, 7);  // keeps the fallback table computable
    if (cfg.t >= cfg.k_star)
        throw std::invalid_argument("dsa: t must satisfy 1 <= t < k_star");
    PrimeSet ps(n, true);
    int floor_len = cfg.m0 + ps.max_prime() + 1;
    if (cfg.initial_length == 0) cfg.initial_length = default_array_length(n, cfg.m0);
    cfg.initial_length = std::max(cfg.initial_length, floor_len);
    return cfg;
}

namespace {

int measure(const CoverageArray& arr) {
    int f = arr.next_free();
    if (f > arr.length()) throw CapacityExhausted();
    return f - 1;
}

// term[d-1][i][m] = r(m, odd[i]) - psi_min(r, d), the most new positions the
// prime can mark in a length-m window once p_2..p_d are down. suffix[i][m]
// sums the deepest layer over odd[i..]: the pending set of the sequential
// phase is always a suffix, so its criterion check is one lookup.
struct Bounds {
    std::vector<std::vector<std::vector<int>>> term;
    std::vector<std::vector<int>> suffix;
};

Bounds build_bounds(const std::vector<int>& odd, int length, int t, const PsiMinTable* table) {
    if (t >= 2 && !table) throw std::logic_error("build_bounds: depth >= 2 needs a table");
    Bounds b;
    b.term.assign(static_cast<std::size_t>(t), {});
    for (int d = 1; d <= t; ++d) {
        auto& layer = b.term[static_cast<std::size_t>(d) - 1];
        layer.assign(odd.size(), std::vector<int>(static_cast<std::size_t>(length) + 1, 0));
        for (std::size_t i = 0; i < odd.size(); ++i) {
            for (int m = 1; m <= length; ++m) {
                int r = r_multiples(m, odd[i]);
                int covered =
                    d >= 2 ? table->value(std::min(r, table->max_m), std::min(d, table->max_k))
                           : 0;
                layer[i][static_cast<std::size_t>(m)] = r - covered;
            }
        }
    }
    b.suffix.assign(odd.size() + 1, std::vector<int>(static_cast<std::size_t>(length) + 1, 0));
    const auto& deepest = b.term[static_cast<std::size_t>(t) - 1];
    for (std::size_t i = odd.size(); i-- > 0;)
        for (int m = 1; m <= length; ++m)
            b.suffix[i][static_cast<std::size_t>(m)] =
                b.suffix[i + 1][static_cast<std::size_t>(m)] +
                deepest[i][static_cast<std::size_t>(m)];
    return b;
}

struct DiscardEngine {
    const std::vector<int>& odd;
    int levels;
    int seq_levels;  // odd primes filled sequentially; == levels for dsa
    int perm_count;
    const DsaConfig& cfg;
    const Bounds& bounds;
    std::atomic<int>* shared;

    std::vector<CoverageArray> buf;  // buf[d]: state with d primes placed
    Remainders rem;
    SequenceRecorder rec;
    std::uint64_t visited = 0;
    std::uint64_t placed_mask = 0;

    std::vector<std::vector<int>> slots;  // permutation phase: odd-index orderings
    std::vector<int> perm_prime;          // odd index placed at each step
    std::vector<int> perm_anchor;

    DiscardEngine(const std::vector<int>& odd_primes, int seq, const DsaConfig& config,
                  const Bounds& bnd, std::atomic<int>* shared_best, int length)
        : odd(odd_primes),
          levels(static_cast<int>(odd_primes.size())),
          seq_levels(seq),
          perm_count(levels - seq),
          cfg(config),
          bounds(bnd),
          shared(shared_best),
          buf(static_cast<std::size_t>(levels) + 1, CoverageArray(length)),
          rem(odd_primes.size(), 0),
          rec(config.m0 - 1),
          slots(static_cast<std::size_t>(perm_count) + 1),
          perm_prime(static_cast<std::size_t>(perm_count), 0),
          perm_anchor(static_cast<std::size_t>(perm_count), 0) {
        std::vector<int> large;
        for (int i = seq_levels; i < levels; ++i) large.push_back(i);
        for (auto& s : slots) s = large;
    }

    int window() const {
        int m = std::max(cfg.m0, rec.best());
        if (shared) m = std::max(m, shared->load(std::memory_order_relaxed));
        return m;
    }

    void publish(int len) {
        if (!shared) return;
        int cur = shared->load(std::memory_order_relaxed);
        while (cur < len && !shared->compare_exchange_weak(cur, len, std::memory_order_relaxed)) {
        }
    }

    void leaf(const CoverageArray& arr) {
        ++visited;
        int len = measure(arr);
        rec.offer(len, rem);
        publish(len);
    }

    // placed = prime count in arr; pending primes are odd[placed..]
    bool seq_discard(const CoverageArray& arr, int placed) {
        if (!cfg.use_criterion || placed + 2 < cfg.k_star) return false;
        auto w = arr.reduced_window(window());
        if (w.m_star == 0) return false;
        return bounds.suffix[static_cast<std::size_t>(placed)][static_cast<std::size_t>(w.m_star)] <
               w.m_star - w.psi_star;
    }

    // pending primes are order[j..] minus the entry at position chosen
    bool perm_discard(const CoverageArray& arr, const std::vector<int>& order, int j, int chosen) {
        if (!cfg.use_criterion || seq_levels + j + 3 < cfg.k_star) return false;
        auto w = arr.reduced_window(window());
        if (w.m_star == 0) return false;
        int uncovered = w.m_star - w.psi_star;
        int depth = std::min<int>(cfg.t, std::countr_one(placed_mask) + 1);
        const auto& layer = bounds.term[static_cast<std::size_t>(depth) - 1];
        int reach = 0;
        for (int x = j; x < perm_count; ++x) {
            if (x == chosen) continue;
            reach += layer[static_cast<std::size_t>(order[static_cast<std::size_t>(x)])]
                          [static_cast<std::size_t>(w.m_star)];
            if (reach >= uncovered) return false;
        }
        return true;
    }

    bool guard_skip(int steps, int p, int anchor) const {
        for (int x = 0; x < steps; ++x)
            if (perm_anchor[static_cast<std::size_t>(x)] % p == anchor % p &&
                odd[static_cast<std::size_t>(perm_prime[static_cast<std::size_t>(x)])] > p)
                return true;
        return false;
    }

    void enter_perm(const CoverageArray& from) {
        int anchor = from.next_free();
        if (anchor > from.length()) throw CapacityExhausted();
        perm_descend(0, anchor);
    }

    void seq_descend(int k) {
        int p = odd[static_cast<std::size_t>(k)];
        bool last_overall = k + 1 == levels;
        bool last_seq = k + 1 == seq_levels;
        placed_mask |= 1ull << k;
        for (int r = 1; r < p; ++r) {
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(r, p);
            rem[static_cast<std::size_t>(k)] = r;
            if (last_overall) {
                leaf(child);
            } else if (!seq_discard(child, k + 1)) {
                if (last_seq)
                    enter_perm(child);
                else
                    seq_descend(k + 1);
            }
        }
        placed_mask &= ~(1ull << k);
    }

    void perm_descend(int j, int anchor) {
        auto& order = slots[static_cast<std::size_t>(j)];
        bool last = seq_levels + j + 1 == levels;
        for (int i = j; i < perm_count; ++i) {
            int idx = order[static_cast<std::size_t>(i)];
            int p = odd[static_cast<std::size_t>(idx)];
            if (anchor % p == 0) continue;
            if (guard_skip(j, p, anchor)) continue;
            auto& child = buf[static_cast<std::size_t>(seq_levels + j) + 1];
            child = buf[static_cast<std::size_t>(seq_levels + j)];
            child.fill_class(anchor, p);
            rem[static_cast<std::size_t>(idx)] = anchor % p;
            perm_prime[static_cast<std::size_t>(j)] = idx;
            perm_anchor[static_cast<std::size_t>(j)] = anchor;
            placed_mask |= 1ull << idx;
            if (last) {
                leaf(child);
            } else if (!perm_discard(child, order, j, i)) {
                auto& next = slots[static_cast<std::size_t>(j) + 1];
                next = order;
                std::swap(next[static_cast<std::size_t>(j)], next[static_cast<std::size_t>(i)]);
                int na = child.next_free();
                if (na > child.length()) throw CapacityExhausted();
                perm_descend(j + 1, na);
            }
            placed_mask &= ~(1ull << idx);
        }
    }

    void run(const std::vector<int>& prefix) {
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            buf[i + 1] = buf[i];
            buf[i + 1].fill_class(prefix[i], odd[i]);
            rem[i] = prefix[i];
            placed_mask |= 1ull << i;
        }
        int k = static_cast<int>(prefix.size());
        if (k == levels)
            leaf(buf[static_cast<std::size_t>(k)]);
        else if (k >= seq_levels)
            enter_perm(buf[static_cast<std::size_t>(k)]);
        else
            seq_descend(k);
    }
};

SearchOutcome run_discarding(int n, const std::vector<int>& prefix, DsaConfig raw,
                             const PsiMinTable* table, std::atomic<int>* shared, bool combined) {
    DsaConfig cfg = resolve_dsa_config(n, raw, table, combined);
    PrimeSet ps(n);
    const auto& odd = ps.odd();
    int levels = static_cast<int>(odd.size());
    int seq_levels =
        combined ? std::clamp(switch_index(n, cfg.switch_ratio) - 1, 0, levels) : levels;
    if (static_cast<int>(prefix.size()) > seq_levels)
        throw std::invalid_argument("unit prefix extends past the sequential part");
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix[i] < 1 || prefix[i] >= odd[i])
            throw std::invalid_argument("unit prefix residue out of range");
    int length = cfg.initial_length;
    PsiMinTable own;
    for (;;) {
        const PsiMinTable* tab = table;
        if (cfg.use_criterion && cfg.t >= 2 && !tab) {
            int need = std::min(r_multiples(length, 3), 500);
            if (own.max_m < need) own = compute_psi_min(need, cfg.t);
            tab = &own;
        }
        Bounds bounds;
        if (cfg.use_criterion) bounds = build_bounds(odd, length, cfg.t, tab);
        DiscardEngine engine(odd, seq_levels, cfg, bounds, shared, length);
        try {
            engine.run(prefix);
            return SearchOutcome{n, engine.rec.best(), engine.rec.sorted_sequences(),
                                 engine.visited};
        } catch (const CapacityExhausted&) {
            length *= 2;
        }
    }
}

}  // namespace

SearchOutcome dsa(int n, DsaConfig cfg, const PsiMinTable* table) {
    return run_discarding(n, {}, cfg, table, nullptr, false);
}

SearchOutcome crpdsa(int n, DsaConfig cfg, const PsiMinTable* table) {
    return run_discarding(n, {}, cfg, table, nullptr, true);
}

SearchOutcome dsa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                       const PsiMinTable* table, std::atomic<int>* shared_best) {
    return run_discarding(n, residue_prefix, cfg, table, shared_best, false);
}

SearchOutcome crpdsa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                          const PsiMinTable* table, std::atomic<int>* shared_best) {
    return run_discarding(n, residue_prefix, cfg, table, shared_best, true);
}

std::vector<ResiduePrefix> residue_prefixes(int n, int depth, const DsaConfig& raw,
                                            const PsiMinTable* table, bool combined) {
    DsaConfig cfg = resolve_dsa_config(n, raw, table, combined);
    PrimeSet ps(n);
    const auto& odd = ps.odd();
    int levels = static_cast<int>(odd.size());
    int seq_levels =
        combined ? std::clamp(switch_index(n, cfg.switch_ratio) - 1, 0, levels) : levels;
    if (depth < 1 || depth >= levels)
        throw std::invalid_argument("prefix depth must be in 1..n-2");
    if (depth > seq_levels)
        throw std::invalid_argument("prefix depth extends past the sequential part");

    int length = std::max(cfg.initial_length, cfg.m0);
    PsiMinTable own;
    const PsiMinTable* tab = table;
    if (cfg.use_criterion && cfg.t >= 2 && !tab) {
        own = compute_psi_min(std::min(r_multiples(length, 3), 500), cfg.t);
        tab = &own;
    }
    Bounds bounds;
    if (cfg.use_criterion) bounds = build_bounds(odd, length, cfg.t, tab);

    // Same walk as the engine's sequential phase, stopped at the split depth.
    // The discard test sees window m0, exactly what a fresh engine would use.
    std::vector<CoverageArray> buf(static_cast<std::size_t>(depth) + 1, CoverageArray(length));
    std::vector<int> rem(static_cast<std::size_t>(depth), 0);
    std::vector<ResiduePrefix> out;
    auto discard = [&](const CoverageArray& arr, int placed) {
        if (!cfg.use_criterion || placed + 2 < cfg.k_star) return false;
        auto w = arr.reduced_window(cfg.m0);
        if (w.m_star == 0) return false;
        return bounds.suffix[static_cast<std::size_t>(placed)][static_cast<std::size_t>(w.m_star)] <
               w.m_star - w.psi_star;
    };
    auto walk = [&](auto&& self, int k) -> void {
        int p = odd[static_cast<std::size_t>(k)];
        for (int r = 1; r < p; ++r) {
            auto& child = buf[static_cast<std::size_t>(k) + 1];
            child = buf[static_cast<std::size_t>(k)];
            child.fill_class(r, p);
            rem[static_cast<std::size_t>(k)] = r;
            if (discard(child, k + 1)) continue;
            if (k + 1 == depth)
                out.push_back({rem, child.psi(cfg.m0)});
            else
                self(self, k + 1);
        }
    };
    walk(walk, 0);
    return out;
}

}  // namespace jac
