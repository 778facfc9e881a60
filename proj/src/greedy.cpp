#include "jac/greedy.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "jac/basic_search.hpp"
#include "jac/known_values.hpp"
#include "jac/primes.hpp"

namespace jac {

int FrequencyTable::rho_max(int i) const {
    const auto& c = counts[static_cast<std::size_t>(i)];
    const auto& b = blocked[static_cast<std::size_t>(i)];
    int best = 0;
    for (std::size_t r = 1; r < c.size(); ++r)
        if (!b[r] && c[r] > best) best = c[r];
    return best;
}

void FrequencyTable::block(int i, int r) {
    blocked[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = 1;
}

FrequencyTable build_frequency_table(const CoverageArray& arr, int m,
                                     const std::vector<int>& pending) {
    FrequencyTable f;
    f.primes = pending;
    for (int p : pending) {
        f.counts.emplace_back(static_cast<std::size_t>(p), 0);
        f.blocked.emplace_back(static_cast<std::size_t>(p), 0);
    }
    for (int q = 1; q <= m; ++q) {
        if (arr.test(q)) continue;
        for (std::size_t i = 0; i < f.primes.size(); ++i) {
            int r = q % f.primes[i];
            if (r != 0) ++f.counts[i][static_cast<std::size_t>(r)];
        }
    }
    return f;
}

bool criterion5_discard(const FrequencyTable& ftab, int uncovered) {
    if (uncovered <= 0) return false;
    int reach = 0;
    for (std::size_t i = 0; i < ftab.primes.size(); ++i) {
        reach += ftab.rho_max(static_cast<int>(i));
        if (reach >= uncovered) return false;
    }
    return true;
}

DsaConfig resolve_gpa_config(int n, DsaConfig cfg) {
    if (n < 2) throw std::invalid_argument("gpa: n must be >= 2");
    if (cfg.m0 == 0) {
        const KnownRow* prev = n >= 3 ? known_row(n - 1) : nullptr;
        cfg.m0 = prev && prev->omega > 0 ? prev->omega + 1 : 1;
    }
    if (cfg.m0 < 1) throw std::invalid_argument("gpa: m0 must be >= 1");
    if (cfg.k_star == 0) cfg.k_star = std::max(2, std::min(7, n));
    if (cfg.k_star < 2 || cfg.k_star > n + 1)
        throw std::invalid_argument("gpa: k_star must be in 2..n+1");
    if (cfg.initial_length == 0) cfg.initial_length = default_array_length(n, cfg.m0);
    return cfg;
}

namespace {

// One pass of the tree at a fixed window length w. In climb mode the pass
// aborts at the first node whose window is fully covered; in enumerate mode
// such nodes emit every completion of their pending primes instead.
struct GpaEngine {
    const std::vector<int>& odd;
    int levels;
    int seq_levels;
    int w;
    bool enumerate_mode;
    bool use_criterion;
    SequenceRecorder* rec;
    std::atomic<int>* shared;

    std::uint64_t visited = 0;
    bool witness = false;

    std::vector<int> base;  // flat class-slot offsets, greedy odd indices only
    int slot_count = 0;
    std::vector<CoverageArray> arr_buf;        // by placed-prime count
    std::vector<std::vector<int>> cnt_buf;     // flat counts, same indexing
    std::vector<std::vector<char>> blk_buf;
    std::uint64_t pending = 0;
    Remainders rem;

    GpaEngine(const std::vector<int>& odd_primes, int seq, int window, bool enumerate,
              bool criterion, SequenceRecorder* recorder, std::atomic<int>* shared_best)
        : odd(odd_primes),
          levels(static_cast<int>(odd_primes.size())),
          seq_levels(seq),
          w(window),
          enumerate_mode(enumerate),
          use_criterion(criterion),
          rec(recorder),
          shared(shared_best),
          base(odd_primes.size(), 0),
          arr_buf(static_cast<std::size_t>(levels) + 1, CoverageArray(window)),
          cnt_buf(static_cast<std::size_t>(levels) + 1),
          blk_buf(static_cast<std::size_t>(levels) + 1),
          rem(odd_primes.size(), 0) {
        for (int i = seq_levels; i < levels; ++i) {
            base[static_cast<std::size_t>(i)] = slot_count;
            slot_count += odd[static_cast<std::size_t>(i)] - 1;
        }
    }

    int slot(int g, int r) const { return base[static_cast<std::size_t>(g)] + r - 1; }

    void publish(int len) {
        if (!shared) return;
        int cur = shared->load(std::memory_order_relaxed);
        while (cur < len && !shared->compare_exchange_weak(cur, len, std::memory_order_relaxed)) {
        }
    }

    // every residue choice of the free primes completes a full cover
    void fallback(const std::vector<int>& free_idx, std::size_t at) {
        if (at == free_idx.size()) {
            ++visited;
            if (rec) rec->offer(w, rem);
            publish(w);
            return;
        }
        int g = free_idx[at];
        int p = odd[static_cast<std::size_t>(g)];
        for (int r = 1; r < p; ++r) {
            rem[static_cast<std::size_t>(g)] = r;
            fallback(free_idx, at + 1);
        }
    }

    // returns true when the whole pass should stop (climb witness)
    bool handle_full(const std::vector<int>& free_idx) {
        if (!enumerate_mode) {
            witness = true;
            publish(w);
            return true;
        }
        fallback(free_idx, 0);
        return false;
    }

    bool hopeless(int d, int uncovered) const {
        const auto& cnt = cnt_buf[static_cast<std::size_t>(d)];
        const auto& blk = blk_buf[static_cast<std::size_t>(d)];
        int reach = 0;
        for (std::uint64_t m = pending; m != 0; m &= m - 1) {
            int g = std::countr_zero(m);
            int p = odd[static_cast<std::size_t>(g)];
            int best = 0;
            int b = base[static_cast<std::size_t>(g)];
            for (int r = 1; r < p; ++r)
                if (!blk[static_cast<std::size_t>(b + r - 1)] &&
                    cnt[static_cast<std::size_t>(b + r - 1)] > best)
                    best = cnt[static_cast<std::size_t>(b + r - 1)];
            reach += best;
            if (reach >= uncovered) return false;
        }
        return true;
    }

    void select(int d, int& gi, int& gr, int& gc) const {
        const auto& cnt = cnt_buf[static_cast<std::size_t>(d)];
        const auto& blk = blk_buf[static_cast<std::size_t>(d)];
        gi = -1;
        gr = 0;
        gc = 0;
        for (std::uint64_t m = pending; m != 0; m &= m - 1) {
            int g = std::countr_zero(m);
            int p = odd[static_cast<std::size_t>(g)];
            int b = base[static_cast<std::size_t>(g)];
            for (int r = 1; r < p; ++r) {
                int c = cnt[static_cast<std::size_t>(b + r - 1)];
                if (!blk[static_cast<std::size_t>(b + r - 1)] && c > gc) {
                    gc = c;
                    gi = g;
                    gr = r;
                }
            }
        }
    }

    bool has_live(int d, int g) const {
        const auto& cnt = cnt_buf[static_cast<std::size_t>(d)];
        const auto& blk = blk_buf[static_cast<std::size_t>(d)];
        int p = odd[static_cast<std::size_t>(g)];
        int b = base[static_cast<std::size_t>(g)];
        for (int r = 1; r < p; ++r)
            if (!blk[static_cast<std::size_t>(b + r - 1)] &&
            cnt[static_cast<std::size_t>(b + r - 1)] > 0)
                return true;
        return false;
    }

    // subtract the newly covered positions of class gr mod odd[gi] from the
    // child's counts (buffers at d+1 already copied from d)
    void deduct(int d, int gi, int gr) {
        const auto& parent = arr_buf[static_cast<std::size_t>(d)];
        auto& cnt = cnt_buf[static_cast<std::size_t>(d) + 1];
        int p = odd[static_cast<std::size_t>(gi)];
        for (int q = gr; q <= w; q += p) {
            if (parent.test(q)) continue;
            for (std::uint64_t m = pending; m != 0; m &= m - 1) {
                int j = std::countr_zero(m);
                if (j == gi) continue;
                int rr = q % odd[static_cast<std::size_t>(j)];
                if (rr != 0) --cnt[static_cast<std::size_t>(slot(j, rr))];
            }
        }
    }

    std::vector<int> pending_vec() const {
        std::vector<int> v;
        for (std::uint64_t m = pending; m != 0; m &= m - 1) v.push_back(std::countr_zero(m));
        return v;
    }

    bool greedy_node(int d, int uncovered) {
        if (uncovered == 0) return handle_full(pending_vec());
        if (pending == 0) {
            ++visited;  // complete assignment, cover shorter than w
            return false;
        }
        if (use_criterion && hopeless(d, uncovered)) return false;
        for (;;) {
            int gi, gr, gc;
            select(d, gi, gr, gc);
            if (gi < 0) return false;
            arr_buf[static_cast<std::size_t>(d) + 1] = arr_buf[static_cast<std::size_t>(d)];
            arr_buf[static_cast<std::size_t>(d) + 1].fill_class(gr, odd[static_cast<std::size_t>(gi)]);
            cnt_buf[static_cast<std::size_t>(d) + 1] = cnt_buf[static_cast<std::size_t>(d)];
            blk_buf[static_cast<std::size_t>(d) + 1] = blk_buf[static_cast<std::size_t>(d)];
            deduct(d, gi, gr);
            rem[static_cast<std::size_t>(gi)] = gr;
            pending &= ~(1ull << gi);
            bool stop = greedy_node(d + 1, uncovered - gc);
            pending |= 1ull << gi;
            if (stop) return true;
            blk_buf[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot(gi, gr))] = 1;
            // consumed prime exhausted: abandon the node, unless the prime
            // divides w+1 (it may then sit uselessly in a maximal cover, and
            // the remaining pairs still have to be tried)
            if ((w + 1) % odd[static_cast<std::size_t>(gi)] != 0 && !has_live(d, gi)) return false;
        }
    }

    bool enter(int d) {
        if (d < seq_levels) {
            if (arr_buf[static_cast<std::size_t>(d)].psi(w) == w) {
                std::vector<int> free_idx;
                for (int i = d; i < levels; ++i) free_idx.push_back(i);
                return handle_full(free_idx);
            }
            return seq_node(d);
        }
        int covered = arr_buf[static_cast<std::size_t>(d)].psi(w);
        auto& cnt = cnt_buf[static_cast<std::size_t>(d)];
        auto& blk = blk_buf[static_cast<std::size_t>(d)];
        cnt.assign(static_cast<std::size_t>(slot_count), 0);
        blk.assign(static_cast<std::size_t>(slot_count), 0);
        const auto& arr = arr_buf[static_cast<std::size_t>(d)];
        for (int q = 1; q <= w; ++q) {
            if (arr.test(q)) continue;
            for (int g = seq_levels; g < levels; ++g) {
                int rr = q % odd[static_cast<std::size_t>(g)];
                if (rr != 0) ++cnt[static_cast<std::size_t>(slot(g, rr))];
            }
        }
        pending = 0;
        for (int g = seq_levels; g < levels; ++g) pending |= 1ull << g;
        return greedy_node(d, w - covered);
    }

    bool seq_node(int k) {
        int p = odd[static_cast<std::size_t>(k)];
        for (int r = 1; r < p; ++r) {
            arr_buf[static_cast<std::size_t>(k) + 1] = arr_buf[static_cast<std::size_t>(k)];
            arr_buf[static_cast<std::size_t>(k) + 1].fill_class(r, p);
            rem[static_cast<std::size_t>(k)] = r;
            if (enter(k + 1)) return true;
        }
        return false;
    }

    void run(const std::vector<int>& prefix) {
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            arr_buf[i + 1] = arr_buf[i];
            arr_buf[i + 1].fill_class(prefix[i], odd[i]);
            rem[i] = prefix[i];
        }
        enter(static_cast<int>(prefix.size()));
    }
};

SearchOutcome run_gpa(int n, const std::vector<int>& prefix, DsaConfig raw,
                      std::atomic<int>* shared, bool strict_seed) {
    DsaConfig cfg = resolve_gpa_config(n, raw);
    PrimeSet ps(n);
    const auto& odd = ps.odd();
    int levels = static_cast<int>(odd.size());
    int seq_levels = std::clamp(cfg.k_star - 2, 0, levels);
    if (static_cast<int>(prefix.size()) > seq_levels)
        throw std::invalid_argument("unit prefix extends past the sequential part");
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix[i] < 1 || prefix[i] >= odd[i])
            throw std::invalid_argument("unit prefix residue out of range");

    std::uint64_t visited = 0;
    int start_w = cfg.m0;
    if (shared) start_w = std::max(start_w, shared->load(std::memory_order_relaxed));
    int w = start_w;
    bool confirmed = false;
    for (;;) {
        GpaEngine probe(odd, seq_levels, w, false, cfg.use_criterion, nullptr, shared);
        probe.run(prefix);
        visited += probe.visited;
        if (!probe.witness) break;
        confirmed = true;
        ++w;
    }
    int omega = w - 1;
    if (!confirmed) {
        if (strict_seed)
            throw std::runtime_error("gpa: no cover of length " + std::to_string(start_w) +
                                     " exists; the m0 seed (or the shared floor) is too large");
        return SearchOutcome{n, omega, {}, visited};
    }
    if (shared && shared->load(std::memory_order_relaxed) > omega)
        return SearchOutcome{n, omega, {}, visited};  // cannot reach the global best
    SequenceRecorder rec(omega - 1);
    GpaEngine full(odd, seq_levels, omega, true, cfg.use_criterion, &rec, shared);
    full.run(prefix);
    visited += full.visited;
    return SearchOutcome{n, rec.best(), rec.sorted_sequences(), visited};
}

}  // namespace

SearchOutcome gpa(int n, DsaConfig cfg) { return run_gpa(n, {}, cfg, nullptr, true); }

SearchOutcome gpa_unit(int n, const std::vector<int>& residue_prefix, const DsaConfig& cfg,
                       std::atomic<int>* shared_best) {
    return run_gpa(n, residue_prefix, cfg, shared_best, false);
}

}  // namespace jac
