#include "jac/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "jac/basic_search.hpp"
#include "jac/coverage.hpp"
#include "jac/greedy.hpp"
#include "jac/known_values.hpp"
#include "jac/primes.hpp"

namespace jac {

namespace {

constexpr const char* kNames[] = {"bsa", "bpa", "rpa", "dsa", "crpdsa", "gpa"};

bool is_residue_algo(Algo a) {
    return a == Algo::bsa || a == Algo::dsa || a == Algo::crpdsa || a == Algo::gpa;
}

int auto_seed(int n) {
    const KnownRow* prev = n >= 3 ? known_row(n - 1) : nullptr;
    return prev && prev->omega > 0 ? prev->omega + 1 : 1;
}

// The execution config a unit of this algorithm runs under. The plain
// searches carry no window seed and no criterion; forcing that here keeps
// their merged outcome identical to the single-threaded run.
DsaConfig resolve_exec_config(int n, Algo algo, DsaConfig cfg, const PsiMinTable* table) {
    switch (algo) {
        case Algo::bsa:
        case Algo::bpa:
        case Algo::rpa:
            cfg.m0 = 1;
            cfg.use_criterion = false;
            return resolve_dsa_config(n, cfg, nullptr, false);
        case Algo::dsa:
            return resolve_dsa_config(n, cfg, table, false);
        case Algo::crpdsa:
            return resolve_dsa_config(n, cfg, table, true);
        case Algo::gpa:
            return resolve_gpa_config(n, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void check_split(int n, int split_k) {
    if (split_k < 2 || split_k >= n)
        throw std::invalid_argument("split level must be in 2..n-1");
}

int replay_pairs(int n, const std::vector<int>& pairs, bool reduced, int window) {
    if (pairs.size() % 2 != 0)
        throw std::invalid_argument("placement prefix must list (prime, anchor) pairs");
    PrimeSet ps(n);
    int length = std::max(default_array_length(n, 0), window);
    CoverageArray arr(length);
    std::vector<int> primes, anchors;
    for (std::size_t x = 0; x + 1 < pairs.size(); x += 2) {
        int p = pairs[x];
        int anchor = pairs[x + 1];
        bool known = false;
        for (int v : ps.odd()) known = known || v == p;
        if (!known || std::count(primes.begin(), primes.end(), p) > 0)
            throw std::invalid_argument("placement prefix reuses or lacks prime " +
                                        std::to_string(p));
        if (anchor != arr.next_free())
            throw std::invalid_argument("placement prefix anchor " + std::to_string(anchor) +
                                        " is not the first free position");
        if (anchor % p == 0 || (reduced && rpa_skip_placement(primes, anchors, p, anchor)))
            throw std::invalid_argument("placement prefix pair (" + std::to_string(p) + ", " +
                                        std::to_string(anchor) + ") is never enumerated");
        arr.fill_class(anchor, p);
        primes.push_back(p);
        anchors.push_back(anchor);
    }
    return arr.psi(window);
}

int replay_residues(int n, const std::vector<int>& residues, int window) {
    PrimeSet ps(n);
    int length = std::max(default_array_length(n, 0), window);
    CoverageArray arr(length);
    for (std::size_t i = 0; i < residues.size(); ++i) {
        int p = ps.odd()[i];
        if (residues[i] < 1 || residues[i] >= p)
            throw std::invalid_argument("residue prefix value out of range 1..p-1");
        arr.fill_class(residues[i], p);
    }
    return arr.psi(window);
}

}  // namespace

const char* algo_name(Algo algo) { return kNames[static_cast<int>(algo)]; }

Algo algo_from_name(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kNames[i]) return static_cast<Algo>(i);
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected bsa, bpa, rpa, dsa, crpdsa or gpa)");
}

std::uint64_t config_fingerprint(int n, Algo algo, int split_k, const DsaConfig& cfg) {
    std::ostringstream os;
    os << "n=" << n << " algo=" << algo_name(algo) << " split=" << split_k
       << " kstar=" << cfg.k_star << " t=" << cfg.t << " m0=" << cfg.m0
       << " ratio_ppm=" << static_cast<long long>(cfg.switch_ratio * 1e6 + 0.5)
       << " crit=" << (cfg.use_criterion ? 1 : 0) << " len=" << cfg.initial_length;
    return fnv1a(os.str());
}

UnitPlan generate_units(int n, Algo algo, int split_k, const DsaConfig& cfg,
                        const PsiMinTable* table) {
    check_split(n, split_k);
    UnitPlan plan;
    plan.n = n;
    plan.algo = algo;
    plan.split_k = split_k;
    plan.cfg = resolve_exec_config(n, algo, cfg, table);
    const int depth = split_k - 1;

    if (is_residue_algo(algo)) {
        DsaConfig gen = plan.cfg;
        bool combined = algo == Algo::crpdsa;
        if (algo == Algo::bsa) {
            if (n > 9) throw std::invalid_argument("bsa: n must be in 2..9");
            gen.m0 = auto_seed(n);  // ordering window only; execution keeps m0 = 1
        }
        if (algo == Algo::gpa) {
            gen.use_criterion = false;  // the greedy phase never runs above the split
            if (depth > plan.cfg.k_star - 2)
                throw std::invalid_argument(
                    "gpa: split level must stay in the sequential part (split <= k_star - 1)");
        }
        for (auto& rp : residue_prefixes(n, depth, gen, table, combined))
            plan.units.push_back({0, std::move(rp.residues), rp.psi});
    } else {
        if (algo == Algo::bpa && n > 10) throw std::invalid_argument("bpa: n must be in 2..10");
        if (algo == Algo::rpa && n > 12) throw std::invalid_argument("rpa: n must be in 2..12");
        for (auto& pp : perm_prefixes(n, depth, algo == Algo::rpa, auto_seed(n)))
            plan.units.push_back({0, std::move(pp.pairs), pp.psi});
    }

    std::stable_sort(plan.units.begin(), plan.units.end(),
                     [](const WorkUnit& a, const WorkUnit& b) {
                         return a.psi_at_split > b.psi_at_split;
                     });
    for (std::size_t i = 0; i < plan.units.size(); ++i)
        plan.units[i].id = static_cast<int>(i);
    return plan;
}

void save_units(const UnitPlan& plan, std::ostream& os) {
    os << "units v1 n=" << plan.n << " config="
       << hex64(config_fingerprint(plan.n, plan.algo, plan.split_k, plan.cfg)) << '\n';
    for (const WorkUnit& u : plan.units) {
        os << u.id << ' ' << algo_name(plan.algo) << ' ' << plan.split_k;
        for (int v : u.prefix) os << ' ' << v;
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed while saving work units");
}

void save_units_file(const UnitPlan& plan, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save_units(plan, os);
}

UnitPlan load_units(std::istream& is, const DsaConfig& cfg, const PsiMinTable* table) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty unit file");
    std::istringstream hs(line);
    std::string magic, version, n_field, config_field;
    if (!(hs >> magic >> version >> n_field >> config_field) || magic != "units" ||
        version != "v1" || n_field.rfind("n=", 0) != 0 || config_field.rfind("config=", 0) != 0)
        throw std::invalid_argument("malformed unit file header: " + line);

    UnitPlan plan;
    plan.n = std::stoi(n_field.substr(2));
    std::string want_hex = config_field.substr(7);

    bool first = true;
    int expect_prefix_len = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        WorkUnit u;
        std::string name;
        int split = 0;
        if (!(ls >> u.id >> name >> split))
            throw std::invalid_argument("malformed unit line: " + line);
        Algo algo = algo_from_name(name);
        int v;
        while (ls >> v) u.prefix.push_back(v);
        if (first) {
            plan.algo = algo;
            plan.split_k = split;
            check_split(plan.n, split);
            plan.cfg = resolve_exec_config(plan.n, algo, cfg, table);
            std::string have_hex =
                hex64(config_fingerprint(plan.n, algo, split, plan.cfg));
            if (have_hex != want_hex)
                throw std::invalid_argument(
                    "stale unit file: its config hash " + want_hex +
                    " does not match the current configuration " + have_hex +
                    "; regenerate the file");
            expect_prefix_len = is_residue_algo(algo) ? split - 1 : 2 * (split - 1);
            first = false;
        } else if (algo != plan.algo || split != plan.split_k) {
            throw std::invalid_argument("unit file mixes algorithms or split levels");
        }
        if (static_cast<int>(u.prefix.size()) != expect_prefix_len)
            throw std::invalid_argument("unit " + std::to_string(u.id) +
                                        " has a wrong-length prefix");
        int window = is_residue_algo(plan.algo) && plan.algo != Algo::bsa ? plan.cfg.m0
                                                                          : auto_seed(plan.n);
        u.psi_at_split =
            is_residue_algo(plan.algo)
                ? replay_residues(plan.n, u.prefix, window)
                : replay_pairs(plan.n, u.prefix, plan.algo == Algo::rpa, window);
        plan.units.push_back(std::move(u));
    }
    if (plan.units.empty()) throw std::invalid_argument("unit file lists no units");
    return plan;
}

UnitPlan load_units_file(const std::string& path, const DsaConfig& cfg,
                         const PsiMinTable* table) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return load_units(is, cfg, table);
}

SearchOutcome run_unit(const UnitPlan& plan, const WorkUnit& unit, const PsiMinTable* table,
                       std::atomic<int>* shared_best) {
    switch (plan.algo) {
        case Algo::bsa:
            return dsa_unit(plan.n, unit.prefix, plan.cfg, nullptr, nullptr);
        case Algo::bpa:
            return bpa_unit(plan.n, unit.prefix, plan.cfg.initial_length);
        case Algo::rpa:
            return rpa_unit(plan.n, unit.prefix, plan.cfg.initial_length);
        case Algo::dsa:
            return dsa_unit(plan.n, unit.prefix, plan.cfg, table, shared_best);
        case Algo::crpdsa:
            return crpdsa_unit(plan.n, unit.prefix, plan.cfg, table, shared_best);
        case Algo::gpa:
            return gpa_unit(plan.n, unit.prefix, plan.cfg, shared_best);
    }
    throw std::invalid_argument("unknown algorithm");
}

SearchOutcome run_units(const UnitPlan& plan, int workers, bool share_best,
                        const PsiMinTable* table) {
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    const std::size_t count = plan.units.size();
    if (count == 0) throw std::invalid_argument("unit plan is empty");

    std::atomic<int> best{0};
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::vector<SearchOutcome> results(count);
    std::vector<std::exception_ptr> errors(count);

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= count) break;
            std::atomic<int>* shared = share_best ? &best : nullptr;
            try {
                results[i] = run_unit(plan, plan.units[i], table, shared);
            } catch (...) {
                try {
                    results[i] = run_unit(plan, plan.units[i], table, shared);
                } catch (...) {
                    errors[i] = std::current_exception();
                    failed.store(true);
                }
            }
        }
    };

    int spawn = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    std::vector<std::thread> pool;
    for (int w = 1; w < spawn; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < count; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);

    SearchOutcome merged;
    merged.n = plan.n;
    for (const SearchOutcome& r : results) {
        merged.visited += r.visited;
        merged.omega = std::max(merged.omega, r.omega);
    }
    std::set<Remainders> all;
    for (const SearchOutcome& r : results)
        if (r.omega == merged.omega) all.insert(r.sequences.begin(), r.sequences.end());
    if (all.empty())
        throw std::runtime_error(
            "no unit produced a sequence at the merged omega; the configured floor exceeds "
            "what these units can reach (lower m0 or regenerate the units)");
    merged.sequences.assign(all.begin(), all.end());
    return merged;
}

}  // namespace jac
