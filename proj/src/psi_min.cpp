#include "jac/psi_min.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jac/primes.hpp"

namespace jac {

int PsiMinTable::value(int m, int k) const {
    if (k <= 1) return 0;
    if (m < 1 || m > max_m || k > max_k)
        throw std::out_of_range("PsiMinTable::value(" + std::to_string(m) + "," +
                                std::to_string(k) + ") outside table");
    return data[static_cast<std::size_t>(m - 1) * max_k + (k - 1)];
}

namespace {

struct Generator {
    int max_m;
    int levels;  // number of odd primes enumerated
    const std::vector<int>& odd;
    PsiMinTable* table;

    // covered flags for positions 1..max_m of the current partial tuple
    std::vector<std::vector<char>> buf;  // one buffer per level

    void run() {
        buf.assign(static_cast<std::size_t>(levels) + 1,
                   std::vector<char>(static_cast<std::size_t>(max_m) + 1, 0));
        descend(0);
    }

    void descend(int level) {
        int p = odd[static_cast<std::size_t>(level)];
        auto& parent = buf[static_cast<std::size_t>(level)];
        auto& mine = buf[static_cast<std::size_t>(level) + 1];
        for (int cls = 0; cls < p; ++cls) {
            mine = parent;
            for (int q = (cls == 0 ? p : cls); q <= max_m; q += p) mine[static_cast<std::size_t>(q)] = 1;
            int k = level + 2;  // deepest placed prime is p_k
            int prefix = 0;
            for (int m = 1; m <= max_m; ++m) {
                prefix += mine[static_cast<std::size_t>(m)];
                int& slot = table->data[static_cast<std::size_t>(m - 1) * table->max_k + (k - 1)];
                if (prefix < slot) slot = prefix;
            }
            if (level + 1 < levels) descend(level + 1);
        }
    }
};

}  // namespace

PsiMinTable compute_psi_min(int max_m, int max_k, bool allow_large) {
    if (max_m < 1 || max_k < 1) throw std::invalid_argument("compute_psi_min: extents must be >= 1");
    if (!allow_large && (max_k > 8 || max_m > 500))
        throw std::invalid_argument(
            "compute_psi_min: extents beyond max_k=8 / max_m=500 refused without override");
    PsiMinTable t;
    t.max_m = max_m;
    t.max_k = max_k;
    t.data.assign(static_cast<std::size_t>(max_m) * max_k, std::numeric_limits<int>::max());
    for (int m = 1; m <= max_m; ++m) t.data[static_cast<std::size_t>(m - 1) * max_k] = 0;  // k = 1
    if (max_k >= 2) {
        PrimeSet ps(max_k);
        Generator g{max_m, max_k - 1, ps.odd(), &t, {}};
        g.run();
    }
    return t;
}

void save_psi_min(const PsiMinTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_psi_min: cannot open " + path);
    out << "psi_min v1 max_m=" << table.max_m << " max_k=" << table.max_k << "\n";
    for (int m = 1; m <= table.max_m; ++m) {
        for (int k = 1; k <= table.max_k; ++k) {
            if (k > 1) out << ' ';
            out << table.value(m, k);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("save_psi_min: write failed for " + path);
}

PsiMinTable load_psi_min(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_psi_min: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_psi_min: empty file");
    PsiMinTable t;
    {
        std::istringstream head(line);
        std::string tag, ver, mfield, kfield;
        head >> tag >> ver >> mfield >> kfield;
        if (tag != "psi_min" || ver != "v1" || mfield.rfind("max_m=", 0) != 0 ||
            kfield.rfind("max_k=", 0) != 0)
            throw std::runtime_error("load_psi_min: bad header in " + path);
        t.max_m = std::stoi(mfield.substr(6));
        t.max_k = std::stoi(kfield.substr(6));
    }
    if (t.max_m < 1 || t.max_k < 1) throw std::runtime_error("load_psi_min: bad extents");
    t.data.reserve(static_cast<std::size_t>(t.max_m) * t.max_k);
    for (int m = 1; m <= t.max_m; ++m) {
        if (!std::getline(in, line)) throw std::runtime_error("load_psi_min: truncated file");
        std::istringstream row(line);
        for (int k = 1; k <= t.max_k; ++k) {
            int v;
            if (!(row >> v)) throw std::runtime_error("load_psi_min: short row");
            t.data.push_back(v);
        }
        int extra;
        if (row >> extra) throw std::runtime_error("load_psi_min: overlong row");
    }
    return t;
}

int r_multiples(int m, int p) {
    if (m < 1) throw std::invalid_argument("r_multiples: m must be >= 1");
    return 1 + (m - 1) / p;
}

int nu_max_bound(int m, int k, const PsiMinTable& table) {
    if (k < 2) throw std::invalid_argument("nu_max_bound: k must be >= 2");
    PrimeSet ps(k);
    int r = r_multiples(m, ps.prime(k));
    return r - table.value(r, std::min(k - 1, table.max_k));
}

bool criterion_discard(const CriterionContext& ctx, const PsiMinTable& table) {
    if (ctx.t >= ctx.k) throw std::invalid_argument("criterion_discard: t must be < k");
    int needed = ctx.m - ctx.psi_prefix;
    if (needed <= 0) return false;
    PrimeSet ps(ctx.n);
    int t = std::min(ctx.t, table.max_k);
    long long reachable = 0;
    for (int i = ctx.k; i <= ctx.n; ++i) {
        int r = r_multiples(ctx.m, ps.prime(i));
        reachable += r - table.value(r, t);
        if (reachable >= needed) return false;
    }
    return reachable < needed;
}

}  // namespace jac
