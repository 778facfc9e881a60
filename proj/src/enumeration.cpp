#include "jac/enumeration.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "jac/coverage.hpp"

namespace jac {

namespace {

void check_remainders(const Remainders& rem, const PrimeSet& primes) {
    if (static_cast<int>(rem.size()) != primes.n() - 1)
        throw std::invalid_argument("remainder tuple size does not match the prime set");
    for (int i = 2; i <= primes.n(); ++i) {
        int a = rem[static_cast<std::size_t>(i) - 2];
        if (a < 1 || a >= primes.prime(i))
            throw std::invalid_argument("remainder out of range 1..p-1");
    }
}

bool covers(int q, int a, int p) { return (q - a) % p == 0; }

} // namespace

PermutationPart remainders_to_permutation(const Remainders& rem, int m, const PrimeSet& primes) {
    check_remainders(rem, primes);
    const int n = primes.n();
    CoverageArray arr(m);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    PermutationPart out;
    out.primes.reserve(static_cast<std::size_t>(n) - 1);
    out.anchors.reserve(static_cast<std::size_t>(n) - 1);
    int anchor = arr.next_free();
    while (anchor <= m) {
        int chosen = 0;
        for (int i = 2; i <= n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            if (covers(anchor, rem[static_cast<std::size_t>(i) - 2], primes.prime(i))) {
                chosen = i;
                break;
            }
        }
        if (chosen == 0)
            throw std::invalid_argument("remainders do not cover position "
                                        + std::to_string(anchor));
        used[static_cast<std::size_t>(chosen)] = true;
        out.primes.push_back(primes.prime(chosen));
        out.anchors.push_back(anchor);
        arr.fill_class(anchor, primes.prime(chosen), 0);
        anchor = arr.next_free();
    }
    if (static_cast<int>(out.primes.size()) != n - 1)
        throw std::invalid_argument("cover completed before every prime received an anchor");
    return out;
}

Remainders permutation_to_remainders(const PermutationPart& perm, const PrimeSet& primes) {
    const int n = primes.n();
    if (perm.primes.size() != perm.anchors.size()
        || static_cast<int>(perm.primes.size()) != n - 1)
        throw std::invalid_argument("placement size does not match the prime set");
    Remainders rem(static_cast<std::size_t>(n) - 1, 0);
    for (std::size_t j = 0; j < perm.primes.size(); ++j) {
        int p = perm.primes[j];
        int i = 0;
        for (int k = 2; k <= n; ++k)
            if (primes.prime(k) == p) { i = k; break; }
        if (i == 0) throw std::invalid_argument("placement uses a prime outside the set");
        if (rem[static_cast<std::size_t>(i) - 2] != 0)
            throw std::invalid_argument("placement assigns a prime twice");
        int a = perm.anchors[j] % p;
        if (a == 0) throw std::invalid_argument("anchor divisible by its prime");
        rem[static_cast<std::size_t>(i) - 2] = a;
    }
    return rem;
}

std::vector<int> minimal_moduli(const Remainders& rem, int m, const PrimeSet& primes) {
    check_remainders(rem, primes);
    std::vector<int> moduli(static_cast<std::size_t>(m), 0);
    for (int q = 1; q <= m; ++q) {
        for (int i = 2; i <= primes.n(); ++i) {
            if (covers(q, rem[static_cast<std::size_t>(i) - 2], primes.prime(i))) {
                moduli[static_cast<std::size_t>(q) - 1] = primes.prime(i);
                break;
            }
        }
        if (moduli[static_cast<std::size_t>(q) - 1] == 0)
            throw std::invalid_argument("remainders do not cover position " + std::to_string(q));
    }
    return moduli;
}

SequenceRecord make_record(int n, int m, const Remainders& rem) {
    PrimeSet primes(n);
    SequenceRecord rec;
    rec.n = n;
    rec.m = m;
    rec.remainders = rem;
    rec.moduli = minimal_moduli(rem, m, primes);
    PermutationPart perm = remainders_to_permutation(rem, m, primes);
    rec.perm_primes = std::move(perm.primes);
    rec.perm_anchors = std::move(perm.anchors);
    if (permutation_to_remainders({rec.perm_primes, rec.perm_anchors}, primes) != rem)
        throw std::invalid_argument("placement round-trip changed the remainders");
    return rec;
}

bool validate_record(const SequenceRecord& rec) {
    try {
        SequenceRecord fresh = make_record(rec.n, rec.m, rec.remainders);
        return fresh.moduli == rec.moduli && fresh.perm_primes == rec.perm_primes
            && fresh.perm_anchors == rec.perm_anchors;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

SequenceRecord reverse_record(const SequenceRecord& rec) {
    PrimeSet primes(rec.n);
    Remainders rev(rec.remainders.size());
    for (int i = 2; i <= rec.n; ++i) {
        int p = primes.prime(i);
        int b = (rec.m + 1 - rec.remainders[static_cast<std::size_t>(i) - 2]) % p;
        if (b < 0) b += p;
        if (b == 0)
            throw std::invalid_argument("mirrored remainder hits the zero class");
        rev[static_cast<std::size_t>(i) - 2] = b;
    }
    return make_record(rec.n, rec.m, rev);
}

std::vector<SequenceRecord> build_records(const SearchOutcome& out) {
    std::vector<SequenceRecord> records;
    records.reserve(out.sequences.size());
    for (const Remainders& rem : out.sequences)
        records.push_back(make_record(out.n, out.omega, rem));
    return records;
}

void export_records(int n, int omega, const std::vector<SequenceRecord>& records,
                    ExportKind kind, std::ostream& os) {
    os << "# n=" << n << " omega=" << omega << " count=" << records.size() << '\n';
    for (const SequenceRecord& rec : records) {
        const std::vector<int>* first = nullptr;
        const std::vector<int>* second = nullptr;
        switch (kind) {
            case ExportKind::remainders: first = &rec.remainders; break;
            case ExportKind::moduli: first = &rec.moduli; break;
            case ExportKind::permutations:
                first = &rec.perm_primes;
                second = &rec.perm_anchors;
                break;
        }
        for (std::size_t i = 0; i < first->size(); ++i) {
            if (i) os << ' ';
            os << (*first)[i];
        }
        if (second)
            for (std::size_t i = 0; i < second->size(); ++i) os << ' ' << (*second)[i];
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed while exporting sequences");
}

std::vector<std::string> export_record_files(int n, int omega,
                                             const std::vector<SequenceRecord>& records,
                                             const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    static constexpr struct {
        ExportKind kind;
        const char* name;
    } kParts[] = {
        {ExportKind::remainders, "remainders.txt"},
        {ExportKind::moduli, "moduli.txt"},
        {ExportKind::permutations, "permutations.txt"},
    };
    std::vector<std::string> paths;
    for (const auto& part : kParts) {
        fs::path path = fs::path(dir) / part.name;
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
        export_records(n, omega, records, part.kind, os);
        os.close();
        if (!os) throw std::runtime_error("write failed for " + path.string());
        paths.push_back(path.string());
    }
    return paths;
}

} // namespace jac
