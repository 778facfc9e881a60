#pragma once
// Splits a search into independent subtrees at a chosen depth, persists them
// as a plain-text parameter file, runs them across worker threads and merges
// the outcomes. The merge is order-independent, so worker count and
// scheduling never change the result: omega is the maximum over units and
// the sequence set is the union of the units achieving it.

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jac/discarding.hpp"
#include "jac/psi_min.hpp"
#include "jac/search.hpp"

namespace jac {

enum class Algo { bsa, bpa, rpa, dsa, crpdsa, gpa };

const char* algo_name(Algo algo);
Algo algo_from_name(const std::string& name);  // throws std::invalid_argument

// One subtree: for residue-driven searches the prefix lists a_2..a_{split_k};
// for placement searches it lists (prime, anchor) pairs. psi_at_split is the
// covered count of the prefix on the seed window, used only for ordering.
struct WorkUnit {
    int id = 0;
    std::vector<int> prefix;
    int psi_at_split = 0;
};

struct UnitPlan {
    int n = 0;
    Algo algo = Algo::bsa;
    int split_k = 0;   // units fix the primes through index split_k
    DsaConfig cfg;     // resolved execution config, hashed into the file header
    std::vector<WorkUnit> units;  // sorted by descending psi_at_split
};

// Enumerates the surviving branches at level split_k (so each unit resumes at
// level split_k + 1) under the algorithm's own pruning rules. split_k must
// leave at least one level below and, for dsa/crpdsa/gpa, stay inside the
// sequential part.
UnitPlan generate_units(int n, Algo algo, int split_k, const DsaConfig& cfg = {},
                        const PsiMinTable* table = nullptr);

// Header `units v1 n=<n> config=<hex>`, then one `<id> <algo> <split_k>
// <prefix...>` line per unit in plan order.
void save_units(const UnitPlan& plan, std::ostream& os);
void save_units_file(const UnitPlan& plan, const std::string& path);

// Rejects files whose config hash does not match the locally resolved config:
// a stale file must be regenerated, never silently reinterpreted. Prefixes
// are revalidated and psi_at_split recomputed during the load.
UnitPlan load_units(std::istream& is, const DsaConfig& cfg = {},
                    const PsiMinTable* table = nullptr);
UnitPlan load_units_file(const std::string& path, const DsaConfig& cfg = {},
                         const PsiMinTable* table = nullptr);

std::uint64_t config_fingerprint(int n, Algo algo, int split_k, const DsaConfig& resolved);

// Executes one unit to completion on the calling thread.
SearchOutcome run_unit(const UnitPlan& plan, const WorkUnit& unit,
                       const PsiMinTable* table = nullptr,
                       std::atomic<int>* shared_best = nullptr);

// Work-stealing pool over the unit list. A unit that throws is retried once;
// a second failure aborts the whole run. share_best wires the optional
// cross-unit window bound; results are identical with or without it, only
// visited counts of pruned searches may differ. Throws std::runtime_error if
// no unit confirms a cover at the merged omega (the seed floor was too high).
SearchOutcome run_units(const UnitPlan& plan, int workers, bool share_best = false,
                        const PsiMinTable* table = nullptr);

}  // namespace jac
