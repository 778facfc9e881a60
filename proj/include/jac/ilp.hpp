#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "jac/primes.hpp"

namespace jac {

// Binary program deciding how far one residue class per odd prime can cover.
// Variables: x_i_j = 1 iff prime p_i uses remainder j (choice rows force
// exactly one j per prime); y_k for k in m1..m2 may be 1 only if position k
// is covered (link rows). Positions 1..m1-1 must be covered outright (cover
// rows). Objective weights 2^(m2-k) rank y-vectors lexicographically, so an
// optimal solution pushes the covered prefix as far as possible before
// anything else.
struct IlpModel {
    int n = 0;
    int m1 = 0;
    int m2 = 0;
    PrimeSet primes{2};
};

// Guards: n >= 2, 1 <= m1 <= m2, and m2 - m1 <= 63 so the weights stay exact
// in 64 bits. Wider windows must be bracketed with repeated narrower runs.
IlpModel build_model(int n, int m1, int m2);

std::uint64_t objective_weight(const IlpModel& model, int k);

// Plain-text linear program ("LP" format): Maximize / Subject To / Binary /
// End, variables named x_<i>_<j> and y_<k>, rows named choice_<i>, cover_<q>,
// link_<k>.
void write_lp(const IlpModel& model, std::ostream& os);

struct IlpSolution {
    std::vector<int> chosen;  // per i = 2..n, the remainder j with x_i_j = 1
    std::vector<int> y;       // bits for k = m1..m2
};

// Reads `name value` lines ('#' comments, blank lines ignored). Missing
// variables count as 0. A single `infeasible` token instead of assignments
// yields nullopt. Throws on unknown names, non-binary values, or a prime
// without exactly one chosen remainder.
std::optional<IlpSolution> parse_solution(const IlpModel& model, std::istream& is);

enum class IlpOutcomeKind { too_large_m1, too_small_m2, omega_found };

struct IlpOutcome {
    IlpOutcomeKind kind;
    int omega = -1;  // set only for omega_found
};

// Checks the solution against every row, then reads the y prefix: all ones
// means the window was too short (raise m2); a zero already at m1 means the
// window started past the answer (lower m1); otherwise the position before
// the first zero is the longest coverable prefix. An infeasible model (cover
// rows unsatisfiable) also reports too_large_m1. Tail bits after the first
// zero carry no information and are ignored: the weights only force the
// prefix, and optimal solutions can legitimately cover positions past the
// first gap.
IlpOutcome classify_solution(const IlpModel& model, const std::optional<IlpSolution>& sol);

// Exhaustive optimum over all residue choices (guarded n <= 6). nullopt when
// no choice satisfies the cover rows.
std::optional<IlpSolution> brute_force_solve(const IlpModel& model);

// Brute-forces the model and checks that classify_solution's verdict is
// consistent with the given search result omega.
bool validate_small(const IlpModel& model, int omega_from_search);

} // namespace jac
