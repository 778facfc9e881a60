#include "jac/ilp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace jac {

namespace {

bool covers_position(const IlpModel& model, const std::vector<int>& chosen, int q) {
    for (int i = 2; i <= model.n; ++i) {
        int p = model.primes.prime(i);
        if (q % p == 0) continue;
        if (chosen[static_cast<std::size_t>(i) - 2] == q % p) return true;
    }
    return false;
}

// Writes "coef name" terms with '+' separators, wrapping long rows.
class RowWriter {
public:
    RowWriter(std::ostream& os, std::string label) : os_(os) {
        line_ = " " + std::move(label) + ":";
    }
    void term(std::uint64_t coef, const std::string& name, bool negative = false) {
        std::string piece;
        piece += first_ ? (negative ? " -" : "") : (negative ? " -" : " +");
        if (coef != 1) piece += " " + std::to_string(coef);
        piece += " " + name;
        if (line_.size() + piece.size() > 78) {
            os_ << line_ << '\n';
            line_ = "   ";
        }
        line_ += piece;
        first_ = false;
    }
    void finish(const std::string& relation) {
        os_ << line_;
        if (!relation.empty()) os_ << ' ' << relation;
        os_ << '\n';
    }

private:
    std::ostream& os_;
    std::string line_;
    bool first_ = true;
};

} // namespace

IlpModel build_model(int n, int m1, int m2) {
    if (n < 2) throw std::invalid_argument("model needs n >= 2");
    if (m1 < 1 || m2 < m1) throw std::invalid_argument("model needs 1 <= m1 <= m2");
    if (m2 - m1 > 63)
        throw std::invalid_argument(
            "window m1..m2 wider than 64: the position weights would overflow; "
            "bracket the answer with repeated narrower windows instead");
    IlpModel model;
    model.n = n;
    model.m1 = m1;
    model.m2 = m2;
    model.primes = PrimeSet(n);
    return model;
}

std::uint64_t objective_weight(const IlpModel& model, int k) {
    if (k < model.m1 || k > model.m2) throw std::invalid_argument("weight index outside m1..m2");
    return std::uint64_t{1} << (model.m2 - k);
}

void write_lp(const IlpModel& model, std::ostream& os) {
    os << "Maximize\n";
    RowWriter obj(os, "obj");
    for (int k = model.m1; k <= model.m2; ++k)
        obj.term(objective_weight(model, k), "y_" + std::to_string(k));
    obj.finish("");
    os << "Subject To\n";
    for (int i = 2; i <= model.n; ++i) {
        RowWriter row(os, "choice_" + std::to_string(i));
        for (int j = 1; j < model.primes.prime(i); ++j)
            row.term(1, "x_" + std::to_string(i) + "_" + std::to_string(j));
        row.finish("= 1");
    }
    for (int q = 1; q < model.m1; ++q) {
        RowWriter row(os, "cover_" + std::to_string(q));
        for (int i = 2; i <= model.n; ++i) {
            int p = model.primes.prime(i);
            if (q % p == 0) continue;
            row.term(1, "x_" + std::to_string(i) + "_" + std::to_string(q % p));
        }
        row.finish(">= 1");
    }
    for (int k = model.m1; k <= model.m2; ++k) {
        RowWriter row(os, "link_" + std::to_string(k));
        for (int i = 2; i <= model.n; ++i) {
            int p = model.primes.prime(i);
            if (k % p == 0) continue;
            row.term(1, "x_" + std::to_string(i) + "_" + std::to_string(k % p));
        }
        row.term(1, "y_" + std::to_string(k), true);
        row.finish(">= 0");
    }
    os << "Binary\n";
    for (int i = 2; i <= model.n; ++i)
        for (int j = 1; j < model.primes.prime(i); ++j)
            os << " x_" << i << "_" << j << '\n';
    for (int k = model.m1; k <= model.m2; ++k) os << " y_" << k << '\n';
    os << "End\n";
    if (!os) throw std::runtime_error("write failed while exporting the model");
}

std::optional<IlpSolution> parse_solution(const IlpModel& model, std::istream& is) {
    IlpSolution sol;
    sol.chosen.assign(static_cast<std::size_t>(model.n) - 1, 0);
    sol.y.assign(static_cast<std::size_t>(model.m2 - model.m1) + 1, 0);
    std::string line;
    bool saw_any = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#') continue;
        if (name == "infeasible") return std::nullopt;
        double value;
        if (!(ls >> value))
            throw std::invalid_argument("solution line without a value: " + line);
        int bit;
        if (std::fabs(value) < 1e-6) bit = 0;
        else if (std::fabs(value - 1.0) < 1e-6) bit = 1;
        else throw std::invalid_argument("non-binary value for " + name);
        saw_any = true;
        if (bit == 0) continue;
        int a = 0, b = 0, used = 0;
        if (std::sscanf(name.c_str(), "x_%d_%d%n", &a, &b, &used) == 2
            && used == static_cast<int>(name.size())) {
            if (a < 2 || a > model.n || b < 1 || b >= model.primes.prime(a))
                throw std::invalid_argument("unknown variable " + name);
            int& slot = sol.chosen[static_cast<std::size_t>(a) - 2];
            if (slot != 0 && slot != b)
                throw std::invalid_argument("two remainders chosen for prime index "
                                            + std::to_string(a));
            slot = b;
        } else if (std::sscanf(name.c_str(), "y_%d%n", &a, &used) == 1
                   && used == static_cast<int>(name.size())) {
            if (a < model.m1 || a > model.m2)
                throw std::invalid_argument("unknown variable " + name);
            sol.y[static_cast<std::size_t>(a - model.m1)] = 1;
        } else {
            throw std::invalid_argument("unknown variable " + name);
        }
    }
    if (!saw_any) throw std::invalid_argument("empty solution file");
    for (int i = 2; i <= model.n; ++i)
        if (sol.chosen[static_cast<std::size_t>(i) - 2] == 0)
            throw std::invalid_argument("no remainder chosen for prime index "
                                        + std::to_string(i));
    return sol;
}

IlpOutcome classify_solution(const IlpModel& model, const std::optional<IlpSolution>& sol) {
    if (!sol) return {IlpOutcomeKind::too_large_m1};
    for (int q = 1; q < model.m1; ++q)
        if (!covers_position(model, sol->chosen, q))
            throw std::invalid_argument("solution violates cover row for position "
                                        + std::to_string(q));
    for (int k = model.m1; k <= model.m2; ++k)
        if (sol->y[static_cast<std::size_t>(k - model.m1)] == 1
            && !covers_position(model, sol->chosen, k))
            throw std::invalid_argument("solution violates link row for position "
                                        + std::to_string(k));
    int first_zero = -1;
    for (int k = model.m1; k <= model.m2; ++k)
        if (sol->y[static_cast<std::size_t>(k - model.m1)] == 0) {
            first_zero = k;
            break;
        }
    if (first_zero == -1) return {IlpOutcomeKind::too_small_m2};
    if (first_zero == model.m1) return {IlpOutcomeKind::too_large_m1};
    return {IlpOutcomeKind::omega_found, first_zero - 1};
}

std::optional<IlpSolution> brute_force_solve(const IlpModel& model) {
    if (model.n > 6)
        throw std::invalid_argument("exhaustive solve is guarded at n <= 6");
    std::vector<int> chosen(static_cast<std::size_t>(model.n) - 1, 1);
    bool found = false;
    std::uint64_t best_value = 0;
    IlpSolution best;
    for (;;) {
        bool feasible = true;
        for (int q = 1; q < model.m1 && feasible; ++q)
            feasible = covers_position(model, chosen, q);
        if (feasible) {
            std::uint64_t value = 0;
            std::vector<int> y(static_cast<std::size_t>(model.m2 - model.m1) + 1, 0);
            for (int k = model.m1; k <= model.m2; ++k)
                if (covers_position(model, chosen, k)) {
                    y[static_cast<std::size_t>(k - model.m1)] = 1;
                    value += objective_weight(model, k);
                }
            if (!found || value > best_value) {
                found = true;
                best_value = value;
                best.chosen = chosen;
                best.y = std::move(y);
            }
        }
        int i = model.n;
        while (i >= 2) {
            int& a = chosen[static_cast<std::size_t>(i) - 2];
            if (++a < model.primes.prime(i)) break;
            a = 1;
            --i;
        }
        if (i < 2) break;
    }
    if (!found) return std::nullopt;
    return best;
}

bool validate_small(const IlpModel& model, int omega_from_search) {
    IlpOutcome out = classify_solution(model, brute_force_solve(model));
    switch (out.kind) {
        case IlpOutcomeKind::too_large_m1: return omega_from_search < model.m1;
        case IlpOutcomeKind::too_small_m2: return omega_from_search >= model.m2;
        case IlpOutcomeKind::omega_found:
            return out.omega == omega_from_search && model.m1 <= omega_from_search
                && omega_from_search < model.m2;
    }
    return false;
}

} // namespace jac
