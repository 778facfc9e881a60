// Command-line front end: computes the condensed maximum omega(n) and
// h(n) = 2*omega + 2 with a choice of six search algorithms, enumerates and
// exports the maximal sequences, generates the psi_min pruning table, writes
// and classifies the integer-program formulation, splits searches into work
// units and runs them across threads, and benchmarks or cross-verifies the
// algorithms.
//
// Exit codes: 0 success, 1 verification or classification failure, 2 usage,
// configuration or guard errors.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jac/basic_search.hpp"
#include "jac/coverage.hpp"
#include "jac/discarding.hpp"
#include "jac/enumeration.hpp"
#include "jac/greedy.hpp"
#include "jac/ilp.hpp"
#include "jac/known_values.hpp"
#include "jac/parallel.hpp"
#include "jac/primes.hpp"
#include "jac/psi_min.hpp"
#include "jac/search.hpp"

namespace {

using Clock = std::chrono::steady_clock;

// Exit-1 failures (outcome disagreements, rejected solutions), as opposed to
// usage errors which exit 2.
struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string psimin_path;
    jac::DsaConfig cfg;
    std::string format = "human";
};

void add_config_flags(CLI::App* cmd, CommonOpts& o, bool kstar_means_criterion = true) {
    cmd->add_option(kstar_means_criterion ? "--kstar,--crit-kstar" : "--crit-kstar",
                    o.cfg.k_star, "level where the discard test starts (0 = default)");
    cmd->add_option("--t", o.cfg.t, "psi_min depth for the discard bound (0 = default)");
    cmd->add_option("--m0", o.cfg.m0, "seed window length (0 = previous omega + 1)");
    cmd->add_option("--ratio", o.cfg.switch_ratio,
                    "crpdsa: primes below p_n * ratio fill sequentially");
    cmd->add_flag_callback(
        "--no-criterion", [&o] { o.cfg.use_criterion = false; },
        "disable the discard test (full enumeration)");
    cmd->add_option("--length", o.cfg.initial_length,
                    "working array capacity (0 = default, grows on demand)");
    cmd->add_option("--psimin", o.psimin_path, "precomputed psi_min table file")
        ->envname("JACOBSTHAL_PSIMIN_PATH");
}

void add_format_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "human, csv or jsonl")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}));
}

std::optional<jac::PsiMinTable> load_table(const CommonOpts& o) {
    if (o.psimin_path.empty()) return std::nullopt;
    return jac::load_psi_min(o.psimin_path);
}

jac::SearchOutcome run_algo(jac::Algo algo, int n, const jac::DsaConfig& cfg,
                            const jac::PsiMinTable* table) {
    switch (algo) {
        case jac::Algo::bsa: return jac::bsa(n, cfg.initial_length);
        case jac::Algo::bpa: return jac::bpa(n, cfg.initial_length);
        case jac::Algo::rpa: return jac::rpa(n, cfg.initial_length);
        case jac::Algo::dsa: return jac::dsa(n, cfg, table);
        case jac::Algo::crpdsa: return jac::crpdsa(n, cfg, table);
        case jac::Algo::gpa: return jac::gpa(n, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

struct RunReport {
    int n = 0;
    std::string algo;
    std::optional<int> omega;
    std::uint64_t h = 0;
    std::optional<std::size_t> n_seq;
    std::optional<std::uint64_t> visited;
    double seconds = 0.0;
};

void print_report(const RunReport& r, const std::string& format) {
    if (format == "csv") {
        std::cout << "n,algo,omega,h,n_seq,visited,seconds\n" << r.n << ',' << r.algo << ',';
        if (r.omega) std::cout << *r.omega;
        std::cout << ',' << r.h << ',';
        if (r.n_seq) std::cout << *r.n_seq;
        std::cout << ',';
        if (r.visited) std::cout << *r.visited;
        std::cout << ',' << r.seconds << '\n';
        return;
    }
    if (format == "jsonl") {
        nlohmann::json j{{"n", r.n}, {"algo", r.algo}, {"h", r.h}, {"seconds", r.seconds}};
        j["omega"] = r.omega ? nlohmann::json(*r.omega) : nlohmann::json();
        j["n_seq"] = r.n_seq ? nlohmann::json(*r.n_seq) : nlohmann::json();
        j["visited"] = r.visited ? nlohmann::json(*r.visited) : nlohmann::json();
        std::cout << j.dump() << '\n';
        return;
    }
    std::cout << "n=" << r.n << " algo=" << r.algo;
    if (r.omega) std::cout << " omega=" << *r.omega;
    std::cout << " h=" << r.h;
    if (!r.omega) std::cout << " (omega is defined from n = 2 on)";
    if (r.n_seq) std::cout << " n_seq=" << *r.n_seq;
    if (r.visited) std::cout << " visited=" << *r.visited;
    std::cout << " seconds=" << r.seconds << '\n';
}

RunReport report_from_outcome(const jac::SearchOutcome& out, const std::string& algo,
                              double seconds) {
    RunReport r;
    r.n = out.n;
    r.algo = algo;
    r.omega = out.omega;
    r.h = jac::h_from_omega(static_cast<std::uint64_t>(out.omega), out.n);
    r.n_seq = out.sequences.size();
    r.visited = out.visited;
    r.seconds = seconds;
    return r;
}

int cmd_compute(int n, const std::string& algo_name_str, const CommonOpts& o) {
    if (n == 1) {
        RunReport r;
        r.n = 1;
        r.algo = "-";
        r.h = 2;
        print_report(r, o.format);
        return 0;
    }
    jac::Algo algo = jac::algo_from_name(algo_name_str);
    auto table = load_table(o);
    auto t0 = Clock::now();
    jac::SearchOutcome out = run_algo(algo, n, o.cfg, table ? &*table : nullptr);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    print_report(report_from_outcome(out, algo_name_str, secs), o.format);
    return 0;
}

int cmd_enumerate(int n, const std::string& algo_name_str, const std::string& out_dir,
                  const CommonOpts& o) {
    jac::Algo algo = jac::algo_from_name(algo_name_str);
    auto table = load_table(o);
    auto t0 = Clock::now();
    jac::SearchOutcome out = run_algo(algo, n, o.cfg, table ? &*table : nullptr);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    auto records = jac::build_records(out);
    for (const auto& rec : records)
        if (!jac::validate_record(rec))
            throw VerifyFailure("internal cross-check failed for a sequence record");
    auto paths = jac::export_record_files(n, out.omega, records, out_dir);
    print_report(report_from_outcome(out, algo_name_str, secs), o.format);
    for (const auto& p : paths) std::cout << "wrote " << p << '\n';
    return 0;
}

int cmd_psimin(int max_m, int max_k, const std::string& out_path, bool allow_large) {
    auto t0 = Clock::now();
    jac::PsiMinTable table = jac::compute_psi_min(max_m, max_k, allow_large);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    jac::save_psi_min(table, out_path);
    std::cout << "psi_min table max_m=" << table.max_m << " max_k=" << table.max_k
              << " written to " << out_path << " (" << secs << "s)\n";
    return 0;
}

int cmd_export_ilp(int n, int m1, int m2, const std::string& out_path) {
    jac::IlpModel model = jac::build_model(n, m1, m2);
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
    jac::write_lp(model, os);
    int xv = 0;
    for (int i = 2; i <= n; ++i) xv += model.primes.prime(i) - 1;
    std::cout << "model n=" << n << " m1=" << m1 << " m2=" << m2 << ": " << xv
              << " choice variables, " << (m2 - m1 + 1) << " position variables -> " << out_path
              << '\n';
    return 0;
}

// Recovers (n, m1, m2) from the variable names of a model file written by
// export-ilp, so classification does not need the parameters repeated.
jac::IlpModel read_model_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    int n = 0, m1 = 0, m2 = 0;
    std::string tok;
    while (is >> tok) {
        int a = 0, b = 0, used = 0;
        if (std::sscanf(tok.c_str(), "x_%d_%d%n", &a, &b, &used) == 2 &&
            used == static_cast<int>(tok.size())) {
            n = std::max(n, a);
        } else if (std::sscanf(tok.c_str(), "y_%d%n", &a, &used) == 1 &&
                   used == static_cast<int>(tok.size())) {
            m1 = m1 == 0 ? a : std::min(m1, a);
            m2 = std::max(m2, a);
        }
    }
    if (n < 2 || m1 < 1)
        throw std::invalid_argument(path + " does not look like an exported model");
    return jac::build_model(n, m1, m2);
}

int cmd_classify(const std::string& model_path, const std::string& solution_path) {
    jac::IlpModel model = read_model_file(model_path);
    std::ifstream is(solution_path);
    if (!is) throw std::runtime_error("cannot open " + solution_path);
    std::optional<jac::IlpSolution> sol;
    try {
        sol = jac::parse_solution(model, is);
        std::cout << "model n=" << model.n << " m1=" << model.m1 << " m2=" << model.m2 << '\n';
        jac::IlpOutcome out = jac::classify_solution(model, sol);
        switch (out.kind) {
            case jac::IlpOutcomeKind::too_large_m1:
                std::cout << "outcome=too_large_m1: no covered prefix reaches m1; "
                             "retry with a smaller m1\n";
                break;
            case jac::IlpOutcomeKind::too_small_m2:
                std::cout << "outcome=too_small_m2: the whole window is covered; "
                             "retry with a larger m2\n";
                break;
            case jac::IlpOutcomeKind::omega_found:
                std::cout << "outcome=omega_found omega=" << out.omega
                          << " h=" << jac::h_from_omega(static_cast<std::uint64_t>(out.omega),
                                                        model.n)
                          << '\n';
                break;
        }
    } catch (const std::invalid_argument& e) {
        throw VerifyFailure(std::string("solution rejected: ") + e.what());
    }
    return 0;
}

int cmd_split(int n, const std::string& algo_name_str, int split_k, const std::string& out_path,
              const CommonOpts& o) {
    jac::Algo algo = jac::algo_from_name(algo_name_str);
    auto table = load_table(o);
    jac::UnitPlan plan = jac::generate_units(n, algo, split_k, o.cfg, table ? &*table : nullptr);
    jac::save_units_file(plan, out_path);
    std::cout << plan.units.size() << " work units (n=" << n << " algo=" << algo_name_str
              << " split=" << split_k << ") -> " << out_path << '\n';
    return 0;
}

int cmd_run_units(const std::string& file, int workers, bool share_best,
                  const std::string& out_dir, const CommonOpts& o) {
    auto table = load_table(o);
    jac::UnitPlan plan = jac::load_units_file(file, o.cfg, table ? &*table : nullptr);
    auto t0 = Clock::now();
    jac::SearchOutcome out = jac::run_units(plan, workers, share_best, table ? &*table : nullptr);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    print_report(report_from_outcome(out, jac::algo_name(plan.algo), secs), o.format);
    if (!out_dir.empty()) {
        auto records = jac::build_records(out);
        auto paths = jac::export_record_files(plan.n, out.omega, records, out_dir);
        for (const auto& p : paths) std::cout << "wrote " << p << '\n';
    }
    return 0;
}

int cmd_bench(int n_min, int n_max, const std::string& algos_csv, const std::string& out_path,
              const CommonOpts& o) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n-min <= n-max");
    std::vector<jac::Algo> algos;
    std::stringstream ss(algos_csv);
    std::string item;
    while (std::getline(ss, item, ',')) algos.push_back(jac::algo_from_name(item));
    if (algos.empty()) throw std::invalid_argument("no algorithms selected");
    auto table = load_table(o);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
        os = &file;
    }
    *os << "n,algo,seconds,log1p_seconds,visited\n";
    for (int n = n_min; n <= n_max; ++n) {
        for (jac::Algo algo : algos) {
            jac::SearchOutcome out;
            double secs;
            try {
                auto t0 = Clock::now();
                out = run_algo(algo, n, o.cfg, table ? &*table : nullptr);
                secs = std::chrono::duration<double>(Clock::now() - t0).count();
            } catch (const std::invalid_argument&) {
                continue;  // outside this algorithm's guard
            }
            char row[160];
            std::snprintf(row, sizeof row, "%d,%s,%.6f,%.6f,%llu\n", n, jac::algo_name(algo),
                          secs, std::log1p(secs),
                          static_cast<unsigned long long>(out.visited));
            *os << row;
        }
    }
    if (!out_path.empty()) std::cout << "benchmark written to " << out_path << '\n';
    return 0;
}

int cmd_verify(int n_max, double budget, const CommonOpts& o) {
    if (n_max < 2) throw std::invalid_argument("verify needs n-max >= 2");
    auto table = load_table(o);
    auto start = Clock::now();
    std::cout << "n     bsa   bpa   rpa   dsa   crpdsa gpa   reference\n";
    for (int n = 2; n <= n_max; ++n) {
        if (budget > 0 && std::chrono::duration<double>(Clock::now() - start).count() > budget) {
            std::cout << "time budget reached before n=" << n << "; stopping the sweep\n";
            break;
        }
        std::optional<jac::SearchOutcome> base;
        std::string base_algo;
        char cell[16];
        std::snprintf(cell, sizeof cell, "%-6d", n);
        std::string row = cell;
        for (jac::Algo algo : {jac::Algo::bsa, jac::Algo::bpa, jac::Algo::rpa, jac::Algo::dsa,
                               jac::Algo::crpdsa, jac::Algo::gpa}) {
            int width = algo == jac::Algo::crpdsa ? 7 : 6;
            jac::SearchOutcome out;
            try {
                out = run_algo(algo, n, o.cfg, table ? &*table : nullptr);
            } catch (const std::invalid_argument&) {
                std::snprintf(cell, sizeof cell, "%-*s", width, "-");
                row += cell;
                continue;
            }
            std::snprintf(cell, sizeof cell, "%-*d", width, out.omega);
            row += cell;
            if (!base) {
                base = out;
                base_algo = jac::algo_name(algo);
            } else if (out.omega != base->omega || out.sequences != base->sequences) {
                throw VerifyFailure("disagreement at n=" + std::to_string(n) + ": " + base_algo +
                                    " vs " + jac::algo_name(algo));
            }
        }
        const jac::KnownRow* ref = jac::known_row(n);
        if (ref && base) {
            if (base->omega != ref->omega ||
                static_cast<int>(base->sequences.size()) != ref->count)
                throw VerifyFailure("n=" + std::to_string(n) +
                                    " disagrees with the reference table");
            row += std::to_string(ref->omega) + " ok";
        }
        std::cout << row << '\n';
    }
    for (const jac::KnownRow& r : jac::known_rows())
        if (r.n >= 2 && r.h != 2 * r.omega + 2)
            throw VerifyFailure("reference table inconsistency at n=" + std::to_string(r.n));
    std::cout << "reference table satisfies h = 2*omega + 2 on every row\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primorial Jacobsthal function toolkit"};
    app.require_subcommand(1);

    int n = 0, m1 = 0, m2 = 0, split_k = 0, workers = 1, n_min = 2, n_max = 12;
    int max_m = 200, max_k = 7;
    bool allow_large = false, share_best = false;
    double budget = 0.0;
    std::string algo = "dsa", out_path, out_dir, model_path, solution_path, units_file;
    std::string algos_csv = "bsa,bpa,rpa,dsa,crpdsa,gpa";
    CommonOpts common;
    int rc = 0;

    auto* compute = app.add_subcommand("compute", "compute omega(n) and h(n)");
    compute->add_option("--n", n, "prime index")->required();
    compute->add_option("--algo", algo, "bsa, bpa, rpa, dsa, crpdsa or gpa");
    add_config_flags(compute, common);
    add_format_flag(compute, common);
    compute->callback([&] { rc = cmd_compute(n, algo, common); });

    auto* enumerate = app.add_subcommand("enumerate", "export all maximal sequences");
    enumerate->add_option("--n", n, "prime index")->required();
    enumerate->add_option("--algo", algo, "search algorithm");
    enumerate->add_option("--out-dir", out_dir, "directory for the three export files")
        ->required();
    add_config_flags(enumerate, common);
    add_format_flag(enumerate, common);
    enumerate->callback([&] { rc = cmd_enumerate(n, algo, out_dir, common); });

    auto* psimin = app.add_subcommand("psimin", "generate the psi_min pruning table");
    psimin->add_option("--max-m", max_m, "largest window length");
    psimin->add_option("--max-k", max_k, "largest prime depth");
    psimin->add_option("--out", out_path, "output file")->required();
    psimin->add_flag("--allow-large", allow_large, "lift the size guards");
    psimin->callback([&] { rc = cmd_psimin(max_m, max_k, out_path, allow_large); });

    auto* ilp = app.add_subcommand("export-ilp", "write the binary program for (n, m1, m2)");
    ilp->add_option("--n", n, "prime index")->required();
    ilp->add_option("--m1", m1, "window start")->required();
    ilp->add_option("--m2", m2, "window end")->required();
    ilp->add_option("--out", out_path, "model file")->required();
    ilp->callback([&] { rc = cmd_export_ilp(n, m1, m2, out_path); });

    auto* classify = app.add_subcommand("classify-solution", "interpret a solver result");
    classify->add_option("--model", model_path, "model file written by export-ilp")->required();
    classify->add_option("--solution", solution_path,
                         "solver output: `name value` lines, or `infeasible`")
        ->required();
    classify->callback([&] { rc = cmd_classify(model_path, solution_path); });

    auto* split = app.add_subcommand("split", "write a work-unit parameter file");
    split->add_option("--n", n, "prime index")->required();
    split->add_option("--algo", algo, "search algorithm")->required();
    split->add_option("--kstar", split_k, "split level: units fix primes through p_kstar")
        ->required();
    split->add_option("--out", out_path, "parameter file")->required();
    add_config_flags(split, common, /*kstar_means_criterion=*/false);
    split->callback([&] { rc = cmd_split(n, algo, split_k, out_path, common); });

    auto* runu = app.add_subcommand("run-units", "execute a work-unit file and merge");
    runu->add_option("--file", units_file, "parameter file from split")->required();
    runu->add_option("--workers", workers, "worker thread count")->required();
    runu->add_flag("--share-best", share_best, "share the window bound across units");
    runu->add_option("--out-dir", out_dir, "also export the merged sequences here");
    add_config_flags(runu, common);
    add_format_flag(runu, common);
    runu->callback([&] { rc = cmd_run_units(units_file, workers, share_best, out_dir, common); });

    auto* bench = app.add_subcommand("bench", "CSV timing/visited comparison");
    bench->add_option("--n-min", n_min, "first prime index");
    bench->add_option("--n-max", n_max, "last prime index")->required();
    bench->add_option("--algos", algos_csv, "comma-separated algorithm list");
    bench->add_option("--out", out_path, "CSV file (default stdout)");
    add_config_flags(bench, common);
    bench->callback([&] { rc = cmd_bench(n_min, n_max, algos_csv, out_path, common); });

    auto* verify = app.add_subcommand("verify", "cross-check algorithms and reference values");
    verify->add_option("--n-max", n_max, "verify n = 2..n-max");
    verify->add_option("--time-budget", budget, "stop the sweep after this many seconds");
    add_config_flags(verify, common);
    verify->callback([&] { rc = cmd_verify(n_max, budget, common); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const VerifyFailure& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
