// Binary-program export and solution handling: model guards, exact file
// text, solver-output parsing, the outcome trichotomy against an exhaustive
// solve, and a pinned optimum whose tail is deliberately not prefix-shaped.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jac/basic_search.hpp"
#include "jac/ilp.hpp"
#include "jac/known_values.hpp"

using namespace jac;

namespace {

std::optional<IlpSolution> parse_text(const IlpModel& model, const std::string& text) {
    std::istringstream in(text);
    return parse_solution(model, in);
}

}  // namespace

TEST_CASE("model construction guards its window") {
    CHECK_THROWS_AS(build_model(1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_model(4, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_model(4, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_model(4, 1, 65), std::invalid_argument);  // width 64
    try {
        build_model(4, 1, 100);
        FAIL("width guard did not fire");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("narrower") != std::string::npos);
    }
    IlpModel widest = build_model(4, 1, 64);  // width 63 is the limit
    CHECK(objective_weight(widest, 1) == 1ULL << 63);
    CHECK(objective_weight(widest, 64) == 1);
    CHECK_THROWS_AS(objective_weight(widest, 0), std::invalid_argument);
    CHECK_THROWS_AS(objective_weight(widest, 65), std::invalid_argument);
}

TEST_CASE("exported text is pinned byte for byte") {
    IlpModel model = build_model(3, 2, 4);
    std::ostringstream os;
    write_lp(model, os);
    CHECK(os.str() ==
          "Maximize\n"
          " obj: 4 y_2 + 2 y_3 + y_4\n"
          "Subject To\n"
          " choice_2: x_2_1 + x_2_2 = 1\n"
          " choice_3: x_3_1 + x_3_2 + x_3_3 + x_3_4 = 1\n"
          " cover_1: x_2_1 + x_3_1 >= 1\n"
          " link_2: x_2_2 + x_3_2 - y_2 >= 0\n"
          " link_3: x_3_3 - y_3 >= 0\n"
          " link_4: x_2_1 + x_3_4 - y_4 >= 0\n"
          "Binary\n"
          " x_2_1\n"
          " x_2_2\n"
          " x_3_1\n"
          " x_3_2\n"
          " x_3_3\n"
          " x_3_4\n"
          " y_2\n"
          " y_3\n"
          " y_4\n"
          "End\n");
}

TEST_CASE("solver output parsing accepts the documented shapes") {
    IlpModel model = build_model(3, 2, 4);
    auto sol = parse_text(model,
                          "# solver banner\n"
                          "\n"
                          "x_2_1 1\n"
                          "x_3_2 1.0000001\n"
                          "y_2 1\n"
                          "y_3 0\n");
    REQUIRE(sol.has_value());
    CHECK(sol->chosen == std::vector<int>{1, 2});
    CHECK(sol->y == std::vector<int>{1, 0, 0});  // y_4 missing counts as 0
    CHECK_FALSE(parse_text(model, "infeasible\n").has_value());
}

TEST_CASE("solver output parsing rejects malformed assignments") {
    IlpModel model = build_model(3, 2, 4);
    CHECK_THROWS_AS(parse_text(model, ""), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_1 0.5\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_9 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_9_1 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "y_9 1\nx_2_1 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "z_1 1\nx_2_1 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_1z 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_1 1\nx_2_2 1\nx_3_1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text(model, "x_2_1 1\n"), std::invalid_argument);  // prime 3 unset
}

TEST_CASE("classification walks the y prefix and checks every row first") {
    IlpModel model = build_model(3, 2, 4);
    IlpSolution sol;
    sol.chosen = {1, 2};  // covers 1,4,7.. and 2,7,12..
    sol.y = {1, 0, 1};    // position 4 covered via x_2_1, gap at 3
    IlpOutcome out = classify_solution(model, sol);
    CHECK(out.kind == IlpOutcomeKind::omega_found);
    CHECK(out.omega == 2);
    sol.y = {1, 1, 1};  // claims position 3 covered, which it is not
    CHECK_THROWS_AS(classify_solution(model, sol), std::invalid_argument);
    sol.chosen = {2, 2};  // position 1 uncovered, cover row broken
    sol.y = {0, 0, 0};
    CHECK_THROWS_AS(classify_solution(model, sol), std::invalid_argument);
    CHECK(classify_solution(model, std::nullopt).kind == IlpOutcomeKind::too_large_m1);
}

TEST_CASE("pinned optimum keeps a one past the first gap") {
    // Window 1..4 over two odd primes: the best assignment covers 1, 2 and 4
    // but no assignment covers 1, 2 and 3. The optimum is y = (1,1,0,1) —
    // prefix-shaped solutions are strictly worse, the tail one is real.
    IlpModel model = build_model(3, 1, 4);
    auto best = brute_force_solve(model);
    REQUIRE(best.has_value());
    CHECK(best->y == std::vector<int>{1, 1, 0, 1});
    IlpOutcome out = classify_solution(model, best);
    CHECK(out.kind == IlpOutcomeKind::omega_found);
    CHECK(out.omega == 2);
}

TEST_CASE("exhaustive solve is refused beyond its guard") {
    CHECK_THROWS_AS(brute_force_solve(build_model(7, 1, 4)), std::invalid_argument);
}

TEST_CASE("window trichotomy matches the search answers") {
    for (int n = 2; n <= 5; ++n) {
        int omega = known_row(n)->omega;
        // Window straddling the answer: the exact value comes out.
        for (int m1 : {1, omega / 2 + 1, omega}) {
            IlpModel model = build_model(n, m1, omega + 3);
            IlpOutcome out = classify_solution(model, brute_force_solve(model));
            CHECK(out.kind == IlpOutcomeKind::omega_found);
            CHECK(out.omega == omega);
            CHECK(validate_small(model, omega));
        }
        // Window entirely below the answer: every flag can be raised.
        IlpModel low = build_model(n, 1, omega);
        CHECK(classify_solution(low, brute_force_solve(low)).kind ==
              IlpOutcomeKind::too_small_m2);
        CHECK(validate_small(low, omega));
        // Window starting just past the answer: the first flag stays down.
        IlpModel past = build_model(n, omega + 1, omega + 4);
        CHECK(classify_solution(past, brute_force_solve(past)).kind ==
              IlpOutcomeKind::too_large_m1);
        CHECK(validate_small(past, omega));
        // Window starting two past the answer: the covers themselves fail.
        IlpModel far = build_model(n, omega + 2, omega + 4);
        CHECK_FALSE(brute_force_solve(far).has_value());
        CHECK(validate_small(far, omega));
    }
}

TEST_CASE("search outcomes and model outcomes tell one story") {
    for (int n = 2; n <= 5; ++n) {
        SearchOutcome out = bsa(n);
        IlpModel model = build_model(n, 1, out.omega + 2);
        auto best = brute_force_solve(model);
        REQUIRE(best.has_value());
        IlpOutcome verdict = classify_solution(model, best);
        CHECK(verdict.kind == IlpOutcomeKind::omega_found);
        CHECK(verdict.omega == out.omega);
        // The winning assignment is one of the search's maximal sequences.
        bool member = false;
        for (const Remainders& rem : out.sequences) member = member || rem == best->chosen;
        CHECK(member);
    }
}
