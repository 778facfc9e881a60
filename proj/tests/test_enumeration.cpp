// Three equivalent sequence descriptions: construction, cross-validation,
// the mirror map, and the exported text formats.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "jac/basic_search.hpp"
#include "jac/discarding.hpp"
#include "jac/enumeration.hpp"
#include "jac/primes.hpp"

using namespace jac;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("pinned length-10 example: all three descriptions line up") {
    SequenceRecord rec = make_record(6, 10, {1, 3, 2, 5, 6});
    CHECK(rec.moduli == std::vector<int>{3, 7, 5, 3, 11, 13, 3, 5, 7, 3});
    CHECK(rec.perm_primes == std::vector<int>{3, 7, 5, 11, 13});
    CHECK(rec.perm_anchors == std::vector<int>{1, 2, 3, 5, 6});
    CHECK(validate_record(rec));
    // Its mirror is the only other maximal cover of this length.
    SequenceRecord rev = reverse_record(rec);
    CHECK(rev.remainders == Remainders{1, 3, 2, 6, 5});
    CHECK(validate_record(rev));
    CHECK(reverse_record(rev).remainders == rec.remainders);
}

TEST_CASE("smallest run: records, permutations and exports are exact") {
    SearchOutcome out = bsa(3);
    auto records = build_records(out);
    REQUIRE(records.size() == 2);
    CHECK(records[0].remainders == Remainders{1, 2});
    CHECK(records[1].remainders == Remainders{2, 1});
    CHECK(records[0].perm_primes == std::vector<int>{3, 5});
    CHECK(records[0].perm_anchors == std::vector<int>{1, 2});
    CHECK(records[1].perm_primes == std::vector<int>{5, 3});
    CHECK(records[1].perm_anchors == std::vector<int>{1, 2});
    CHECK(records[0].moduli == std::vector<int>{3, 5});
    CHECK(records[1].moduli == std::vector<int>{5, 3});

    std::ostringstream rem, mod, perm;
    export_records(3, 2, records, ExportKind::remainders, rem);
    export_records(3, 2, records, ExportKind::moduli, mod);
    export_records(3, 2, records, ExportKind::permutations, perm);
    CHECK(rem.str() == "# n=3 omega=2 count=2\n1 2\n2 1\n");
    CHECK(mod.str() == "# n=3 omega=2 count=2\n3 5\n5 3\n");
    CHECK(perm.str() == "# n=3 omega=2 count=2\n3 5 1 2\n5 3 1 2\n");
}

TEST_CASE("first anchor is always 1 and anchors strictly increase") {
    for (int n = 2; n <= 8; ++n) {
        for (const SequenceRecord& rec : build_records(dsa(n))) {
            REQUIRE_FALSE(rec.perm_anchors.empty());
            CHECK(rec.perm_anchors.front() == 1);
            for (std::size_t i = 1; i < rec.perm_anchors.size(); ++i)
                CHECK(rec.perm_anchors[i] > rec.perm_anchors[i - 1]);
            CHECK(rec.m == dsa(n).omega);
        }
    }
}

TEST_CASE("the permutation direction inverts exactly") {
    PrimeSet primes(7);
    for (const SequenceRecord& rec : build_records(dsa(7))) {
        PermutationPart perm{rec.perm_primes, rec.perm_anchors};
        CHECK(permutation_to_remainders(perm, primes) == rec.remainders);
        PermutationPart back = remainders_to_permutation(rec.remainders, rec.m, primes);
        CHECK(back.primes == rec.perm_primes);
        CHECK(back.anchors == rec.perm_anchors);
    }
}

TEST_CASE("position moduli are the smallest covering primes") {
    PrimeSet primes(8);
    for (const SequenceRecord& rec : build_records(dsa(8))) {
        auto mod = minimal_moduli(rec.remainders, rec.m, primes);
        CHECK(mod == rec.moduli);
        for (int q = 1; q <= rec.m; ++q) {
            int chosen = mod[static_cast<std::size_t>(q) - 1];
            for (std::size_t i = 0; i < primes.odd().size(); ++i) {
                int p = primes.odd()[i];
                bool covers = q % p == rec.remainders[i] % p;
                if (p == chosen) CHECK(covers);
                if (p < chosen) CHECK_FALSE(covers);
            }
        }
    }
}

TEST_CASE("construction rejects tuples that do not describe a full cover") {
    // Position 2 is left out entirely.
    CHECK_THROWS_AS(make_record(3, 2, {1, 1}), std::invalid_argument);
    // Cover finishes before the second prime ever gets an anchor.
    CHECK_THROWS_AS(make_record(3, 1, {1, 1}), std::invalid_argument);
    // Out-of-range remainder.
    CHECK_THROWS_AS(make_record(3, 2, {1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(make_record(3, 2, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_record(3, 2, {1}), std::invalid_argument);
}

TEST_CASE("validation notices any tampered field") {
    SequenceRecord rec = make_record(6, 10, {1, 3, 2, 5, 6});
    SequenceRecord broken = rec;
    broken.moduli[4] = 7;
    CHECK_FALSE(validate_record(broken));
    broken = rec;
    broken.perm_primes[0] = 5;
    CHECK_FALSE(validate_record(broken));
    broken = rec;
    broken.perm_anchors[3] = 4;
    CHECK_FALSE(validate_record(broken));
    broken = rec;
    broken.remainders[0] = 2;
    CHECK_FALSE(validate_record(broken));
    broken = rec;
    broken.m = 9;
    CHECK_FALSE(validate_record(broken));
}

TEST_CASE("mirroring is an involution that stays inside the answer set") {
    for (int n = 2; n <= 10; ++n) {
        SearchOutcome out = dsa(n);
        std::set<Remainders> all(out.sequences.begin(), out.sequences.end());
        for (const SequenceRecord& rec : build_records(out)) {
            SequenceRecord rev = reverse_record(rec);
            CHECK(validate_record(rev));
            CHECK(all.count(rev.remainders) == 1);
            CHECK(reverse_record(rev).remainders == rec.remainders);
        }
    }
}

TEST_CASE("file export writes the three aligned views") {
    SearchOutcome out = dsa(6);
    auto records = build_records(out);
    auto dir = std::filesystem::temp_directory_path() / "seq_export_test";
    std::filesystem::remove_all(dir);
    auto paths = export_record_files(6, out.omega, records, dir.string());
    REQUIRE(paths.size() == 3);
    CHECK(slurp(paths[0]) ==
          "# n=6 omega=10 count=2\n1 3 2 5 6\n1 3 2 6 5\n");
    CHECK(slurp(paths[1]) ==
          "# n=6 omega=10 count=2\n3 7 5 3 11 13 3 5 7 3\n3 7 5 3 13 11 3 5 7 3\n");
    CHECK(slurp(paths[2]) ==
          "# n=6 omega=10 count=2\n3 7 5 11 13 1 2 3 5 6\n3 7 5 13 11 1 2 3 5 6\n");
    std::filesystem::remove_all(dir);
}
