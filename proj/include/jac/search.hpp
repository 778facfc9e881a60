#pragma once
// Shared result types for the maximal-cover searches.
//
// Every search over the odd primes p_2..p_n reports the same way: the length
// omega of the longest completely covered prefix 1..omega achievable by
// choosing one non-zero residue class per prime, the full set of residue
// tuples (a_2..a_n) achieving it, and how many complete assignments were
// measured along the way.

#include <cstdint>
#include <set>
#include <vector>

namespace jac {

using Remainders = std::vector<int>;  // a_2..a_n, one entry per odd prime

struct SearchOutcome {
    int n = 0;
    int omega = 0;
    std::vector<Remainders> sequences;  // lexicographically sorted, unique
    std::uint64_t visited = 0;          // complete assignments measured
};

// Collects sequences of maximal length. Lengths at or below the floor are
// ignored entirely (used to seed searches with a proven lower bound: nothing
// at or below floor can be maximal).
class SequenceRecorder {
public:
    explicit SequenceRecorder(int floor_len = 0) : floor_(floor_len), best_(floor_len) {}

    int best() const { return best_; }
    void offer(int len, const Remainders& rem) {
        if (len <= floor_ || len < best_) return;
        if (len > best_) {
            best_ = len;
            seqs_.clear();
        }
        seqs_.insert(rem);
    }
    std::vector<Remainders> sorted_sequences() const {
        return {seqs_.begin(), seqs_.end()};
    }

private:
    int floor_;
    int best_;
    std::set<Remainders> seqs_;
};

}  // namespace jac
