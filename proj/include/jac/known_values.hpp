#pragma once
// Published reference values for the primorial Jacobsthal function: for each
// prime index n the prime p_n, h(n) = j(p_n#), the condensed maximum omega(n)
// and the number of maximal sequences. Used to cross-check computed results
// and to seed searches with the proven lower bound omega(n-1)+1.
//
// Row n = 1 is special: h(1) = 2, and the condensed quantities are undefined
// (omega and count are set to -1 there).

#include <vector>

namespace jac {

struct KnownRow {
    int n;
    int p;
    int h;
    int omega;
    int count;
};

const std::vector<KnownRow>& known_rows();  // n = 1..54
const KnownRow* known_row(int n);           // nullptr when out of range

}  // namespace jac
