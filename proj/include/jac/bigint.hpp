#pragma once
// Minimal unsigned big integer: just enough for Chinese-remainder offset
// reconstruction (multiply/add by small values, reduce modulo a small value,
// print). Limbs are base 1e9.

#include <cstdint>
#include <string>
#include <vector>

namespace jac {

class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v);

    void mul_small(std::uint64_t f);
    void add_small(std::uint64_t a);
    void add(const BigUint& other);
    std::uint64_t mod_small(std::uint64_t m) const;

    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws if it does not fit
    std::string to_string() const;

    bool operator==(const BigUint& other) const { return limbs_ == other.limbs_; }

private:
    std::vector<std::uint32_t> limbs_;  // little-endian, base 1e9
    void trim();
};

}  // namespace jac
