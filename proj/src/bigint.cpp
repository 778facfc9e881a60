#include "jac/bigint.hpp"

#include <stdexcept>

namespace jac {

static constexpr std::uint64_t kBase = 1000000000ULL;

BigUint::BigUint(std::uint64_t v) {
    limbs_.clear();
    do {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    } while (v > 0);
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

void BigUint::mul_small(std::uint64_t f) {
    if (f >= kBase) throw std::invalid_argument("BigUint::mul_small: factor too large");
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
        limb = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    while (carry > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
    trim();
}

void BigUint::add_small(std::uint64_t a) {
    std::uint64_t carry = a;
    for (std::size_t i = 0; i < limbs_.size() && carry > 0; ++i) {
        std::uint64_t cur = limbs_[i] + carry;
        limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    while (carry > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
}

void BigUint::add(const BigUint& other) {
    if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t cur = carry + limbs_[i] +
                            (i < other.limbs_.size() ? other.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    if (carry > 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
}

std::uint64_t BigUint::mod_small(std::uint64_t m) const {
    if (m == 0) throw std::invalid_argument("BigUint::mod_small: zero modulus");
    if (m > (1ULL << 32)) throw std::invalid_argument("BigUint::mod_small: modulus too large");
    std::uint64_t r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;)
        r = (r * (kBase % m) + limbs_[i]) % m;
    return r;
}

bool BigUint::fits_u64() const {
    // 3 limbs < 1e27; check against 2^64 by reconstructing carefully.
    if (limbs_.size() > 3) return false;
    unsigned __int128 v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return v <= static_cast<unsigned __int128>(~0ULL);
}

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint::to_u64: value too large");
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return v;
}

std::string BigUint::to_string() const {
    std::string s = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

}  // namespace jac
