#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kwtopo/errors.hpp"

namespace kwtopo {

using Cplx = std::complex<double>;

/// One entry of Z_q. Values are kept reduced to [0, q); q must be >= 2.
/// Arithmetic between elements with different moduli is rejected.
struct ZqElem {
    uint8_t value = 0;
    uint32_t q = 2;

    ZqElem() = default;
    ZqElem(int64_t v, uint32_t modulus) : q(modulus) {
        if (modulus < 2) throw Error("modulus must be >= 2");
        int64_t r = v % static_cast<int64_t>(modulus);
        if (r < 0) r += modulus;
        value = static_cast<uint8_t>(r);
    }

    friend ZqElem operator+(ZqElem a, ZqElem b) {
        a.require_same(b);
        return ZqElem(int64_t(a.value) + b.value, a.q);
    }
    friend ZqElem operator-(ZqElem a, ZqElem b) {
        a.require_same(b);
        return ZqElem(int64_t(a.value) - b.value, a.q);
    }
    friend ZqElem operator*(ZqElem a, ZqElem b) {
        a.require_same(b);
        return ZqElem(int64_t(a.value) * b.value, a.q);
    }
    ZqElem operator-() const { return ZqElem(-int64_t(value), q); }
    friend bool operator==(ZqElem a, ZqElem b) {
        return a.value == b.value && a.q == b.q;
    }

private:
    void require_same(ZqElem other) const {
        if (q != other.q) throw Error("mixed moduli in Z_q arithmetic");
    }
};

// Scalar helpers used throughout; vectors over Z_q are plain byte arrays
// (one byte per entry) and these operate on the raw values.

inline uint8_t zq_reduce(int64_t v, uint32_t q) {
    int64_t r = v % static_cast<int64_t>(q);
    if (r < 0) r += q;
    return static_cast<uint8_t>(r);
}

inline uint8_t zq_add(uint8_t a, uint8_t b, uint32_t q) {
    uint32_t s = uint32_t(a) + b;
    return static_cast<uint8_t>(s >= q ? s - q : s);
}

inline uint8_t zq_sub(uint8_t a, uint8_t b, uint32_t q) {
    int32_t s = int32_t(a) - b;
    return static_cast<uint8_t>(s < 0 ? s + int32_t(q) : s);
}

inline uint8_t zq_mul(uint8_t a, uint8_t b, uint32_t q) {
    return static_cast<uint8_t>((uint32_t(a) * b) % q);
}

inline uint8_t zq_neg(uint8_t a, uint32_t q) {
    return a == 0 ? 0 : static_cast<uint8_t>(q - a);
}

bool is_prime(uint32_t q);
void require_prime(uint32_t q);

/// Multiplicative inverse mod prime q.
uint8_t zq_inv(uint8_t a, uint32_t q);

/// Character chi_k on Z_q with chi_k(x) = exp(2*pi*i*k*x/q). Roots of unity
/// are tabulated once per instance so repeated evaluations are cheap and
/// bit-reproducible.
class Character {
public:
    Character(uint32_t q, uint32_t k);

    uint32_t modulus() const { return q_; }
    uint32_t index() const { return k_; }

    Cplx operator()(uint8_t x) const { return roots_[(size_t(k_) * x) % q_]; }

private:
    uint32_t q_;
    uint32_t k_;
    std::vector<Cplx> roots_;
};

/// Table of all q-th roots of unity; root(r) = exp(2*pi*i*r/q). Shared by the
/// Fourier code, which indexes characters by (k*x) mod q directly.
class RootTable {
public:
    explicit RootTable(uint32_t q);

    uint32_t modulus() const { return q_; }
    Cplx root(uint32_t r) const { return roots_[r % q_]; }
    /// chi_k(x)
    Cplx chi(uint32_t k, uint8_t x) const { return roots_[(size_t(k) * x) % q_]; }

private:
    uint32_t q_;
    std::vector<Cplx> roots_;
};

} // namespace kwtopo
