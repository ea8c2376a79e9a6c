#include "kwtopo/zq.hpp"

#include <cmath>
#include <numbers>

namespace kwtopo {

bool is_prime(uint32_t q) {
    if (q < 2) return false;
    for (uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

void require_prime(uint32_t q) {
    if (!is_prime(q)) throw CompositeModulus(q);
}

uint8_t zq_inv(uint8_t a, uint32_t q) {
    require_prime(q);
    if (a == 0) throw Error("zero has no inverse");
    // Fermat: a^(q-2) mod q
    uint32_t result = 1, base = a, e = q - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return static_cast<uint8_t>(result);
}

namespace {

std::vector<Cplx> make_roots(uint32_t q) {
    if (q < 2) throw Error("modulus must be >= 2");
    std::vector<Cplx> roots(q);
    for (uint32_t r = 0; r < q; ++r) {
        double angle = 2.0 * std::numbers::pi * double(r) / double(q);
        roots[r] = Cplx(std::cos(angle), std::sin(angle));
    }
    return roots;
}

} // namespace

Character::Character(uint32_t q, uint32_t k)
    : q_(q), k_(k % q), roots_(make_roots(q)) {}

RootTable::RootTable(uint32_t q) : q_(q), roots_(make_roots(q)) {}

} // namespace kwtopo
