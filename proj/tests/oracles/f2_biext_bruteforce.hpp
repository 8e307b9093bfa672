// Brute-force count of biextensions of (Z/2, Z/2) by Z/2 from (phi, psi)
// cocycle tables. Uses nothing from the library.
#pragma once

#include <cstdint>
#include <set>

namespace oracle {

struct F2BiextCount {
    std::uint64_t cocycles = 0;     // pairs (phi, psi) satisfying all relations
    std::uint64_t coboundaries = 0; // distinct (phi_h, psi_h)
    std::uint64_t automorphisms = 0; // h with phi_h = psi_h = 0
};

// phi bit index: p, p', q -> 4p + 2p' + q.  psi bit index: p, q, q' -> 4p + 2q + q'.
inline int f2_bit(std::uint32_t table, int x, int y, int z) {
    return static_cast<int>((table >> (4 * x + 2 * y + z)) & 1u);
}

inline bool f2_partial_law_ok(std::uint32_t t, bool first_slot_varies) {
    // first_slot_varies: cocycle in (x, y) with z fixed (phi); otherwise cocycle in (y, z) with x fixed (psi)
    for (int c = 0; c < 2; ++c) {
        auto f = [&](int a, int b) { return first_slot_varies ? f2_bit(t, a, b, c) : f2_bit(t, c, a, b); };
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                if (f(a, b) != f(b, a)) return false;
                for (int e = 0; e < 2; ++e)
                    if ((f(a ^ b, e) ^ f(a, b) ^ f(a, b ^ e) ^ f(b, e)) != 0) return false;
            }
    }
    return true;
}

inline bool f2_compatible(std::uint32_t phi, std::uint32_t psi) {
    for (int p = 0; p < 2; ++p)
        for (int pp = 0; pp < 2; ++pp)
            for (int q = 0; q < 2; ++q)
                for (int qq = 0; qq < 2; ++qq) {
                    int lhs = f2_bit(phi, p, pp, q ^ qq) ^ f2_bit(phi, p, pp, q) ^ f2_bit(phi, p, pp, qq);
                    int rhs = f2_bit(psi, p ^ pp, q, qq) ^ f2_bit(psi, p, q, qq) ^ f2_bit(psi, pp, q, qq);
                    if (lhs != rhs) return false;
                }
    return true;
}

inline F2BiextCount f2_biext_bruteforce() {
    F2BiextCount out;
    for (std::uint32_t phi = 0; phi < 256; ++phi) {
        if (!f2_partial_law_ok(phi, true)) continue;
        for (std::uint32_t psi = 0; psi < 256; ++psi)
            if (f2_partial_law_ok(psi, false) && f2_compatible(phi, psi)) ++out.cocycles;
    }
    std::set<std::uint32_t> images;
    for (std::uint32_t h = 0; h < 16; ++h) {
        auto hv = [&](int p, int q) { return static_cast<int>((h >> (2 * p + q)) & 1u); };
        std::uint32_t phi = 0, psi = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) {
                    if (hv(x ^ y, z) ^ hv(x, z) ^ hv(y, z)) phi |= 1u << (4 * x + 2 * y + z);
                    if (hv(x, y ^ z) ^ hv(x, y) ^ hv(x, z)) psi |= 1u << (4 * x + 2 * y + z);
                }
        images.insert(phi | (psi << 8));
        if (phi == 0 && psi == 0) ++out.automorphisms;
    }
    out.coboundaries = images.size();
    return out;
}

} // namespace oracle
