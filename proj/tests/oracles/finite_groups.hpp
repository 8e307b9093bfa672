// Brute-force and closed-form facts about finite abelian groups given as
// products of cyclic groups. Uses nothing from the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Orders = std::vector<std::int64_t>;               // cyclic orders, all >= 1
using Elem = std::vector<std::int64_t>;
using Mat = std::vector<std::vector<std::int64_t>>;      // rows = target generators

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline std::uint64_t order_of(const Orders& g) {
    std::uint64_t n = 1;
    for (auto o : g) n *= static_cast<std::uint64_t>(o);
    return n;
}

inline Elem decode(const Orders& g, std::uint64_t idx) {
    Elem e(g.size());
    for (std::size_t k = g.size(); k-- > 0;) {
        e[k] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(g[k]));
        idx /= static_cast<std::uint64_t>(g[k]);
    }
    return e;
}

inline std::uint64_t encode(const Orders& g, const Elem& e) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < g.size(); ++k) idx = idx * static_cast<std::uint64_t>(g[k]) + static_cast<std::uint64_t>(mod(e[k], g[k]));
    return idx;
}

inline std::vector<Elem> elements(const Orders& g) {
    std::vector<Elem> out;
    for (std::uint64_t i = 0; i < order_of(g); ++i) out.push_back(decode(g, i));
    return out;
}

inline Elem scale(const Orders& g, std::int64_t k, const Elem& e) {
    Elem r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = mod(k * e[i], g[i]);
    return r;
}

inline Elem add(const Orders& g, const Elem& a, const Elem& b) {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], g[i]);
    return r;
}

inline bool is_zero(const Elem& e) {
    for (auto x : e)
        if (x) return false;
    return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Invariant factors d1 | d2 | ... (all >= 2) of a group of the given order,
// read off from kill(k) = #{x : kx = 0}.
inline std::vector<std::int64_t> invariants_from_kill_counts(std::uint64_t order, const std::function<std::uint64_t(std::int64_t)>& kill) {
    std::map<std::int64_t, std::vector<int>> parts;  // prime -> exponents, descending
    for (auto p : prime_factors(static_cast<std::int64_t>(order))) {
        std::vector<int> at_least;  // at_least[j-1] = #cyclic p-factors of order >= p^j
        std::int64_t pj = 1;
        std::uint64_t prev = 1;
        while (true) {
            pj *= p;
            std::uint64_t c = kill(pj);
            int r = 0;
            for (std::uint64_t q = c / prev; q > 1; q /= static_cast<std::uint64_t>(p)) ++r;
            if (r == 0) break;
            at_least.push_back(r);
            prev = c;
        }
        std::vector<int> exps;
        for (std::size_t j = 0; j < at_least.size(); ++j) {
            int exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
            for (int t = 0; t < exact; ++t) exps.push_back(static_cast<int>(j + 1));
        }
        std::sort(exps.rbegin(), exps.rend());
        parts[p] = exps;
    }
    std::size_t len = 0;
    for (auto& [p, e] : parts) len = std::max(len, e.size());
    std::vector<std::int64_t> d(len, 1);  // d[0] largest
    for (auto& [p, e] : parts)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int t = 0; t < e[i]; ++t) d[i] *= p;
    std::reverse(d.begin(), d.end());
    return d;
}

// Invariant factors of a product of cyclic groups.
inline std::vector<std::int64_t> invariants(const Orders& g) {
    return invariants_from_kill_counts(order_of(g), [&](std::int64_t k) {
        std::uint64_t c = 1;
        for (auto o : g) c *= static_cast<std::uint64_t>(std::gcd(k, o));
        return c;
    });
}

// Invariant factors of Z/B with Z a subgroup of g (membership test) and B the listed subgroup of Z.
inline std::vector<std::int64_t> subquotient_invariants(const Orders& g, const std::function<bool(const Elem&)>& in_z, const std::vector<Elem>& b) {
    std::set<std::uint64_t> bset;
    for (const auto& e : b) bset.insert(encode(g, e));
    bset.insert(encode(g, Elem(g.size(), 0)));
    std::vector<Elem> z;
    for (const auto& e : elements(g))
        if (in_z(e)) z.push_back(e);
    std::uint64_t order = z.size() / bset.size();
    return invariants_from_kill_counts(order, [&](std::int64_t k) {
        std::uint64_t c = 0;
        for (const auto& e : z)
            if (bset.count(encode(g, scale(g, k, e)))) ++c;
        return c / bset.size();
    });
}

// ---------------------------------------------------------------------------
// Homomorphisms

inline Elem apply(const Mat& m, const Orders& tgt, const Elem& x) {
    Elem y(tgt.size(), 0);
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += m[j][i] * x[i];
        y[j] = mod(s, tgt[j]);
    }
    return y;
}

inline bool is_hom(const Mat& m, const Orders& src, const Orders& tgt) {
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i)
            if (mod(src[i] * m[j][i], tgt[j]) != 0) return false;
    return true;
}

inline Mat compose(const Mat& g, const Orders& mid, const Mat& f, const Orders& src, const Orders& tgt) {
    Mat r(tgt.size(), std::vector<std::int64_t>(src.size(), 0));
    for (std::size_t k = 0; k < tgt.size(); ++k)
        for (std::size_t i = 0; i < src.size(); ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < mid.size(); ++j) s += g[k][j] * f[j][i];
            r[k][i] = mod(s, tgt[k]);
        }
    return r;
}

// Hom(src, tgt) with coordinates: entry (j,i) = c * tgt[j] / gcd(src[i], tgt[j]), c in Z/gcd.
struct HomSpace {
    Orders src, tgt, coords;

    HomSpace(Orders s, Orders t) : src(std::move(s)), tgt(std::move(t)) {
        for (std::size_t j = 0; j < tgt.size(); ++j)
            for (std::size_t i = 0; i < src.size(); ++i) coords.push_back(std::gcd(src[i], tgt[j]));
    }
    Mat matrix(const Elem& c) const {
        Mat m(tgt.size(), std::vector<std::int64_t>(src.size(), 0));
        std::size_t k = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j)
            for (std::size_t i = 0; i < src.size(); ++i, ++k) m[j][i] = mod(c[k] * (tgt[j] / coords[k]), tgt[j]);
        return m;
    }
    Elem coordinates(const Mat& m) const {
        Elem c;
        std::size_t k = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j)
            for (std::size_t i = 0; i < src.size(); ++i, ++k) c.push_back(mod(m[j][i], tgt[j]) / (tgt[j] / coords[k]));
        return c;
    }
    std::vector<Mat> all() const {
        std::vector<Mat> out;
        for (const auto& c : elements(coords)) out.push_back(matrix(c));
        return out;
    }
};

// Number of homomorphisms, by testing every assignment of generator images.
inline std::uint64_t count_homs(const Orders& src, const Orders& tgt) {
    std::uint64_t n = 0;
    Orders entries;
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i) entries.push_back(tgt[j]);
    for (const auto& e : elements(entries)) {
        Mat m(tgt.size(), std::vector<std::int64_t>(src.size()));
        std::size_t k = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j)
            for (std::size_t i = 0; i < src.size(); ++i) m[j][i] = e[k++];
        if (is_hom(m, src, tgt)) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Two-term complexes [A --u--> B], B in degree 0

struct Complex {
    Orders A, B;
    Mat u;
};

inline std::vector<std::int64_t> h0(const Complex& k) {
    std::vector<Elem> im;
    for (const auto& a : elements(k.A)) im.push_back(apply(k.u, k.B, a));
    return subquotient_invariants(k.B, [](const Elem&) { return true; }, im);
}

inline std::vector<std::int64_t> h1(const Complex& k) {
    return subquotient_invariants(k.A, [&](const Elem& a) { return is_zero(apply(k.u, k.B, a)); }, {});
}

// Chain maps (f1, f0) : K -> L, optionally modulo homotopies (h u_K, u_L h), h : B_K -> A_L.
inline std::vector<std::int64_t> chain_maps(const Complex& k, const Complex& l, bool modulo_homotopy) {
    HomSpace s1(k.A, l.A), s0(k.B, l.B), sh(k.B, l.A);
    Orders amb = s1.coords;
    amb.insert(amb.end(), s0.coords.begin(), s0.coords.end());
    auto split = [&](const Elem& e) {
        return std::pair{s1.matrix(Elem(e.begin(), e.begin() + s1.coords.size())), s0.matrix(Elem(e.begin() + s1.coords.size(), e.end()))};
    };
    auto is_chain = [&](const Elem& e) {
        auto [f1, f0] = split(e);
        return compose(l.u, l.A, f1, k.A, l.B) == compose(f0, k.B, k.u, k.A, l.B);
    };
    std::vector<Elem> b;
    if (modulo_homotopy)
        for (const auto& h : sh.all()) {
            Elem e = s1.coordinates(compose(h, k.B, k.u, k.A, l.A));
            Elem e0 = s0.coordinates(compose(l.u, l.A, h, k.B, l.B));
            e.insert(e.end(), e0.begin(), e0.end());
            b.push_back(e);
        }
    return subquotient_invariants(amb, is_chain, b);
}

// ---------------------------------------------------------------------------
// Closed forms on cyclic groups, 0 standing for Z

inline std::int64_t hom_cyclic(std::int64_t m, std::int64_t n) {  // order of Hom(Z/m, Z/n); 0 = Z
    if (m == 0) return n;
    if (n == 0) return 1;
    return std::gcd(m, n);
}
inline std::int64_t ext_cyclic(std::int64_t m, std::int64_t n) {
    if (m == 0) return 1;
    if (n == 0) return m;
    return std::gcd(m, n);
}
inline std::int64_t tensor_cyclic(std::int64_t m, std::int64_t n) {
    if (m == 0) return n;
    if (n == 0) return m;
    return std::gcd(m, n);
}
inline std::int64_t tor_cyclic(std::int64_t m, std::int64_t n) {
    if (m == 0 || n == 0) return 1;
    return std::gcd(m, n);
}

using Homology = std::map<int, std::vector<std::int64_t>>;  // degree -> invariant factors, finite groups only

inline Homology homology(const Complex& k) { return {{0, h0(k)}, {1, h1(k)}}; }

inline std::vector<std::int64_t> pairwise(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                          std::int64_t (*f)(std::int64_t, std::int64_t)) {
    Orders out;
    for (auto x : a)
        for (auto y : b) out.push_back(f(x, y));
    return out;
}

inline Homology kunneth(const Homology& x, const Homology& y) {
    std::map<int, Orders> raw;
    for (const auto& [p, hp] : x)
        for (const auto& [q, hq] : y) {
            auto t = pairwise(hp, hq, tensor_cyclic);
            raw[p + q].insert(raw[p + q].end(), t.begin(), t.end());
            auto r = pairwise(hp, hq, tor_cyclic);
            raw[p + q + 1].insert(raw[p + q + 1].end(), r.begin(), r.end());
        }
    Homology out;
    for (auto& [n, o] : raw) out[n] = invariants(o);
    return out;
}

// Ext^n(X, Y) in the derived category from homology alone.
inline std::vector<std::int64_t> derived_hom(const Homology& x, const Homology& y, int n) {
    Orders raw;
    for (const auto& [a, ha] : x)
        for (const auto& [b, hb] : y) {
            if (b == a - n) {
                auto t = pairwise(ha, hb, hom_cyclic);
                raw.insert(raw.end(), t.begin(), t.end());
            }
            if (b == a + 1 - n) {
                auto t = pairwise(ha, hb, ext_cyclic);
                raw.insert(raw.end(), t.begin(), t.end());
            }
        }
    return invariants(raw);
}

} // namespace oracle
