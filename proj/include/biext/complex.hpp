// Bounded chain complexes (homological indexing): homology, shifts, chain maps,
// derived Hom groups and free replacements.
#pragma once

#include "biext/abgroup.hpp"

#include <map>
#include <optional>

namespace biext {

class ChainComplex {
public:
    ChainComplex() = default;

    // groups[k] sits in degree lo + k; diffs[k] is d_{lo+k+1}: C_{lo+k+1} -> C_{lo+k}.
    ChainComplex(int lo, std::vector<FgAbGroup> groups, std::vector<GroupHom> diffs, bool check = true)
        : lo_(lo), groups_(std::move(groups)), diffs_(std::move(diffs)) {
        if (groups_.empty()) diffs_.clear();
        if (!groups_.empty() && diffs_.size() + 1 != groups_.size()) throw std::invalid_argument("chain complex needs one differential between consecutive groups");
        for (std::size_t k = 0; k < diffs_.size(); ++k)
            if (!diffs_[k].source().same_presentation(groups_[k + 1]) || !diffs_[k].target().same_presentation(groups_[k]))
                throw std::invalid_argument("differential does not match its groups");
        if (check && !is_complex()) throw std::invalid_argument("d∘d != 0");
    }

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(groups_.size()) - 1; }
    bool empty() const noexcept { return groups_.empty(); }

    FgAbGroup group(int n) const {
        if (n < lo_ || n > hi()) return FgAbGroup::zero();
        return groups_[static_cast<std::size_t>(n - lo_)];
    }
    // d_n: C_n -> C_{n-1}
    GroupHom diff(int n) const {
        if (n <= lo_ || n > hi()) return GroupHom::zero(group(n), group(n - 1));
        return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
    }

    bool is_complex() const {
        for (int n = lo_ + 2; n <= hi(); ++n)
            if (!compose(diff(n - 1), diff(n)).is_zero()) return false;
        return true;
    }

private:
    int lo_ = 0;
    std::vector<FgAbGroup> groups_;
    std::vector<GroupHom> diffs_;
};

// K = [A --u--> B], A in degree 1 and B in degree 0.
struct TwoTermComplex {
    FgAbGroup A, B;
    GroupHom u;

    TwoTermComplex() : u(GroupHom::zero(A, B)) {}
    TwoTermComplex(FgAbGroup a, FgAbGroup b, GroupHom map) : A(std::move(a)), B(std::move(b)), u(std::move(map)) {
        if (!u.source().same_presentation(A) || !u.target().same_presentation(B)) throw std::invalid_argument("u does not match A and B");
    }
    TwoTermComplex(FgAbGroup a, FgAbGroup b, const Matrix& m) : TwoTermComplex(a, b, GroupHom(a, b, m)) {}

    static TwoTermComplex zero_map(const FgAbGroup& a, const FgAbGroup& b) { return {a, b, GroupHom::zero(a, b)}; }

    ChainComplex chain() const { return ChainComplex(0, {B, A}, {u}); }
};

struct ChainMap {
    ChainComplex source, target;
    std::map<int, GroupHom> f;  // missing degrees are zero

    GroupHom at(int n) const {
        auto it = f.find(n);
        if (it != f.end()) return it->second;
        return GroupHom::zero(source.group(n), target.group(n));
    }
    bool commutes() const {
        int lo = std::min(source.lo(), target.lo()), hi = std::max(source.hi(), target.hi());
        for (int n = lo; n <= hi + 1; ++n)
            if (!(compose(target.diff(n), at(n)) == compose(at(n - 1), source.diff(n)))) return false;
        return true;
    }
};

inline Subquotient homology_sq(const ChainComplex& c, int n) { return homology(c.diff(n + 1), c.diff(n)); }
inline FgAbGroup homology(const ChainComplex& c, int n) {
    if (n < c.lo() || n > c.hi()) return FgAbGroup::zero();
    return homology_sq(c, n).group();
}

inline ChainComplex shift(const ChainComplex& c, int k) {
    if (c.empty()) return c;
    std::vector<FgAbGroup> g;
    std::vector<GroupHom> d;
    for (int n = c.lo(); n <= c.hi(); ++n) g.push_back(c.group(n));
    Integer s((k % 2 == 0) ? 1 : -1);
    for (int n = c.lo() + 1; n <= c.hi(); ++n) d.push_back(s * c.diff(n));
    return ChainComplex(c.lo() + k, std::move(g), std::move(d), false);
}

inline ChainComplex truncate_keep(const ChainComplex& c, int n_max) {
    if (c.empty() || n_max < c.lo()) return {};
    std::vector<FgAbGroup> g;
    std::vector<GroupHom> d;
    int top = std::min(n_max, c.hi());
    for (int n = c.lo(); n <= top; ++n) g.push_back(c.group(n));
    for (int n = c.lo() + 1; n <= top; ++n) d.push_back(c.diff(n));
    return ChainComplex(c.lo(), std::move(g), std::move(d), false);
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    std::vector<FgAbGroup> g;
    std::vector<GroupHom> d;
    for (int n = lo; n <= hi; ++n) g.push_back(direct_sum(a.group(n), b.group(n)));
    for (int n = lo + 1; n <= hi; ++n)
        d.push_back(GroupHom(g[n - lo], g[n - 1 - lo], block_diag(a.diff(n).matrix(), b.diff(n).matrix()), GroupHom::Unchecked{}));
    return ChainComplex(lo, std::move(g), std::move(d), false);
}

// Linear system over a list of Hom groups: unknowns in ⊕ Hom(X_i, Y_i).
class HomBlocks {
public:
    void add(int key, const FgAbGroup& x, const FgAbGroup& y) {
        index_[key] = blocks_.size();
        offsets_.push_back(total_);
        blocks_.emplace_back(x, y);
        total_ += blocks_.back().group().ngens();
    }
    bool has(int key) const { return index_.count(key) != 0; }
    const HomGroup& at(int key) const { return blocks_[index_.at(key)]; }
    std::size_t offset(int key) const { return offsets_[index_.at(key)]; }
    std::size_t total() const noexcept { return total_; }
    FgAbGroup group() const {
        std::vector<FgAbGroup> g;
        for (const auto& b : blocks_) g.push_back(b.group());
        return direct_sum(g);
    }
    std::vector<int> keys() const {
        std::vector<int> k;
        for (const auto& [key, _] : index_) k.push_back(key);
        return k;
    }
    // Coordinates of a hom placed in block key, written into v.
    void put(Vec& v, int key, const Matrix& m, int sign = 1) const {
        Vec c = at(key).coords(m);
        std::size_t off = offset(key);
        for (std::size_t i = 0; i < c.size(); ++i) v[off + i] += sign > 0 ? c[i] : -c[i];
    }
    Vec slice(const Vec& v, int key) const {
        std::size_t off = offset(key), n = at(key).group().ngens();
        return Vec(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n));
    }

private:
    std::map<int, std::size_t> index_;
    std::vector<HomGroup> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
};

// Degree-n piece of the Hom complex: Hom^n = ⊕_p Hom(L_p, K_{p-n}) and
// D: Hom^n -> Hom^{n+1}, (Dφ)_p = d^K φ_p - (-1)^n φ_{p-1} d^L_p.
struct HomComplexStep {
    HomBlocks from, to;
    GroupHom map;
};

inline HomComplexStep hom_complex_step(const ChainComplex& l, const ChainComplex& k, int n) {
    HomComplexStep st;
    for (int p = l.lo(); p <= l.hi(); ++p) {
        if (l.group(p).ngens() && k.group(p - n).ngens()) st.from.add(p, l.group(p), k.group(p - n));
        if (l.group(p).ngens() && k.group(p - n - 1).ngens()) st.to.add(p, l.group(p), k.group(p - n - 1));
    }
    FgAbGroup src = st.from.group(), tgt = st.to.group();
    Matrix m(tgt.ngens(), src.ngens());
    const int sign = (n % 2 == 0) ? 1 : -1;
    for (int p : st.from.keys()) {
        const HomGroup& h = st.from.at(p);
        for (std::size_t g = 0; g < h.group().ngens(); ++g) {
            GroupHom w = h.witness(g);
            Vec col(tgt.ngens());
            if (st.to.has(p)) st.to.put(col, p, compose(k.diff(p - n), w).matrix());
            if (st.to.has(p + 1)) st.to.put(col, p + 1, compose(w, l.diff(p + 1)).matrix(), -sign);
            for (std::size_t i = 0; i < col.size(); ++i) m(i, st.from.offset(p) + g) = col[i];
        }
    }
    st.map = GroupHom(src, tgt, std::move(m), GroupHom::Unchecked{});
    return st;
}

// Chain maps L -> K (not modulo homotopy), with witnesses.
class ChainMapGroup {
public:
    ChainMapGroup(ChainComplex l, ChainComplex k) : l_(std::move(l)), k_(std::move(k)), step_(hom_complex_step(l_, k_, 0)), ker_(step_.map) {}

    const FgAbGroup& group() const { return ker_.group(); }
    ChainMap witness(std::size_t i) const {
        Vec e(group().ngens());
        e[i] = 1;
        return element(e);
    }
    ChainMap element(const Vec& c) const {
        Vec amb = step_.map.source().reduce(ker_.inclusion().matrix().apply(c));
        ChainMap f{l_, k_, {}};
        for (int p : step_.from.keys()) f.f.emplace(p, step_.from.at(p).element(step_.from.slice(amb, p)));
        return f;
    }
    Vec coords(const ChainMap& f) const {
        Vec v(step_.map.source().ngens());
        for (int p : step_.from.keys()) step_.from.put(v, p, f.at(p).matrix());
        return ker_.coords(step_.map.source().reduce(v));
    }

private:
    ChainComplex l_, k_;
    HomComplexStep step_;
    Kernel ker_;
};

inline FgAbGroup chain_map_group(const ChainComplex& l, const ChainComplex& k) { return ChainMapGroup(l, k).group(); }

// Chain maps L -> K[n] modulo all homotopies: H^n of the Hom complex.
inline FgAbGroup homotopy_classes(const ChainComplex& l, const ChainComplex& k, int n) {
    auto prev = hom_complex_step(l, k, n - 1);
    auto cur = hom_complex_step(l, k, n);
    return homology(prev.map, cur.map).group();
}

struct FreeReplacement {
    ChainComplex complex;
    std::vector<std::pair<int, bool>> certificate;  // degree, homology matches
};

// Blockwise from two-step free resolutions of each homology group; when
// contractible is set, a summand [Z --1--> Z] is added in every degree.
inline FreeReplacement free_replacement(const ChainComplex& c, bool contractible = false) {
    FreeReplacement out;
    if (c.empty()) return out;
    std::vector<FgAbGroup> h;
    for (int n = c.lo(); n <= c.hi(); ++n) h.push_back(homology(c, n));
    int lo = c.lo(), hi = c.hi() + 1;
    auto hgrp = [&](int n) -> const FgAbGroup* {
        if (n < c.lo() || n > c.hi()) return nullptr;
        return &h[static_cast<std::size_t>(n - c.lo())];
    };
    auto f0 = [&](int n) -> std::size_t { auto g = hgrp(n); return g ? g->ngens() : 0; };
    auto f1 = [&](int n) -> std::size_t { auto g = hgrp(n); return g ? g->relations().cols() : 0; };
    // contractible pieces: bottom(n) in degree n is hit by top(n+1) in degree n+1
    auto bottom = [&](int n) -> std::size_t { return contractible && n < hi ? 1 : 0; };
    auto top = [&](int n) -> std::size_t { return contractible && n > lo ? 1 : 0; };
    // layout of F_n: [F0(H_n) | F1(H_{n-1}) | bottom(n) | top(n)]
    auto size = [&](int n) { return f0(n) + f1(n - 1) + bottom(n) + top(n); };
    std::vector<FgAbGroup> g;
    std::vector<GroupHom> d;
    for (int n = lo; n <= hi; ++n) g.push_back(FgAbGroup::free(size(n)));
    for (int n = lo + 1; n <= hi; ++n) {
        Matrix m(size(n - 1), size(n));
        if (auto hp = hgrp(n - 1)) {
            Matrix r = hp->relations();
            for (std::size_t i = 0; i < r.rows(); ++i)
                for (std::size_t j = 0; j < r.cols(); ++j) m(i, f0(n) + j) = r(i, j);
        }
        if (top(n)) m(f0(n - 1) + f1(n - 2), f0(n) + f1(n - 1) + bottom(n)) = 1;
        d.push_back(GroupHom(g[static_cast<std::size_t>(n - lo)], g[static_cast<std::size_t>(n - 1 - lo)], std::move(m), GroupHom::Unchecked{}));
    }
    out.complex = ChainComplex(lo, std::move(g), std::move(d));
    for (int n = lo; n <= hi; ++n) out.certificate.emplace_back(n, homology(out.complex, n) == homology(c, n));
    return out;
}

// Formality route: Ext^n(L, K) = ⊕_{a,b} Ext^{n+b-a}(H_a L, H_b K).
inline FgAbGroup derived_hom_formal(const ChainComplex& l, const ChainComplex& k, int n) {
    std::vector<FgAbGroup> parts;
    for (int a = l.lo(); a <= l.hi(); ++a) {
        FgAbGroup ha = homology(l, a);
        if (ha.is_trivial()) continue;
        for (int b = k.lo(); b <= k.hi(); ++b) {
            int e = n + b - a;
            if (e != 0 && e != 1) continue;
            FgAbGroup hb = homology(k, b);
            if (hb.is_trivial()) continue;
            parts.push_back(e == 0 ? hom_group(ha, hb) : ext_group(ha, hb));
        }
    }
    return normalize(direct_sum(parts)).group;
}

// Resolution route: H^n of Hom(F, K) with F a free replacement of L.
inline FgAbGroup derived_hom_resolved(const ChainComplex& l, const ChainComplex& k, int n, bool contractible = false) {
    auto f = free_replacement(l, contractible).complex;
    return homotopy_classes(f, k, n);
}

inline FgAbGroup derived_hom_group(const ChainComplex& l, const ChainComplex& k, int n) {
    FgAbGroup a = derived_hom_formal(l, k, n);
    FgAbGroup b = derived_hom_resolved(l, k, n);
    if (!(a == b))
        throw RouteMismatch("Ext^" + std::to_string(n) + ": formality route gives " + a.str() + ", resolution route gives " + b.str());
    return a;
}

struct QuasiIsoReport {
    std::map<int, bool> iso;  // per degree
    bool all() const {
        for (const auto& [n, v] : iso)
            if (!v) return false;
        return true;
    }
};

inline GroupHom homology_map(const ChainMap& f, int n) {
    auto hs = homology_sq(f.source, n), ht = homology_sq(f.target, n);
    return induced_map(hs, ht, f.at(n));
}

inline bool is_isomorphism(const GroupHom& g) {
    return Kernel(g).group().is_trivial() && cokernel(g).group.is_trivial();
}

inline QuasiIsoReport is_quasi_iso(const ChainMap& f) {
    QuasiIsoReport r;
    int lo = std::min(f.source.lo(), f.target.lo()), hi = std::max(f.source.hi(), f.target.hi());
    for (int n = lo; n <= hi; ++n) r.iso[n] = is_isomorphism(homology_map(f, n));
    return r;
}

} // namespace biext
