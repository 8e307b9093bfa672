// Canonical flat partial resolution L..(K) of a two-term complex and the
// tensor resolution L..(K1, K2).
#pragma once

#include "biext/bicomplex.hpp"

#include <functional>

namespace biext {

struct ResolutionLimits {
    std::size_t max_order = 16;
};

struct AugmentedResolution {
    TwoTermComplex K;
    Bicomplex bicomplex;
    GroupHom eps0;  // L00 -> B
    GroupHom eps1;  // L10 -> A
    bool free_model = false;
};

namespace detail {

inline Factor set_factor(const std::string& name, const FgAbGroup& g) { return Factor{name, true, g}; }

// Basis of Z[X1 x ... x Xk] in lexicographic order of tuples.
class ProductBasis {
public:
    explicit ProductBasis(std::vector<const ElementIndex*> sets) : sets_(std::move(sets)) {
        size_ = 1;
        for (auto s : sets_) size_ *= s->size();
    }
    std::size_t size() const noexcept { return size_; }
    std::size_t index(std::initializer_list<std::size_t> t) const {
        std::size_t idx = 0, k = 0;
        for (std::size_t x : t) idx = idx * sets_[k++]->size() + x;
        return idx;
    }
    std::vector<std::size_t> tuple(std::size_t idx) const {
        std::vector<std::size_t> t(sets_.size());
        for (std::size_t k = sets_.size(); k-- > 0;) {
            t[k] = idx % sets_[k]->size();
            idx /= sets_[k]->size();
        }
        return t;
    }

private:
    std::vector<const ElementIndex*> sets_;
    std::size_t size_ = 1;
};

inline std::size_t image_index(const GroupHom& u, const ElementIndex& a, const ElementIndex& b, std::size_t x) {
    return b.index(u.apply(a.element(x)));
}

} // namespace detail

inline std::size_t guarded_order(const FgAbGroup& g, const ResolutionLimits& lim, const std::string& what) {
    if (!g.is_finite()) throw InfiniteGroup(what + " is infinite; Z[" + what + "] would not be finitely generated");
    Integer o = g.order();
    if (o > Integer(static_cast<long long>(lim.max_order)))
        throw SizeGuardExceeded("|" + what + "| = " + o.str() + " exceeds the size guard " + std::to_string(lim.max_order));
    return static_cast<std::size_t>(o.to_int64());
}

// L00 = Z[B], L01 = Z[BxB], L02 = Z[BxB] + Z[BxBxB], L10 = Z[A], L11 = Z[AxA];
// when A and B are free with a nonzero term the resolution is K itself (L00 = B, L10 = A).
inline bool uses_free_model(const TwoTermComplex& k) {
    return k.A.is_free() && k.B.is_free() && k.A.ngens() + k.B.ngens() > 0;
}

inline AugmentedResolution canonical_resolution(const TwoTermComplex& k, const ResolutionLimits& lim = {}, const std::string& suffix = "") {
    AugmentedResolution r;
    r.K = k;
    const std::string an = "A" + suffix, bn = "B" + suffix;
    if (uses_free_model(k)) {
        r.free_model = true;
        r.bicomplex.set_cell(0, 0, Cell{k.B, {Block{{Factor{bn, false, k.B}}, 0, k.B.ngens()}}});
        r.bicomplex.set_cell(1, 0, Cell{k.A, {Block{{Factor{an, false, k.A}}, 0, k.A.ngens()}}});
        r.bicomplex.set_horizontal(0, 0, k.u.matrix());
        r.eps0 = GroupHom::identity(k.B);
        r.eps1 = GroupHom::identity(k.A);
        return r;
    }
    const std::size_t nb = guarded_order(k.B, lim, bn);
    const std::size_t na = guarded_order(k.A, lim, an);
    ElementIndex ia(k.A), ib(k.B);
    detail::ProductBasis b1({&ib}), b2({&ib, &ib}), b3({&ib, &ib, &ib}), a1({&ia}), a2({&ia, &ia});
    auto fa = detail::set_factor(an, k.A), fb = detail::set_factor(bn, k.B);

    r.bicomplex.set_cell(0, 0, Cell{FgAbGroup::free(nb), {Block{{fb}, 0, nb}}});
    r.bicomplex.set_cell(0, 1, Cell{FgAbGroup::free(nb * nb), {Block{{fb, fb}, 0, nb * nb}}});
    r.bicomplex.set_cell(0, 2, Cell{FgAbGroup::free(nb * nb + nb * nb * nb), {Block{{fb, fb}, 0, nb * nb}, Block{{fb, fb, fb}, nb * nb, nb * nb * nb}}});
    r.bicomplex.set_cell(1, 0, Cell{FgAbGroup::free(na), {Block{{fa}, 0, na}}});
    r.bicomplex.set_cell(1, 1, Cell{FgAbGroup::free(na * na), {Block{{fa, fa}, 0, na * na}}});

    // d00[b1,b2] = [b1+b2] - [b1] - [b2]
    Matrix d00(nb, nb * nb);
    for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            std::size_t c = b2.index({x, y});
            d00(ib.add(x, y), c) += 1;
            d00(x, c) -= 1;
            d00(y, c) -= 1;
        }
    // d01[b1,b2]' = [b1,b2] - [b2,b1];
    // d01[b1,b2,b3] = [b1+b2,b3] - [b1,b2+b3] + [b1,b2] - [b2,b3]
    Matrix d01(nb * nb, nb * nb + nb * nb * nb);
    for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            std::size_t c = b2.index({x, y});
            d01(b2.index({x, y}), c) += 1;
            d01(b2.index({y, x}), c) -= 1;
        }
    for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y)
            for (std::size_t z = 0; z < nb; ++z) {
                std::size_t c = nb * nb + b3.index({x, y, z});
                d01(b2.index({ib.add(x, y), z}), c) += 1;
                d01(b2.index({x, ib.add(y, z)}), c) -= 1;
                d01(b2.index({x, y}), c) += 1;
                d01(b2.index({y, z}), c) -= 1;
            }
    // D00[a] = [u(a)]
    Matrix D00(nb, na);
    for (std::size_t x = 0; x < na; ++x) D00(detail::image_index(k.u, ia, ib, x), x) += 1;
    // d10[a1,a2] = [a1+a2] - [a1] - [a2];  D01[a1,a2] = -[u a1, u a2]
    Matrix d10(na, na * na), D01(nb * nb, na * na);
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y) {
            std::size_t c = a2.index({x, y});
            d10(ia.add(x, y), c) += 1;
            d10(x, c) -= 1;
            d10(y, c) -= 1;
            D01(b2.index({detail::image_index(k.u, ia, ib, x), detail::image_index(k.u, ia, ib, y)}), c) -= 1;
        }
    r.bicomplex.set_vertical(0, 0, std::move(d00));
    r.bicomplex.set_vertical(0, 1, std::move(d01));
    r.bicomplex.set_horizontal(0, 0, std::move(D00));
    r.bicomplex.set_vertical(1, 0, std::move(d10));
    r.bicomplex.set_horizontal(0, 1, std::move(D01));

    Matrix e0(k.B.ngens(), nb), e1(k.A.ngens(), na);
    for (std::size_t x = 0; x < nb; ++x) {
        Vec v = ib.element(x);
        for (std::size_t i = 0; i < v.size(); ++i) e0(i, x) = v[i];
    }
    for (std::size_t x = 0; x < na; ++x) {
        Vec v = ia.element(x);
        for (std::size_t i = 0; i < v.size(); ++i) e1(i, x) = v[i];
    }
    r.eps0 = GroupHom(FgAbGroup::free(nb), k.B, std::move(e0));
    r.eps1 = GroupHom(FgAbGroup::free(na), k.A, std::move(e1));
    return r;
}

// The augmentation Tot(L..(K)) -> K as a chain map.
inline ChainMap augmentation(const AugmentedResolution& r, const TotalComplex& t) {
    ChainMap f{t.complex, r.K.chain(), {}};
    f.f.emplace(0, GroupHom(t.complex.group(0), r.K.B, r.eps0.matrix(), GroupHom::Unchecked{}));
    Matrix m1(r.K.A.ngens(), t.complex.group(1).ngens());
    if (const TotSummand* s = t.find(1, 0)) m1.set_block(0, s->offset, r.eps1.matrix());
    f.f.emplace(1, GroupHom(t.complex.group(1), r.K.A, std::move(m1), GroupHom::Unchecked{}));
    return f;
}

// L..(f) for a morphism (f1: A -> A', f0: B -> B') of two-term complexes, per cell.
inline std::map<Pos, Matrix> resolution_map(const AugmentedResolution& src, const AugmentedResolution& dst, const GroupHom& f1, const GroupHom& f0) {
    std::map<Pos, Matrix> out;
    if (src.free_model || dst.free_model) {
        out[{0, 0}] = f0.matrix();
        out[{1, 0}] = f1.matrix();
        return out;
    }
    ElementIndex ia(src.K.A), ib(src.K.B), ja(dst.K.A), jb(dst.K.B);
    auto mb = [&](std::size_t x) { return detail::image_index(f0, ib, jb, x); };
    auto ma = [&](std::size_t x) { return detail::image_index(f1, ia, ja, x); };
    const std::size_t nb = ib.size(), na = ia.size(), mbn = jb.size(), man = ja.size();
    Matrix m00(mbn, nb), m01(mbn * mbn, nb * nb), m02(mbn * mbn + mbn * mbn * mbn, nb * nb + nb * nb * nb), m10(man, na), m11(man * man, na * na);
    for (std::size_t x = 0; x < nb; ++x) {
        m00(mb(x), x) = 1;
        for (std::size_t y = 0; y < nb; ++y) {
            m01(mb(x) * mbn + mb(y), x * nb + y) = 1;
            m02(mb(x) * mbn + mb(y), x * nb + y) = 1;
            for (std::size_t z = 0; z < nb; ++z) m02(mbn * mbn + (mb(x) * mbn + mb(y)) * mbn + mb(z), nb * nb + (x * nb + y) * nb + z) = 1;
        }
    }
    for (std::size_t x = 0; x < na; ++x) {
        m10(ma(x), x) = 1;
        for (std::size_t y = 0; y < na; ++y) m11(ma(x) * man + ma(y), x * na + y) = 1;
    }
    out[{0, 0}] = m00;
    out[{0, 1}] = m01;
    out[{0, 2}] = m02;
    out[{1, 0}] = m10;
    out[{1, 1}] = m11;
    return out;
}

inline std::size_t resolution_weight(const TwoTermComplex& k, const ResolutionLimits& lim, const std::string& name) {
    if (uses_free_model(k)) return 1;
    return guarded_order(k.B, lim, name);
}

// L..(K1) ⊗ L..(K2), materialized up to total degree max_total.
inline Bicomplex tensor_resolution(const TwoTermComplex& k1, const TwoTermComplex& k2, const ResolutionLimits& lim = {}, int max_total = 2) {
    std::size_t w = resolution_weight(k1, lim, "B1") * resolution_weight(k2, lim, "B2");
    if (w > lim.max_order)
        throw SizeGuardExceeded("|B1|*|B2| = " + std::to_string(w) + " exceeds the size guard " + std::to_string(lim.max_order));
    ResolutionLimits inner{std::max<std::size_t>(lim.max_order, 1)};
    auto r1 = canonical_resolution(k1, inner, "1");
    auto r2 = canonical_resolution(k2, inner, "2");
    return tensor_bicomplexes(r1.bicomplex, r2.bicomplex, max_total);
}

// Degrees 0..2 of Tot(L..(K1, K2)).
inline TotalComplex truncated_tensor_total(const TwoTermComplex& k1, const TwoTermComplex& k2, const ResolutionLimits& lim = {}) {
    TotalComplex t = total_complex(tensor_resolution(k1, k2, lim, 2));
    t.complex = truncate_keep(t.complex, 2);
    return t;
}

struct PartialResolutionReport {
    FgAbGroup tot_h0, tot_h1, k_h0, k_h1;
    bool augmentation_is_chain_map = false;
    bool iso_h0 = false, iso_h1 = false;
    bool ok() const { return tot_h0 == k_h0 && tot_h1 == k_h1 && augmentation_is_chain_map && iso_h0 && iso_h1; }
};

inline PartialResolutionReport check_partial_resolution(const TwoTermComplex& k, const ResolutionLimits& lim = {}) {
    auto r = canonical_resolution(k, lim);
    auto t = total_complex(r.bicomplex);
    PartialResolutionReport rep;
    rep.tot_h0 = homology(t.complex, 0);
    rep.tot_h1 = homology(t.complex, 1);
    rep.k_h0 = homology(k.chain(), 0);
    rep.k_h1 = homology(k.chain(), 1);
    // ε is checked as a chain map out of degrees <= 2 of Tot
    ChainMap e = augmentation(r, t);
    rep.augmentation_is_chain_map = e.commutes();
    rep.iso_h0 = is_isomorphism(homology_map(e, 0));
    rep.iso_h1 = is_isomorphism(homology_map(e, 1));
    return rep;
}

struct ConditionReport {
    std::map<std::string, bool> checks;
    bool all() const {
        for (const auto& [k, v] : checks)
            if (!v) return false;
        return true;
    }
};

// (exact1), (exact2) and the four anticommuting squares of the tensor resolution.
inline ConditionReport check_conditions(const Bicomplex& l) {
    ConditionReport rep;
    rep.checks["bicomplex"] = l.valid();
    auto vert = [&](Pos to, const std::string& tb, Pos from, const std::string& fb) { return block_matrix(l, false, to, tb, from, fb); };
    auto hor = [&](Pos to, const std::string& tb, Pos from, const std::string& fb) { return block_matrix(l, true, to, tb, from, fb); };
    auto guarded = [&](const std::string& name, const std::function<bool()>& f) {
        try {
            rep.checks[name] = f();
        } catch (const BlockLabelsMissing&) {
            rep.checks[name] = false;
        }
    };
    const std::string b12 = "Z[B1xB2]";
    guarded("exact1", [&] {
        Matrix f = hstack(vert({0, 1}, "Z[B1xB2xB2]", {0, 2}, "Z[B1xB2xB2]"), vert({0, 1}, "Z[B1xB2xB2]", {0, 2}, "Z[B1xB2xB2xB2]"));
        return exact_at_middle(f, vert({0, 0}, b12, {0, 1}, "Z[B1xB2xB2]"));
    });
    guarded("exact2", [&] {
        Matrix f = hstack(vert({0, 1}, "Z[B1xB1xB2]", {0, 2}, "Z[B1xB1xB2]"), vert({0, 1}, "Z[B1xB1xB2]", {0, 2}, "Z[B1xB1xB1xB2]"));
        return exact_at_middle(f, vert({0, 0}, b12, {0, 1}, "Z[B1xB1xB2]"));
    });
    guarded("anti1", [&] {
        Matrix p = vert({0, 0}, b12, {0, 1}, "Z[B1xB1xB2]") * vert({0, 1}, "Z[B1xB1xB2]", {0, 2}, "Z[B1xB1xB2xB2]");
        Matrix q = vert({0, 0}, b12, {0, 1}, "Z[B1xB2xB2]") * vert({0, 1}, "Z[B1xB2xB2]", {0, 2}, "Z[B1xB1xB2xB2]");
        return (p + q).is_zero();
    });
    guarded("anti2", [&] {
        Matrix p = vert({0, 0}, b12, {0, 1}, "Z[B1xB2xB2]") * hor({0, 1}, "Z[B1xB2xB2]", {1, 1}, "Z[A1xB2xB2]");
        Matrix q = hor({0, 0}, b12, {1, 0}, "Z[A1xB2]") * vert({1, 0}, "Z[A1xB2]", {1, 1}, "Z[A1xB2xB2]");
        return (p + q).is_zero();
    });
    guarded("anti3", [&] {
        Matrix p = vert({0, 0}, b12, {0, 1}, "Z[B1xB1xB2]") * hor({0, 1}, "Z[B1xB1xB2]", {1, 1}, "Z[B1xB1xA2]");
        Matrix q = hor({0, 0}, b12, {1, 0}, "Z[B1xA2]") * vert({1, 0}, "Z[B1xA2]", {1, 1}, "Z[B1xB1xA2]");
        return (p + q).is_zero();
    });
    guarded("anti4", [&] {
        Matrix p = hor({0, 0}, b12, {1, 0}, "Z[A1xB2]") * hor({1, 0}, "Z[A1xB2]", {2, 0}, "Z[A1xA2]");
        Matrix q = hor({0, 0}, b12, {1, 0}, "Z[B1xA2]") * hor({1, 0}, "Z[B1xA2]", {2, 0}, "Z[A1xA2]");
        return (p + q).is_zero();
    });
    return rep;
}

} // namespace biext
