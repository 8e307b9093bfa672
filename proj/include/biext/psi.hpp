// Split linear model of the groups Psi^0 and Psi^1 of a total complex with
// free components, and the two-row spectral sequence of the stupid filtration.
#pragma once

#include "biext/resolution.hpp"

#include <optional>

namespace biext {

struct PsiZeroElement {
    GroupHom f0;  // L00 -> B
    GroupHom f1;  // L10 -> A
};

struct PsiOneElement {
    GroupHom alpha;  // L01 -> B
    GroupHom beta;   // L10 -> B
    GroupHom gamma;  // L20 -> A
};

namespace detail {

inline Matrix sub_cols(const Matrix& m, const std::vector<std::size_t>& cols) { return m.select_cols(cols); }
inline Matrix sub_rows(const Matrix& m, const std::vector<std::size_t>& rows) { return m.select_rows(rows); }

inline Vec flatten(const Matrix& m) { return HomGroup::flatten(m); }

inline void put_column(Matrix& m, std::size_t col, std::size_t row0, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) m(row0 + i, col) = v[i];
}

// Relations [..,x+y,..] - [..,x,..] - [..,y,..] in every set factor of the blocks of a summand.
// They span the image of the vertical differential out of L21 when the summand is L20.
inline Matrix additivity_relations(const TotSummand& s) {
    std::vector<std::vector<std::pair<std::size_t, int>>> rels;
    for (const auto& b : s.blocks) {
        std::vector<std::size_t> sizes;
        std::vector<std::optional<ElementIndex>> sets;
        for (const auto& f : b.factors) {
            if (f.is_set) {
                sets.emplace_back(ElementIndex(f.group));
                sizes.push_back(sets.back()->size());
            } else {
                sets.emplace_back();
                sizes.push_back(f.group.ngens());
            }
        }
        auto index = [&](const std::vector<std::size_t>& t) {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < t.size(); ++k) idx = idx * sizes[k] + t[k];
            return b.offset + idx;
        };
        for (std::size_t slot = 0; slot < sizes.size(); ++slot) {
            if (!sets[slot]) continue;
            for (std::size_t base = 0; base < b.size; ++base) {
                std::vector<std::size_t> t(sizes.size());
                for (std::size_t k = sizes.size(), r = base; k-- > 0;) {
                    t[k] = r % sizes[k];
                    r /= sizes[k];
                }
                if (t[slot] != 0) continue;
                for (std::size_t x = 0; x < sizes[slot]; ++x)
                    for (std::size_t y = x; y < sizes[slot]; ++y) {
                        std::vector<std::pair<std::size_t, int>> rel;
                        t[slot] = sets[slot]->add(x, y);
                        rel.emplace_back(index(t), 1);
                        t[slot] = x;
                        rel.emplace_back(index(t), -1);
                        t[slot] = y;
                        rel.emplace_back(index(t), -1);
                        rels.push_back(std::move(rel));
                    }
            }
        }
    }
    Matrix m(s.size, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c)
        for (auto [r, v] : rels[c]) m(r, c) += v;
    return m;
}

} // namespace detail

// Precomputes the K-independent part of the model for one total complex T:
// Psi^0 = {(f0, f1): f0∘d00 = 0, u∘f1 = f0∘D00, f1∘(L10-rows of 𝔻_1) = 0},
// Psi^1 = {(α, β, γ): (α, β)∘𝔻_1 = u∘γ̂} / {(h∘d00, h∘D00 + u∘g, g∘D10)},
// with h: L00 -> B and g: L10 -> A vanishing on the image of L11.
class PsiSolver {
public:
    explicit PsiSolver(const TotalComplex& t) : t_(t) {
        if (t.summands.empty() && !t.complex.empty()) throw BlockLabelsMissing("total complex carries no block labels");
        const ChainComplex& c = t.complex;
        n0_ = c.group(0).ngens();
        n1_ = c.group(1).ngens();
        n2_ = c.group(2).ngens();
        i10_ = t.indices(1, 0);
        i01_ = t.indices(0, 1);
        i20_ = t.indices(2, 0);
        std::vector<bool> is20(n2_, false);
        for (auto k : i20_) is20[k] = true;
        for (std::size_t k = 0; k < n2_; ++k)
            if (!is20[k]) rest2_.push_back(k);
        D0_ = c.diff(1).matrix();
        D1_ = c.diff(2).matrix();
        if (D1_.rows() != n1_) D1_ = Matrix(n1_, n2_);

        q0_ = detail::quotient_of_free(FgAbGroup::free(n0_), detail::sub_cols(D0_, i01_));
        D00_ = detail::sub_cols(D0_, i10_);
        q1_ = detail::quotient_of_free(FgAbGroup::free(i10_.size()), detail::sub_rows(D1_, i10_));

        q_ = detail::quotient_of_free(FgAbGroup::free(n1_), detail::sub_cols(D1_, rest2_));
        rho_ = q_.projection.matrix() * detail::sub_cols(D1_, i20_);
        const TotSummand* s20 = t.find(2, 0);
        q20_ = detail::quotient_of_free(FgAbGroup::free(i20_.size()), s20 ? detail::additivity_relations(*s20) : Matrix(i20_.size(), 0));
        delta_ = D0_ * q_.lift;
        qg_ = detail::quotient_of_free(FgAbGroup::free(i10_.size()), detail::sub_rows(detail::sub_cols(D1_, rest2_), i10_));
        D10_ = detail::sub_rows(detail::sub_cols(D1_, i20_), i10_);
    }

    const TotalComplex& total() const noexcept { return t_; }

    struct Zero {
        FgAbGroup group;
        std::vector<PsiZeroElement> witnesses;
    };
    struct One {
        FgAbGroup group;
        std::vector<PsiOneElement> witnesses;
    };

    // Psi^0 together with the data needed to map elements.
    class ZeroModel {
    public:
        ZeroModel(const PsiSolver& s, const TwoTermComplex& k) : s_(&s), k_(k), h0_(s.q0_.group, k.B), h1_(s.q1_.group, k.A) {
            const std::size_t n10 = s.i10_.size();
            FgAbGroup tgt = power(k.B, n10);
            x_ = direct_sum(h0_.group(), h1_.group());
            Matrix m(tgt.ngens(), x_.ngens());
            for (std::size_t g = 0; g < h0_.group().ngens(); ++g) {
                Matrix w = h0_.witness(g).matrix();
                detail::put_column(m, g, 0, detail::flatten(w * s.q0_.projection.matrix() * s.D00_));
            }
            for (std::size_t g = 0; g < h1_.group().ngens(); ++g) {
                Matrix w = h1_.witness(g).matrix();
                detail::put_column(m, h0_.group().ngens() + g, 0, detail::flatten(-(k.u.matrix() * w * s.q1_.projection.matrix())));
            }
            ker_ = Kernel(GroupHom(x_, tgt, std::move(m), GroupHom::Unchecked{}));
        }
        const FgAbGroup& group() const { return ker_.group(); }

        PsiZeroElement element(const Vec& c) const {
            Vec amb = x_.reduce(ker_.inclusion().matrix().apply(c));
            return from_ambient(amb);
        }
        PsiZeroElement from_ambient(const Vec& amb) const {
            const std::size_t a = h0_.group().ngens();
            Vec v0(amb.begin(), amb.begin() + static_cast<std::ptrdiff_t>(a)), v1(amb.begin() + static_cast<std::ptrdiff_t>(a), amb.end());
            Matrix f0 = h0_.element(v0).matrix() * s_->q0_.projection.matrix();
            Matrix f1 = h1_.element(v1).matrix() * s_->q1_.projection.matrix();
            return {GroupHom(FgAbGroup::free(s_->n0_), k_.B, f0, GroupHom::Unchecked{}),
                    GroupHom(FgAbGroup::free(s_->i10_.size()), k_.A, f1, GroupHom::Unchecked{})};
        }
        // Coordinates of a valid element given by (f0, f1).
        Vec coords(const Matrix& f0, const Matrix& f1) const {
            Vec v = h0_.coords(f0 * s_->q0_.lift);
            Vec w = h1_.coords(f1 * s_->q1_.lift);
            v.insert(v.end(), w.begin(), w.end());
            return ker_.coords(x_.reduce(v));
        }

    private:
        const PsiSolver* s_;
        TwoTermComplex k_;
        HomGroup h0_, h1_;
        FgAbGroup x_;
        Kernel ker_;
    };

    class OneModel {
    public:
        OneModel(const PsiSolver& s, const TwoTermComplex& k) : s_(&s), k_(k), hphi_(s.q_.group, k.B), hgam_(s.q20_.group, k.A) {
            const std::size_t n20 = s.i20_.size();
            FgAbGroup tgt = power(k.B, n20);
            x_ = direct_sum(hphi_.group(), hgam_.group());
            Matrix m(tgt.ngens(), x_.ngens());
            for (std::size_t g = 0; g < hphi_.group().ngens(); ++g)
                detail::put_column(m, g, 0, detail::flatten(hphi_.witness(g).matrix() * s.rho_));
            for (std::size_t g = 0; g < hgam_.group().ngens(); ++g)
                detail::put_column(m, hphi_.group().ngens() + g, 0, detail::flatten(-(k.u.matrix() * hgam_.witness(g).matrix() * s.q20_.projection.matrix())));
            GroupHom constraint(x_, tgt, std::move(m), GroupHom::Unchecked{});
            HomGroup hh(FgAbGroup::free(s.n0_), k.B), hg(s.qg_.group, k.A);
            FgAbGroup gauges = direct_sum(hh.group(), hg.group());
            Matrix gm(x_.ngens(), gauges.ngens());
            for (std::size_t g = 0; g < hh.group().ngens(); ++g)
                detail::put_column(gm, g, 0, hphi_.coords(hh.witness(g).matrix() * s.delta_));
            for (std::size_t g = 0; g < hg.group().ngens(); ++g) {
                Matrix w = hg.witness(g).matrix() * s.qg_.projection.matrix();
                Matrix ab(k.B.ngens(), s.n1_);
                Matrix uw = k.u.matrix() * w;
                for (std::size_t j = 0; j < s.i10_.size(); ++j)
                    for (std::size_t i = 0; i < ab.rows(); ++i) ab(i, s.i10_[j]) = uw(i, j);
                Vec v = hphi_.coords(ab * s.q_.lift), vg = hgam_.coords(w * s.D10_ * s.q20_.lift);
                v.insert(v.end(), vg.begin(), vg.end());
                detail::put_column(gm, hh.group().ngens() + g, 0, x_.reduce(v));
            }
            GroupHom gauge(gauges, x_, std::move(gm), GroupHom::Unchecked{});
            sq_ = Subquotient(gauge, constraint);
        }
        const FgAbGroup& group() const { return sq_.group(); }
        const FgAbGroup& ambient() const noexcept { return x_; }
        const Subquotient& subquotient() const noexcept { return sq_; }

        PsiOneElement element(const Vec& c) const { return from_ambient(sq_.representative_of(c)); }
        PsiOneElement from_ambient(const Vec& amb) const {
            const std::size_t a = hphi_.group().ngens();
            Vec vp(amb.begin(), amb.begin() + static_cast<std::ptrdiff_t>(a)), vg(amb.begin() + static_cast<std::ptrdiff_t>(a), amb.end());
            Matrix ab = hphi_.element(vp).matrix() * s_->q_.projection.matrix();  // B x n1 on Tot_1
            Matrix gam = hgam_.element(vg).matrix() * s_->q20_.projection.matrix();
            return {GroupHom(FgAbGroup::free(s_->i01_.size()), k_.B, ab.select_cols(s_->i01_), GroupHom::Unchecked{}),
                    GroupHom(FgAbGroup::free(s_->i10_.size()), k_.B, ab.select_cols(s_->i10_), GroupHom::Unchecked{}),
                    GroupHom(FgAbGroup::free(s_->i20_.size()), k_.A, gam, GroupHom::Unchecked{})};
        }
        // Ambient coordinates of (α, β) given on Tot_1 (B x n1, must vanish on im of L11, L02) and γ.
        Vec ambient_of(const Matrix& ab, const Matrix& gamma) const {
            Vec v = hphi_.coords(ab * s_->q_.lift);
            Vec w = hgam_.coords(gamma * s_->q20_.lift);
            v.insert(v.end(), w.begin(), w.end());
            return x_.reduce(v);
        }
        Vec coords(const Matrix& ab, const Matrix& gamma) const { return sq_.coords(ambient_of(ab, gamma)); }
        // (α, β) on all of Tot_1 for an ambient vector.
        Matrix tot1_form(const Vec& amb) const {
            Vec vp(amb.begin(), amb.begin() + static_cast<std::ptrdiff_t>(hphi_.group().ngens()));
            return hphi_.element(vp).matrix() * s_->q_.projection.matrix();
        }
        Matrix gamma_form(const Vec& amb) const {
            Vec vg(amb.begin() + static_cast<std::ptrdiff_t>(hphi_.group().ngens()), amb.end());
            return hgam_.element(vg).matrix() * s_->q20_.projection.matrix();
        }

    private:
        const PsiSolver* s_;
        TwoTermComplex k_;
        HomGroup hphi_, hgam_;
        FgAbGroup x_;
        Subquotient sq_;
    };

    ZeroModel zero_model(const TwoTermComplex& k) const { return ZeroModel(*this, k); }
    OneModel one_model(const TwoTermComplex& k) const { return OneModel(*this, k); }

    Zero psi0(const TwoTermComplex& k) const {
        ZeroModel m(*this, k);
        Zero z{m.group(), {}};
        for (std::size_t g = 0; g < m.group().ngens(); ++g) {
            Vec e(m.group().ngens());
            e[g] = 1;
            z.witnesses.push_back(m.element(e));
        }
        return z;
    }
    One psi1(const TwoTermComplex& k) const {
        OneModel m(*this, k);
        One o{m.group(), {}};
        for (std::size_t g = 0; g < m.group().ngens(); ++g) {
            Vec e(m.group().ngens());
            e[g] = 1;
            o.witnesses.push_back(m.element(e));
        }
        return o;
    }

    const std::vector<std::size_t>& idx10() const noexcept { return i10_; }
    const std::vector<std::size_t>& idx01() const noexcept { return i01_; }
    const std::vector<std::size_t>& idx20() const noexcept { return i20_; }
    const Matrix& tot_d0() const noexcept { return D0_; }
    const Matrix& tot_d1() const noexcept { return D1_; }

private:
    TotalComplex t_;
    std::size_t n0_ = 0, n1_ = 0, n2_ = 0;
    std::vector<std::size_t> i10_, i01_, i20_, rest2_;
    Matrix D0_, D1_, D00_;
    Quotient q0_, q1_, q_, q20_, qg_;  // q20_: L20 modulo additivity, the domain of γ; qg_: domain of the A-side gauge
    Matrix rho_, delta_, D10_;
};

inline PsiSolver::Zero psi0(const TotalComplex& t, const TwoTermComplex& k) { return PsiSolver(t).psi0(k); }
inline PsiSolver::One psi1(const TotalComplex& t, const TwoTermComplex& k) { return PsiSolver(t).psi1(k); }

// ---------------------------------------------------------------------------
// Spectral sequence of the stupid filtration (rows q = 0, 1).

namespace detail {

// Ext^1 row of the E_1 page at Hom-complex index n: ⊕_a Ext^1(L_a, K_{a-n}).
struct ExtRow {
    std::vector<int> keys;
    std::vector<ExtGroup> groups;
    std::vector<std::size_t> offsets;
    FgAbGroup sum;
};

inline ExtRow ext_row(const ChainComplex& l, const ChainComplex& k, int n) {
    ExtRow r;
    std::size_t off = 0;
    std::vector<FgAbGroup> parts;
    for (int a = l.lo(); a <= l.hi(); ++a) {
        FgAbGroup la = l.group(a), kb = k.group(a - n);
        if (!la.ngens() || !kb.ngens()) continue;
        r.keys.push_back(a);
        r.groups.emplace_back(la, kb);
        r.offsets.push_back(off);
        off += r.groups.back().group().ngens();
        parts.push_back(r.groups.back().group());
    }
    r.sum = direct_sum(parts);
    return r;
}

// Lift of f: X' -> X to relation modules, f1 with R_X f1 = f0 R_X'.
inline Matrix relation_lift(const GroupHom& f) {
    const FgAbGroup& xs = f.source();
    const FgAbGroup& xt = f.target();
    Matrix rs = xs.relations(), rt = xt.relations();
    Matrix prod = f.matrix() * rs;
    Matrix out(rt.cols(), rs.cols());
    std::size_t t = 0;
    for (std::size_t j = 0; j < xt.ngens(); ++j) {
        if (xt.order_of(j).is_zero()) continue;
        for (std::size_t s = 0; s < rs.cols(); ++s) out(t, s) = exact_div(prod(j, s), xt.order_of(j));
        ++t;
    }
    return out;
}

} // namespace detail

struct SpectralReport {
    int target_degree = 0;
    std::map<int, FgAbGroup> row0, row1;  // E_1^{p,0}, E_1^{p,1}
    GroupHom d1_00, d1_m10, d1_m11;
    bool hom_vanishing = false;   // Hom(L^0, K^{-1}) = 0
    bool ext1_vanishing = false;  // Ext^1(L^0, K^{-1}) = 0
    bool ker_d1_m11_trivial = true;
    FgAbGroup e2_00;
    std::optional<GroupHom> witness;  // nonzero element of Hom(L^0, K^{-1}) when hom_vanishing fails

    bool hypotheses() const {
        return target_degree == 0 ? hom_vanishing && ext1_vanishing : hom_vanishing && ext1_vanishing && ker_d1_m11_trivial;
    }
};

// Cohomological indexing L^{-p} = L_p, K^{-i} = K_i is used only through the
// identification E_1^{p,q} = ⊕_a Ext^q(L_a, K_{a-p-t}) for target degree t.
// With pages unset only the hypothesis flags, the witness and d_1^{-11} are computed.
inline SpectralReport spectral_report(const ChainComplex& l, const TwoTermComplex& k, int target_degree, bool pages = true) {
    SpectralReport r;
    r.target_degree = target_degree;
    ChainComplex kc = k.chain();
    const int t = target_degree;
    for (int p = -1; pages && p <= 2; ++p) {
        FgAbGroup g0 = hom_complex_step(l, kc, p + t).from.group(), g1 = detail::ext_row(l, kc, p + t).sum;
        r.row0[p] = FgAbGroup::normal(g0.free_rank(), g0.torsion());
        r.row1[p] = FgAbGroup::normal(g1.free_rank(), g1.torsion());
    }
    if (pages) {
        auto s_prev = hom_complex_step(l, kc, t - 1);
        auto s_cur = hom_complex_step(l, kc, t);
        r.d1_00 = s_cur.map;
        r.d1_m10 = s_prev.map;
        r.e2_00 = homology(s_prev.map, s_cur.map).group();
    }

    HomGroup h(l.group(0), k.A);
    r.hom_vanishing = h.group().is_trivial();
    if (!r.hom_vanishing)
        for (std::size_t g = 0; g < h.group().ngens(); ++g) {
            GroupHom w = h.witness(g);
            if (!w.is_zero()) {
                r.witness = w;
                break;
            }
        }
    r.ext1_vanishing = ext_group(l.group(0), k.A).is_trivial();

    // d_1^{-11}: ⊕_a Ext^1(L_a, K_a) -> ⊕_a Ext^1(L_a, K_{a-1})
    auto src = detail::ext_row(l, kc, 0), dst = detail::ext_row(l, kc, 1);
    Matrix m(dst.sum.ngens(), src.sum.ngens());
    for (std::size_t bi = 0; bi < src.keys.size(); ++bi) {
        const int a = src.keys[bi];
        const ExtGroup& e = src.groups[bi];
        for (std::size_t g = 0; g < e.group().ngens(); ++g) {
            Vec amb = e.quotient().lift.column(g);
            Matrix xi(e.hom().target().ngens(), e.hom().source().relations().cols());
            for (std::size_t c = 0; c < xi.cols(); ++c)
                for (std::size_t i = 0; i < xi.rows(); ++i) xi(i, c) = amb[c * xi.rows() + i];
            Vec col(dst.sum.ngens());
            for (std::size_t bj = 0; bj < dst.keys.size(); ++bj) {
                const int a2 = dst.keys[bj];
                const ExtGroup& e2 = dst.groups[bj];
                Matrix img;
                if (a2 == a) {
                    // d_K ∘ ξ : Ext^1(L_a, K_a) -> Ext^1(L_a, K_{a-1})
                    img = kc.diff(a).matrix() * xi;
                } else if (a2 == a + 1) {
                    // -ξ ∘ d_L : Ext^1(L_a, K_a) -> Ext^1(L_{a+1}, K_a)
                    img = -(xi * detail::relation_lift(l.diff(a + 1)));
                } else {
                    continue;
                }
                FgAbGroup amb2 = power(e2.hom().target(), e2.hom().source().relations().cols());
                Vec c2 = e2.quotient().projection.apply(amb2.reduce(HomGroup::flatten(img)));
                for (std::size_t i = 0; i < c2.size(); ++i) col[dst.offsets[bj] + i] += c2[i];
            }
            for (std::size_t i = 0; i < col.size(); ++i) m(i, src.offsets[bi] + g) = col[i];
        }
    }
    r.d1_m11 = GroupHom(src.sum, dst.sum, std::move(m), GroupHom::Unchecked{});
    r.ker_d1_m11_trivial = Kernel(r.d1_m11).group().is_trivial();
    return r;
}

} // namespace biext
