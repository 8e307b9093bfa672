// Finitely generated abelian groups, homomorphisms, kernels, cokernels and
// the bifunctors Hom, Ext, tensor, Tor.
#pragma once

#include "biext/errors.hpp"
#include "biext/matrix.hpp"
#include "biext/snf.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace biext {

using Vec = std::vector<Integer>;

// A group given by one cyclic generator per coordinate: order 0 is Z, order d >= 1 is Z/d.
// Results of kernel/cokernel/homology are always in invariant-factor form
// (free generators first, then d_1 | d_2 | ... with d_i >= 2); direct sums and
// tensor presentations may be in any order until normalized.
class FgAbGroup {
public:
    FgAbGroup() = default;

    static FgAbGroup from_orders(std::vector<Integer> orders) {
        for (const auto& o : orders)
            if (o.sign() < 0) throw std::invalid_argument("negative generator order");
        FgAbGroup g;
        g.orders_ = std::move(orders);
        return g;
    }

    static FgAbGroup normal(std::size_t free_rank, const std::vector<Integer>& torsion) {
        std::vector<Integer> o(free_rank, Integer(0));
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] < Integer(2)) throw std::invalid_argument("torsion factor must be >= 2");
            if (i && !divides(torsion[i - 1], torsion[i])) throw std::invalid_argument("torsion factors must form a divisor chain");
            o.push_back(torsion[i]);
        }
        return from_orders(std::move(o));
    }

    static FgAbGroup zero() { return {}; }
    static FgAbGroup free(std::size_t n) { return from_orders(std::vector<Integer>(n, Integer(0))); }
    static FgAbGroup cyclic(const Integer& d) {
        if (d == Integer(1)) return zero();
        return from_orders({d});
    }

    std::size_t ngens() const noexcept { return orders_.size(); }
    const Integer& order_of(std::size_t i) const { return orders_[i]; }
    const std::vector<Integer>& orders() const noexcept { return orders_; }

    bool is_normal() const {
        bool seen_torsion = false;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const Integer& o = orders_[i];
            if (o.is_zero()) {
                if (seen_torsion) return false;
            } else {
                if (o < Integer(2)) return false;
                if (seen_torsion && !divides(orders_[i - 1], o)) return false;
                seen_torsion = true;
            }
        }
        return true;
    }

    bool is_free() const {
        return std::all_of(orders_.begin(), orders_.end(), [](const Integer& o) { return o.is_zero(); });
    }

    // Invariants via the diagonal presentation.
    std::size_t free_rank() const { return invariants().first; }
    std::vector<Integer> torsion() const { return invariants().second; }

    std::pair<std::size_t, std::vector<Integer>> invariants() const {
        if (is_normal()) {
            std::size_t r = 0;
            std::vector<Integer> t;
            for (const auto& o : orders_) (o.is_zero() ? (void)++r : t.push_back(o));
            return {r, t};
        }
        // Z/a + Z/b = Z/gcd + Z/lcm; one sweep leaves a divisor chain
        std::size_t r = 0;
        std::vector<Integer> d;
        for (const auto& o : orders_) (o.is_zero() ? (void)++r : d.push_back(o));
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                if (divides(d[i], d[j])) continue;
                Integer g = gcd(d[i], d[j]), l = lcm(d[i], d[j]);
                d[i] = g;
                d[j] = l;
            }
        std::vector<Integer> t;
        for (const auto& x : d)
            if (x != Integer(1)) t.push_back(x);
        return {r, t};
    }

    bool is_finite() const {
        return std::none_of(orders_.begin(), orders_.end(), [](const Integer& o) { return o.is_zero(); });
    }
    Integer order() const {
        if (!is_finite()) throw InfiniteGroup("group has positive free rank");
        Integer n(1);
        for (const auto& o : orders_) n *= o;
        return n;
    }
    bool is_trivial() const {
        return std::all_of(orders_.begin(), orders_.end(), [](const Integer& o) { return o == Integer(1); });
    }

    Integer reduce_coord(std::size_t i, const Integer& x) const {
        const Integer& o = orders_[i];
        return o.is_zero() ? x : floor_mod(x, o);
    }
    Vec reduce(Vec v) const {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce_coord(i, v[i]);
        return v;
    }
    bool is_zero_element(const Vec& v) const {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!reduce_coord(i, v[i]).is_zero()) return false;
        return true;
    }

    // Relation matrix: one column per generator of nonzero order.
    Matrix relations() const {
        std::size_t k = 0;
        for (const auto& o : orders_) k += !o.is_zero();
        Matrix r(orders_.size(), k);
        std::size_t c = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            if (!orders_[i].is_zero()) r(i, c++) = orders_[i];
        return r;
    }

    // Isomorphism comparison by invariants.
    friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) { return a.invariants() == b.invariants(); }
    bool same_presentation(const FgAbGroup& b) const { return orders_ == b.orders_; }

    std::string str() const {
        auto [r, t] = invariants();
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < r; ++i) { os << (first ? "" : " + ") << "Z"; first = false; }
        for (const auto& d : t) { os << (first ? "" : " + ") << "Z/" << d; first = false; }
        if (first) os << "0";
        return os.str();
    }

private:
    std::vector<Integer> orders_;
};

inline FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts) {
    std::vector<Integer> o;
    for (const auto& p : parts) o.insert(o.end(), p.orders().begin(), p.orders().end());
    return FgAbGroup::from_orders(std::move(o));
}
inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) { return direct_sum(std::vector<FgAbGroup>{a, b}); }
inline FgAbGroup power(const FgAbGroup& g, std::size_t n) { return direct_sum(std::vector<FgAbGroup>(n, g)); }

// Homomorphism: one column per source generator, one row per target generator.
class GroupHom {
public:
    GroupHom() = default;

    // Validates well-definedness and reduces entries in torsion rows.
    GroupHom(FgAbGroup source, FgAbGroup target, Matrix m) : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(m)) {
        if (m_.rows() != tgt_.ngens() || m_.cols() != src_.ngens())
            throw std::invalid_argument("homomorphism matrix shape does not match groups");
        check_well_defined();
        reduce_entries();
    }

    static GroupHom zero(const FgAbGroup& s, const FgAbGroup& t) { return GroupHom(s, t, Matrix(t.ngens(), s.ngens()), Unchecked{}); }
    static GroupHom identity(const FgAbGroup& g) { return GroupHom(g, g, Matrix::identity(g.ngens())); }

    const FgAbGroup& source() const noexcept { return src_; }
    const FgAbGroup& target() const noexcept { return tgt_; }
    const Matrix& matrix() const noexcept { return m_; }

    Vec apply(const Vec& x) const { return tgt_.reduce(m_.apply(x)); }
    bool is_zero() const { return m_.is_zero(); }

    friend GroupHom compose(const GroupHom& g, const GroupHom& f) {
        if (f.tgt_.orders() != g.src_.orders()) throw std::invalid_argument("compose: groups do not match");
        return GroupHom(f.src_, g.tgt_, g.m_ * f.m_, Unchecked{});
    }
    friend GroupHom operator+(const GroupHom& a, const GroupHom& b) {
        return GroupHom(a.src_, a.tgt_, a.m_ + b.m_, Unchecked{});
    }
    friend GroupHom operator-(const GroupHom& a, const GroupHom& b) {
        return GroupHom(a.src_, a.tgt_, a.m_ - b.m_, Unchecked{});
    }
    friend GroupHom operator*(const Integer& s, const GroupHom& a) { return GroupHom(a.src_, a.tgt_, s * a.m_, Unchecked{}); }
    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.src_.same_presentation(b.src_) && a.tgt_.same_presentation(b.tgt_) && a.m_ == b.m_;
    }

    // Internal constructor for matrices already known to be well defined.
    struct Unchecked {};
    GroupHom(FgAbGroup s, FgAbGroup t, Matrix m, Unchecked) : src_(std::move(s)), tgt_(std::move(t)), m_(std::move(m)) {
        reduce_entries();
    }

private:
    void check_well_defined() const {
        for (std::size_t j = 0; j < src_.ngens(); ++j) {
            const Integer& d = src_.order_of(j);
            if (d.is_zero()) continue;
            for (std::size_t i = 0; i < tgt_.ngens(); ++i) {
                const Integer& e = tgt_.order_of(i);
                Integer v = d * m_(i, j);
                bool ok = e.is_zero() ? v.is_zero() : divides(e, v);
                if (!ok) {
                    std::ostringstream os;
                    os << "generator " << j + 1 << " of order " << d << " maps to entry " << m_(i, j) << " against target generator " << i + 1
                       << (e.is_zero() ? std::string(" of infinite order") : " of order " + e.str()) << "; " << d << "*" << m_(i, j)
                       << " is not a multiple of the target relation";
                    throw IllDefinedHom(os.str());
                }
            }
        }
    }
    void reduce_entries() {
        for (std::size_t i = 0; i < m_.rows(); ++i) {
            const Integer& e = tgt_.order_of(i);
            if (e.is_zero()) continue;
            for (std::size_t j = 0; j < m_.cols(); ++j) m_(i, j) = floor_mod(m_(i, j), e);
        }
    }

    FgAbGroup src_, tgt_;
    Matrix m_;
};

// Quotient of a free presentation: Z^n / colspan(M) in invariant-factor form.
struct Quotient {
    FgAbGroup group;
    GroupHom projection;  // ambient -> group
    Matrix lift;          // ambient coordinates of each generator of group (ambient.ngens x group.ngens)
};

namespace detail {

inline Quotient quotient_of_free(const FgAbGroup& ambient, const Matrix& rel) {
    const std::size_t n = ambient.ngens();
    if (rel.cols() == 0 && ambient.is_free()) {
        return {ambient, GroupHom::identity(ambient), Matrix::identity(n)};
    }
    auto s = snf(rel, {true, false, true, false});
    std::vector<std::size_t> free_idx, tors_idx;
    std::vector<Integer> free_orders, tors_orders;
    for (std::size_t i = 0; i < n; ++i) {
        Integer d = i < s.diag.size() ? s.diag[i] : Integer(0);
        if (d.is_zero()) free_idx.push_back(i);
        else if (d != Integer(1)) tors_idx.push_back(i), tors_orders.push_back(d);
    }
    std::vector<std::size_t> idx = free_idx;
    idx.insert(idx.end(), tors_idx.begin(), tors_idx.end());
    std::vector<Integer> orders(free_idx.size(), Integer(0));
    orders.insert(orders.end(), tors_orders.begin(), tors_orders.end());
    FgAbGroup g = FgAbGroup::from_orders(orders);
    Matrix p = s.U.select_rows(idx);
    Matrix l = s.U_inv.select_cols(idx);
    return {g, GroupHom(ambient, g, std::move(p), GroupHom::Unchecked{}), std::move(l)};
}

} // namespace detail

// Normal form of any group, with the isomorphism to it.
inline Quotient normalize(const FgAbGroup& g) {
    if (g.is_normal()) return {g, GroupHom::identity(g), Matrix::identity(g.ngens())};
    FgAbGroup amb = FgAbGroup::free(g.ngens());
    auto q = detail::quotient_of_free(amb, g.relations());
    return {q.group, GroupHom(g, q.group, q.projection.matrix(), GroupHom::Unchecked{}), q.lift};
}

inline Quotient cokernel(const GroupHom& f) {
    const FgAbGroup& h = f.target();
    Matrix rel = hstack(f.matrix(), h.relations());
    auto q = detail::quotient_of_free(FgAbGroup::free(h.ngens()), rel);
    return {q.group, GroupHom(h, q.group, q.projection.matrix(), GroupHom::Unchecked{}), q.lift};
}

// Kernel with a coordinate solver for ambient vectors lying in the kernel.
class Kernel {
public:
    Kernel() = default;
    explicit Kernel(const GroupHom& f) { build(f); }

    const FgAbGroup& group() const noexcept { return group_; }
    const GroupHom& inclusion() const noexcept { return inclusion_; }

    // Coordinates in group() of a source vector x with f(x) = 0.
    Vec coords(const Vec& x) const {
        if (identity_) return group_.reduce(x);
        Vec ux = u2_.apply(x);
        Vec c(basis_orders_.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!divides(s2_[i], ux[i])) throw std::invalid_argument("vector is not in the kernel lattice");
            c[i] = exact_div(ux[i], s2_[i]);
        }
        for (std::size_t i = c.size(); i < ux.size(); ++i)
            if (!ux[i].is_zero()) throw std::invalid_argument("vector is not in the kernel lattice");
        return group_.reduce(proj_.apply(c));
    }

    // Ambient representative of a group element.
    Vec representative(const Vec& y) const { return inclusion_.source().ngens() ? inclusion_.matrix().apply(y) : Vec{}; }

private:
    void build(const GroupHom& f) {
        const FgAbGroup& g = f.source();
        const FgAbGroup& h = f.target();
        const std::size_t n = g.ngens();
        if (f.is_zero() && g.is_normal()) {
            identity_ = true;
            group_ = g;
            inclusion_ = GroupHom::identity(g);
            return;
        }
        Matrix m = hstack(f.matrix(), h.relations());
        auto s = snf(m, {false, true, false, false});
        const std::size_t total = m.cols();
        Matrix nmat(n, total - s.rank);
        for (std::size_t j = s.rank; j < total; ++j)
            for (std::size_t i = 0; i < n; ++i) nmat(i, j - s.rank) = s.V(i, j);
        auto s2 = snf(nmat, {true, false, true, false});
        const std::size_t l = s2.rank;
        s2_.assign(s2.diag.begin(), s2.diag.begin() + static_cast<std::ptrdiff_t>(l));
        basis_orders_.assign(l, Integer(0));
        u2_ = std::move(s2.U);
        Matrix basis(n, l);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < l; ++j) basis(i, j) = s2.U_inv(i, j) * s2_[j];
        // relations of g expressed in the basis
        std::vector<Vec> relcols;
        for (std::size_t j = 0; j < n; ++j) {
            const Integer& d = g.order_of(j);
            if (d.is_zero()) continue;
            Vec e(n);
            e[j] = d;
            Vec ue = u2_.apply(e);
            Vec c(l);
            for (std::size_t i = 0; i < l; ++i) c[i] = exact_div(ue[i], s2_[i]);
            relcols.push_back(std::move(c));
        }
        Matrix rel(l, relcols.size());
        for (std::size_t j = 0; j < relcols.size(); ++j)
            for (std::size_t i = 0; i < l; ++i) rel(i, j) = relcols[j][i];
        auto q = detail::quotient_of_free(FgAbGroup::free(l), rel);
        group_ = q.group;
        proj_ = q.projection.matrix();
        inclusion_ = GroupHom(group_, g, basis * q.lift, GroupHom::Unchecked{});
    }

    FgAbGroup group_;
    GroupHom inclusion_;
    bool identity_ = false;
    Matrix u2_, proj_;
    std::vector<Integer> s2_, basis_orders_;
};

inline Kernel kernel(const GroupHom& f) { return Kernel(f); }

// ker(f) / im(g) for X --g--> Y --f--> Z with f∘g = 0.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(const GroupHom& g, const GroupHom& f) : ker_(f) {
        if (!g.target().same_presentation(f.source())) throw std::invalid_argument("homology: groups do not match");
        const FgAbGroup& k = ker_.group();
        Matrix gp(k.ngens(), g.source().ngens());
        for (std::size_t j = 0; j < g.source().ngens(); ++j) {
            Vec c = ker_.coords(g.matrix().column(j));
            for (std::size_t i = 0; i < c.size(); ++i) gp(i, j) = c[i];
        }
        quot_ = cokernel(GroupHom(g.source(), k, std::move(gp), GroupHom::Unchecked{}));
    }

    const FgAbGroup& group() const noexcept { return quot_.group; }
    const FgAbGroup& ambient() const { return ker_.inclusion().target(); }
    const Kernel& cycles() const noexcept { return ker_; }

    Vec coords(const Vec& y) const { return quot_.projection.apply(ker_.coords(y)); }
    Vec representative(std::size_t i) const {
        Vec kc = quot_.lift.column(i);
        return ambient().reduce(ker_.inclusion().matrix().apply(kc));
    }
    Vec representative_of(const Vec& c) const {
        Vec kc = quot_.lift.apply(c);
        return ambient().reduce(ker_.inclusion().matrix().apply(kc));
    }

private:
    Kernel ker_;
    Quotient quot_;
};

inline Subquotient homology(const GroupHom& g, const GroupHom& f) { return Subquotient(g, f); }

// Induced map between subquotients from an ambient-level homomorphism.
inline GroupHom induced_map(const Subquotient& from, const Subquotient& to, const GroupHom& ambient_map) {
    const FgAbGroup& a = from.group();
    const FgAbGroup& b = to.group();
    Matrix m(b.ngens(), a.ngens());
    for (std::size_t j = 0; j < a.ngens(); ++j) {
        Vec c = to.coords(ambient_map.apply(from.representative(j)));
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
    return GroupHom(a, b, std::move(m), GroupHom::Unchecked{});
}

inline FgAbGroup image_group(const GroupHom& f) {
    Kernel k(f);
    auto q = cokernel(k.inclusion());
    return q.group;
}

// Hom(A, B) as the kernel of B^{n_A} -> B^{k_A}, m |-> m∘R_A. The same map has
// cokernel Ext(A, B).
class HomGroup {
public:
    HomGroup() = default;
    HomGroup(FgAbGroup a, FgAbGroup b) : a_(std::move(a)), b_(std::move(b)) {
        ambient_ = power(b_, a_.ngens());
        rel_target_ = power(b_, a_.relations().cols());
        free_src_ = a_.is_free();
        if (free_src_) group_ = ambient_;
        else {
            ker_ = Kernel(restriction_map());
            group_ = ker_.group();
        }
    }

    const FgAbGroup& source() const noexcept { return a_; }
    const FgAbGroup& target() const noexcept { return b_; }
    // For a free source this is B^n in its given presentation, otherwise normal.
    const FgAbGroup& group() const noexcept { return group_; }
    const FgAbGroup& ambient() const noexcept { return ambient_; }

    GroupHom restriction_map() const {
        const std::size_t nb = b_.ngens();
        Matrix r = a_.relations();
        Matrix m(nb * r.cols(), nb * a_.ngens());
        for (std::size_t t = 0; t < r.cols(); ++t)
            for (std::size_t j = 0; j < a_.ngens(); ++j)
                if (!r(j, t).is_zero())
                    for (std::size_t i = 0; i < nb; ++i) m(t * nb + i, j * nb + i) = r(j, t);
        return GroupHom(ambient_, rel_target_, std::move(m), GroupHom::Unchecked{});
    }

    static Vec flatten(const Matrix& m) {
        Vec v(m.rows() * m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i) v[j * m.rows() + i] = m(i, j);
        return v;
    }
    Matrix unflatten(const Vec& v) const {
        Matrix m(b_.ngens(), a_.ngens());
        for (std::size_t j = 0; j < a_.ngens(); ++j)
            for (std::size_t i = 0; i < b_.ngens(); ++i) m(i, j) = v[j * b_.ngens() + i];
        return m;
    }

    GroupHom witness(std::size_t k) const {
        Vec e(group().ngens());
        e[k] = 1;
        return element(e);
    }
    GroupHom element(const Vec& c) const {
        if (free_src_) return GroupHom(a_, b_, unflatten(ambient_.reduce(c)), GroupHom::Unchecked{});
        return GroupHom(a_, b_, unflatten(ambient_.reduce(ker_.inclusion().matrix().apply(c))), GroupHom::Unchecked{});
    }
    Vec coords(const Matrix& m) const {
        if (free_src_) return ambient_.reduce(flatten(m));
        return ker_.coords(ambient_.reduce(flatten(m)));
    }
    Vec coords(const GroupHom& f) const { return coords(f.matrix()); }

private:
    FgAbGroup a_, b_, ambient_, rel_target_, group_;
    Kernel ker_;
    bool free_src_ = false;
};

inline FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) { return normalize(HomGroup(a, b).group()).group; }

// Ext^1(A, B) = coker(Hom(Z^{n_A}, B) -> Hom(Z^{k_A}, B)).
class ExtGroup {
public:
    ExtGroup(FgAbGroup a, FgAbGroup b) : hom_(std::move(a), std::move(b)) { quot_ = cokernel(hom_.restriction_map()); }
    const FgAbGroup& group() const noexcept { return quot_.group; }
    const Quotient& quotient() const noexcept { return quot_; }
    const HomGroup& hom() const noexcept { return hom_; }

private:
    HomGroup hom_;
    Quotient quot_;
};

inline FgAbGroup ext_group(const FgAbGroup& a, const FgAbGroup& b) { return ExtGroup(a, b).group(); }

// Tensor presentation: generator (i, j) <-> a_i ⊗ b_j of order gcd(o_i, o_j).
inline FgAbGroup tensor_presentation(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Integer> o;
    o.reserve(a.ngens() * b.ngens());
    for (std::size_t i = 0; i < a.ngens(); ++i)
        for (std::size_t j = 0; j < b.ngens(); ++j) o.push_back(gcd(a.order_of(i), b.order_of(j)));
    return FgAbGroup::from_orders(std::move(o));
}

inline GroupHom tensor_hom(const GroupHom& f, const GroupHom& g) {
    return GroupHom(tensor_presentation(f.source(), g.source()), tensor_presentation(f.target(), g.target()), kron(f.matrix(), g.matrix()),
                    GroupHom::Unchecked{});
}

struct TensorProduct {
    FgAbGroup group;
    GroupHom from_presentation;  // presentation (a_i ⊗ b_j) -> group
    // Image of (x, y) under the universal bilinear map.
    Vec bilinear(const Vec& x, const Vec& y) const {
        Vec v(x.size() * y.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) v[i * y.size() + j] = x[i] * y[j];
        return from_presentation.apply(v);
    }
};

inline TensorProduct tensor_product(const FgAbGroup& a, const FgAbGroup& b) {
    auto q = normalize(tensor_presentation(a, b));
    return {q.group, q.projection};
}

inline FgAbGroup tensor_group(const FgAbGroup& a, const FgAbGroup& b) { return tensor_product(a, b).group; }

// Tor(A, B) = H_1(F_A ⊗ B) for the presentation Z^{k_A} -> Z^{n_A} of A.
inline FgAbGroup tor_group(const FgAbGroup& a, const FgAbGroup& b) {
    Matrix r = a.relations();
    FgAbGroup src = power(b, r.cols()), tgt = power(b, a.ngens());
    GroupHom m(src, tgt, kron(r, Matrix::identity(b.ngens())), GroupHom::Unchecked{});
    return Kernel(m).group();
}

// Mixed-radix indexing of a finite group's elements in lexicographic order.
class ElementIndex {
public:
    ElementIndex() = default;
    explicit ElementIndex(const FgAbGroup& g) : g_(g) {
        if (!g.is_finite()) throw InfiniteGroup("cannot enumerate the elements of an infinite group");
        size_ = 1;
        for (const auto& o : g.orders()) {
            radix_.push_back(o.to_int64());
            size_ *= static_cast<std::size_t>(radix_.back());
        }
    }
    std::size_t size() const noexcept { return size_; }
    const FgAbGroup& group() const noexcept { return g_; }

    Vec element(std::size_t idx) const {
        Vec v(radix_.size());
        for (std::size_t k = radix_.size(); k-- > 0;) {
            v[k] = Integer(static_cast<long long>(idx % static_cast<std::size_t>(radix_[k])));
            idx /= static_cast<std::size_t>(radix_[k]);
        }
        return v;
    }
    std::size_t index(const Vec& v) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < radix_.size(); ++k)
            idx = idx * static_cast<std::size_t>(radix_[k]) + static_cast<std::size_t>(floor_mod(v[k], Integer(radix_[k])).to_int64());
        return idx;
    }
    std::size_t add(std::size_t x, std::size_t y) const {
        Vec a = element(x), b = element(y);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        return index(a);
    }

private:
    FgAbGroup g_;
    std::vector<std::int64_t> radix_;
    std::size_t size_ = 1;
};

inline std::vector<Vec> enumerate_elements(const FgAbGroup& g) {
    ElementIndex ix(g);
    std::vector<Vec> out;
    out.reserve(ix.size());
    for (std::size_t i = 0; i < ix.size(); ++i) out.push_back(ix.element(i));
    return out;
}

} // namespace biext
