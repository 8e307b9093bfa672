// Bicomplexes with anticommuting squares, total complexes, tensor products.
#pragma once

#include "biext/complex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace biext {

// One tensor factor of a block: either a finite set indexing a basis (Z[X]) or a free group used as is.
struct Factor {
    std::string name;
    bool is_set = true;
    FgAbGroup group;  // the set (is_set) or the free group itself
};

// A labelled summand of a bicomplex cell, a tensor product of factors.
struct Block {
    std::vector<Factor> factors;
    std::size_t offset = 0, size = 0;

    std::string label() const {
        std::string out, run;
        auto flush = [&] {
            if (run.empty()) return;
            if (!out.empty()) out += "⊗";
            out += "Z[" + run + "]";
            run.clear();
        };
        for (const auto& f : factors) {
            if (f.is_set) {
                run += (run.empty() ? "" : "x") + f.name;
            } else {
                flush();
                if (!out.empty()) out += "⊗";
                out += f.name;
            }
        }
        flush();
        return out.empty() ? std::string("Z") : out;
    }
};

struct Cell {
    FgAbGroup group;
    std::vector<Block> blocks;

    const Block* find(const std::string& label) const {
        for (const auto& b : blocks)
            if (b.label() == label) return &b;
        return nullptr;
    }
};

using Pos = std::pair<int, int>;

class Bicomplex {
public:
    void set_cell(int i, int j, Cell c) { cells_[{i, j}] = std::move(c); }
    // D_{ij}: L_{i+1,j} -> L_{ij}
    void set_horizontal(int i, int j, Matrix m) { horiz_[{i, j}] = std::move(m); }
    // d_{ij}: L_{i,j+1} -> L_{ij}
    void set_vertical(int i, int j, Matrix m) { vert_[{i, j}] = std::move(m); }

    Cell cell(int i, int j) const {
        auto it = cells_.find({i, j});
        return it == cells_.end() ? Cell{} : it->second;
    }
    bool has_cell(int i, int j) const {
        auto it = cells_.find({i, j});
        return it != cells_.end() && it->second.group.ngens() > 0;
    }
    FgAbGroup group(int i, int j) const { return cell(i, j).group; }

    GroupHom horizontal(int i, int j) const {
        auto it = horiz_.find({i, j});
        FgAbGroup s = group(i + 1, j), t = group(i, j);
        if (it == horiz_.end()) return GroupHom::zero(s, t);
        return GroupHom(s, t, it->second, GroupHom::Unchecked{});
    }
    GroupHom vertical(int i, int j) const {
        auto it = vert_.find({i, j});
        FgAbGroup s = group(i, j + 1), t = group(i, j);
        if (it == vert_.end()) return GroupHom::zero(s, t);
        return GroupHom(s, t, it->second, GroupHom::Unchecked{});
    }

    std::vector<Pos> positions() const {
        std::vector<Pos> p;
        for (const auto& [k, c] : cells_)
            if (c.group.ngens()) p.push_back(k);
        return p;
    }
    int max_total() const {
        int m = -1;
        for (auto [i, j] : positions()) m = std::max(m, i + j);
        return m;
    }
    int min_total() const {
        int m = 1 << 30;
        for (auto [i, j] : positions()) m = std::min(m, i + j);
        return m;
    }

    struct Failure {
        std::string what;
        Pos at;
    };

    std::vector<Failure> failures() const {
        std::vector<Failure> out;
        for (auto [i, j] : positions()) {
            if (!compose(horizontal(i - 2, j), horizontal(i - 1, j)).is_zero()) out.push_back({"D∘D != 0", {i, j}});
            if (!compose(vertical(i, j - 2), vertical(i, j - 1)).is_zero()) out.push_back({"d∘d != 0", {i, j}});
            GroupHom a = compose(horizontal(i - 1, j - 1), vertical(i, j - 1));
            GroupHom b = compose(vertical(i - 1, j - 1), horizontal(i - 1, j));
            if (!(a + b).is_zero()) out.push_back({"square does not anticommute", {i, j}});
        }
        return out;
    }
    bool valid() const { return failures().empty(); }

private:
    std::map<Pos, Cell> cells_;
    std::map<Pos, Matrix> horiz_, vert_;
};

// Summand L_{ij} inside Tot_n.
struct TotSummand {
    int i = 0, j = 0;
    std::size_t offset = 0, size = 0;
    std::vector<Block> blocks;  // offsets relative to the summand
};

struct TotalComplex {
    ChainComplex complex;
    std::map<int, std::vector<TotSummand>> summands;  // per degree, i descending

    const TotSummand* find(int i, int j) const {
        auto it = summands.find(i + j);
        if (it == summands.end()) return nullptr;
        for (const auto& s : it->second)
            if (s.i == i && s.j == j) return &s;
        return nullptr;
    }
    // Coordinate indices of summand (i, j) in Tot_{i+j}, or of one labelled block in it.
    std::vector<std::size_t> indices(int i, int j, const std::string& block = {}) const {
        std::vector<std::size_t> out;
        const TotSummand* s = find(i, j);
        if (!s) return out;
        if (block.empty()) {
            for (std::size_t k = 0; k < s->size; ++k) out.push_back(s->offset + k);
            return out;
        }
        for (const auto& b : s->blocks)
            if (b.label() == block)
                for (std::size_t k = 0; k < b.size; ++k) out.push_back(s->offset + b.offset + k);
        return out;
    }
};

inline TotalComplex total_complex(const Bicomplex& l) {
    auto bad = l.failures();
    if (!bad.empty())
        throw BicomplexInvalid(bad.front().what + " at (" + std::to_string(bad.front().at.first) + "," + std::to_string(bad.front().at.second) + ")");
    TotalComplex t;
    auto pos = l.positions();
    if (pos.empty()) return t;
    int lo = l.min_total(), hi = l.max_total();
    std::vector<FgAbGroup> groups;
    for (int n = lo; n <= hi; ++n) {
        std::vector<TotSummand> sums;
        std::vector<FgAbGroup> parts;
        std::size_t off = 0;
        std::vector<Pos> here;
        for (auto p : pos)
            if (p.first + p.second == n) here.push_back(p);
        std::sort(here.begin(), here.end(), [](Pos a, Pos b) { return a.first > b.first; });
        for (auto [i, j] : here) {
            Cell c = l.cell(i, j);
            sums.push_back({i, j, off, c.group.ngens(), c.blocks});
            off += c.group.ngens();
            parts.push_back(c.group);
        }
        t.summands[n] = std::move(sums);
        groups.push_back(direct_sum(parts));
    }
    std::vector<GroupHom> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        const FgAbGroup& src = groups[static_cast<std::size_t>(n - lo)];
        const FgAbGroup& tgt = groups[static_cast<std::size_t>(n - 1 - lo)];
        Matrix m(tgt.ngens(), src.ngens());
        for (const auto& s : t.summands[n]) {
            for (const auto& r : t.summands[n - 1]) {
                if (r.i == s.i - 1 && r.j == s.j) m.set_block(r.offset, s.offset, l.horizontal(r.i, r.j).matrix());
                if (r.i == s.i && r.j == s.j - 1) m.set_block(r.offset, s.offset, l.vertical(r.i, r.j).matrix());
            }
        }
        diffs.push_back(GroupHom(src, tgt, std::move(m), GroupHom::Unchecked{}));
    }
    t.complex = ChainComplex(lo, std::move(groups), std::move(diffs));
    return t;
}

// Tensor product of bicomplexes: with (h, v) the bidegree of x,
// D(x⊗y) = Dx⊗y + (-1)^{h+v} x⊗Dy and d(x⊗y) = dx⊗y + (-1)^{h+v} x⊗dy.
inline Bicomplex tensor_bicomplexes(const Bicomplex& x, const Bicomplex& y, int max_total = std::numeric_limits<int>::max()) {
    struct Piece {
        Pos px, py;
        std::size_t offset, size;
        std::vector<std::size_t> perm;  // Kronecker index -> local index (blocks made contiguous)
    };
    std::map<Pos, std::vector<Piece>> layout;
    Bicomplex out;
    auto px = x.positions(), py = y.positions();
    for (auto a : px)
        for (auto b : py) {
            Pos c{a.first + b.first, a.second + b.second};
            if (c.first + c.second > max_total) continue;
            layout[c].push_back({a, b, 0, 0});
        }
    for (auto& [c, pieces] : layout) {
        Cell cell;
        std::vector<FgAbGroup> parts;
        std::size_t off = 0;
        for (auto& pc : pieces) {
            Cell cx = x.cell(pc.px.first, pc.px.second), cy = y.cell(pc.py.first, pc.py.second);
            FgAbGroup g = tensor_presentation(cx.group, cy.group);
            pc.offset = off;
            pc.size = g.ngens();
            parts.push_back(g);
            const std::size_t ny = cy.group.ngens();
            pc.perm.assign(g.ngens(), 0);
            std::size_t local = 0;
            for (const auto& bx : cx.blocks)
                for (const auto& by : cy.blocks) {
                    Block b;
                    b.factors = bx.factors;
                    b.factors.insert(b.factors.end(), by.factors.begin(), by.factors.end());
                    b.size = bx.size * by.size;
                    b.offset = off + local;
                    for (std::size_t ia = 0; ia < bx.size; ++ia)
                        for (std::size_t ib = 0; ib < by.size; ++ib) pc.perm[(bx.offset + ia) * ny + by.offset + ib] = local++;
                    cell.blocks.push_back(b);
                }
            off += g.ngens();
        }
        cell.group = direct_sum(parts);
        out.set_cell(c.first, c.second, std::move(cell));
    }
    auto find_piece = [&](Pos c, Pos a, Pos b) -> const Piece* {
        auto it = layout.find(c);
        if (it == layout.end()) return nullptr;
        for (const auto& p : it->second)
            if (p.px == a && p.py == b) return &p;
        return nullptr;
    };
    auto set_permuted = [](Matrix& m, const Piece& to, const Piece& from, const Matrix& k) {
        for (std::size_t r = 0; r < k.rows(); ++r)
            for (std::size_t c = 0; c < k.cols(); ++c)
                if (!k(r, c).is_zero()) m(to.offset + to.perm[r], from.offset + from.perm[c]) = k(r, c);
    };
    // horizontal (dir 0) and vertical (dir 1) differentials
    for (int dir = 0; dir < 2; ++dir) {
        for (auto& [c, pieces] : layout) {
            Pos tc = dir == 0 ? Pos{c.first - 1, c.second} : Pos{c.first, c.second - 1};
            if (!layout.count(tc)) continue;
            FgAbGroup tg = out.group(tc.first, tc.second), sg = out.group(c.first, c.second);
            Matrix m(tg.ngens(), sg.ngens());
            bool any = false;
            for (const auto& pc : pieces) {
                auto [a, b] = std::pair{pc.px, pc.py};
                std::size_t nyb = y.group(b.first, b.second).ngens();
                std::size_t nxa = x.group(a.first, a.second).ngens();
                // differential on the x side
                Pos a2 = dir == 0 ? Pos{a.first - 1, a.second} : Pos{a.first, a.second - 1};
                if (const Piece* t = find_piece(tc, a2, b)) {
                    Matrix dx = dir == 0 ? x.horizontal(a2.first, a2.second).matrix() : x.vertical(a2.first, a2.second).matrix();
                    set_permuted(m, *t, pc, kron(dx, Matrix::identity(nyb)));
                    any = true;
                }
                Pos b2 = dir == 0 ? Pos{b.first - 1, b.second} : Pos{b.first, b.second - 1};
                if (const Piece* t = find_piece(tc, a, b2)) {
                    Matrix dy = dir == 0 ? y.horizontal(b2.first, b2.second).matrix() : y.vertical(b2.first, b2.second).matrix();
                    Integer s(((a.first + a.second) % 2 == 0) ? 1 : -1);
                    set_permuted(m, *t, pc, s * kron(Matrix::identity(nxa), dy));
                    any = true;
                }
            }
            if (!any) continue;
            if (dir == 0) out.set_horizontal(tc.first, tc.second, std::move(m));
            else out.set_vertical(tc.first, tc.second, std::move(m));
        }
    }
    return out;
}

inline Bicomplex row_bicomplex(const ChainComplex& p, const std::string& name = "P") {
    Bicomplex b;
    for (int n = p.lo(); n <= p.hi(); ++n) {
        FgAbGroup g = p.group(n);
        b.set_cell(n, 0, Cell{g, {Block{{Factor{name + std::to_string(n), false, g}}, 0, g.ngens()}}});
        if (n > p.lo()) b.set_horizontal(n - 1, 0, p.diff(n).matrix());
    }
    return b;
}

inline Bicomplex column_bicomplex(const ChainComplex& q, const std::string& name = "Q") {
    Bicomplex b;
    for (int n = q.lo(); n <= q.hi(); ++n) {
        FgAbGroup g = q.group(n);
        b.set_cell(0, n, Cell{g, {Block{{Factor{name + std::to_string(n), false, g}}, 0, g.ngens()}}});
        if (n > q.lo()) b.set_vertical(0, n - 1, q.diff(n).matrix());
    }
    return b;
}

// P horizontal, Q vertical: (P⊗Q)_{ij} = P_i ⊗ Q_j with d^P⊗id and (-1)^i id⊗d^Q.
inline Bicomplex tensor_complexes(const ChainComplex& p, const ChainComplex& q) {
    return tensor_bicomplexes(row_bicomplex(p, "P"), column_bicomplex(q, "Q"));
}

// Sub-block of a bicomplex differential between labelled blocks.
inline Matrix block_matrix(const Bicomplex& l, bool horizontal, Pos to, const std::string& to_block, Pos from, const std::string& from_block) {
    Matrix m = horizontal ? l.horizontal(to.first, to.second).matrix() : l.vertical(to.first, to.second).matrix();
    Cell ct = l.cell(to.first, to.second), cf = l.cell(from.first, from.second);
    const Block* bt = ct.find(to_block);
    const Block* bf = cf.find(from_block);
    if (!bt || !bf) throw BlockLabelsMissing("block " + (!bt ? to_block : from_block) + " not found");
    return m.block(bt->offset, bf->offset, bt->size, bf->size);
}

// Exactness of  X --f--> Y --g--> Z  at Y for free X, Y, Z given as matrices.
inline bool exact_at_middle(const Matrix& f, const Matrix& g) {
    if (!(g * f).is_zero()) return false;
    FgAbGroup x = FgAbGroup::free(f.cols()), y = FgAbGroup::free(f.rows()), z = FgAbGroup::free(g.rows());
    return homology(GroupHom(x, y, f, GroupHom::Unchecked{}), GroupHom(y, z, g, GroupHom::Unchecked{})).group().is_trivial();
}

} // namespace biext
