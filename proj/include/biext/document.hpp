// Line-oriented input language for groups, homomorphisms and two-term complexes.
//
//   group B = Z/2 + Z/2
//   hom u : A -> B = [[1],[0]]
//   complex K = A --u--> B
//
// '#' starts a comment. The name 0 is predeclared as the zero group and,
// inside a complex declaration, as the zero map.
#pragma once

#include "biext/complex.hpp"

#include <cctype>
#include <sstream>
#include <variant>

namespace biext {

struct ParseError : Error {
    std::size_t line, column;
    ParseError(std::size_t l, std::size_t c, const std::string& msg)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

struct UnknownName : Error {
    std::string name;
    std::size_t line, column;
    UnknownName(std::size_t l, std::size_t c, const std::string& n)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": unknown name '" + n + "'"), name(n), line(l), column(c) {}
};

struct GroupDecl {
    std::string name;
    FgAbGroup group;  // free generators first, then torsion in declared order
    bool operator==(const GroupDecl& o) const { return name == o.name && group.same_presentation(o.group); }
};

struct HomDecl {
    std::string name, source, target;
    Matrix matrix;
    bool operator==(const HomDecl& o) const { return name == o.name && source == o.source && target == o.target && matrix == o.matrix; }
};

struct ComplexDecl {
    std::string name, a, u, b;
    bool operator==(const ComplexDecl& o) const = default;
};

using Declaration = std::variant<GroupDecl, HomDecl, ComplexDecl>;

class Document {
public:
    const std::vector<Declaration>& declarations() const noexcept { return decls_; }

    bool has_group(const std::string& n) const { return n == "0" || groups_.count(n); }
    bool has_hom(const std::string& n) const { return homs_.count(n) != 0; }
    bool has_complex(const std::string& n) const { return complexes_.count(n) != 0; }

    FgAbGroup group(const std::string& n) const {
        if (n == "0") return FgAbGroup::zero();
        auto it = groups_.find(n);
        if (it == groups_.end()) throw UnknownName(0, 0, n);
        return std::get<GroupDecl>(decls_[it->second]).group;
    }
    const HomDecl& hom_decl(const std::string& n) const {
        auto it = homs_.find(n);
        if (it == homs_.end()) throw UnknownName(0, 0, n);
        return std::get<HomDecl>(decls_[it->second]);
    }
    GroupHom hom(const std::string& n) const {
        const HomDecl& h = hom_decl(n);
        return GroupHom(group(h.source), group(h.target), h.matrix, GroupHom::Unchecked{});
    }
    TwoTermComplex complex(const std::string& n) const {
        auto it = complexes_.find(n);
        if (it == complexes_.end()) throw UnknownName(0, 0, n);
        const auto& c = std::get<ComplexDecl>(decls_[it->second]);
        FgAbGroup a = group(c.a), b = group(c.b);
        if (c.u == "0") return TwoTermComplex::zero_map(a, b);
        return TwoTermComplex(a, b, hom(c.u));
    }
    std::vector<std::string> complex_names() const {
        std::vector<std::string> out;
        for (const auto& d : decls_)
            if (auto c = std::get_if<ComplexDecl>(&d)) out.push_back(c->name);
        return out;
    }

    void add(Declaration d) {
        std::string n = std::visit([](const auto& x) { return x.name; }, d);
        if (std::holds_alternative<GroupDecl>(d)) groups_[n] = decls_.size();
        else if (std::holds_alternative<HomDecl>(d)) homs_[n] = decls_.size();
        else complexes_[n] = decls_.size();
        decls_.push_back(std::move(d));
    }
    bool declared(const std::string& n) const { return n == "0" || groups_.count(n) || homs_.count(n) || complexes_.count(n); }

    bool operator==(const Document& o) const { return decls_ == o.decls_; }

private:
    std::vector<Declaration> decls_;
    std::map<std::string, std::size_t> groups_, homs_, complexes_;
};

namespace detail {

class LineCursor {
public:
    LineCursor(std::string_view s, std::size_t line) : s_(s), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    std::size_t column() const { return pos_ + 1; }
    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

    bool accept(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    // Identifier or the predeclared name 0.
    std::string name(const char* what = "a name") {
        skip_ws();
        std::size_t b = pos_;
        if (pos_ < s_.size() && s_[pos_] == '0' && (pos_ + 1 >= s_.size() || !ident_char(s_[pos_ + 1]))) {
            ++pos_;
            return "0";
        }
        if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) fail(std::string("expected ") + what);
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }
    Integer integer() {
        skip_ws();
        std::size_t b = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t d = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == d) {
            pos_ = b;
            fail("expected an integer");
        }
        std::string txt(s_.substr(b, pos_ - b));
        if (txt[0] == '+') txt.erase(0, 1);
        return Integer(txt);
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

private:
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

// [[a,b],[c,d]] with rows indexed by target generators.
inline Matrix parse_matrix(LineCursor& c, std::size_t rows, std::size_t cols) {
    std::size_t col0 = c.column();
    c.expect("[");
    std::vector<Vec> data;
    if (!c.accept("]")) {
        do {
            c.expect("[");
            Vec row;
            if (!c.accept("]")) {
                do row.push_back(c.integer());
                while (c.accept(","));
                c.expect("]");
            }
            data.push_back(std::move(row));
        } while (c.accept(","));
        c.expect("]");
    }
    if (data.size() != rows)
        throw ParseError(c.line(), col0, "matrix has " + std::to_string(data.size()) + " rows, the target has " + std::to_string(rows) + " generators");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (data[i].size() != cols)
            throw ParseError(c.line(), col0, "row " + std::to_string(i + 1) + " has " + std::to_string(data[i].size()) + " entries, the source has " + std::to_string(cols) + " generators");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = data[i][j];
    }
    return m;
}

} // namespace detail

inline Document parse_document(std::string_view text) {
    Document doc;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        detail::LineCursor c(line, line_no);
        if (c.at_end()) {
            if (end == text.size()) break;
            continue;
        }
        auto fresh = [&](const std::string& n, std::size_t col) {
            if (n == "0" || n == "Z") throw ParseError(line_no, col, "'" + n + "' is reserved");
            if (doc.declared(n)) throw ParseError(line_no, col, "'" + n + "' is already declared");
        };
        auto known_group = [&](const std::string& n, std::size_t col) {
            if (!doc.has_group(n)) throw UnknownName(line_no, col, n);
        };
        std::size_t kw_col = (c.skip_ws(), c.column());
        std::string kw = c.name("a declaration keyword");
        if (kw == "group") {
            std::size_t col = (c.skip_ws(), c.column());
            std::string n = c.name("a group name");
            fresh(n, col);
            c.expect("=");
            std::vector<Integer> free_part, torsion;
            if (c.peek() == '0') {
                c.name();
            } else {
                do {
                    std::size_t tc = (c.skip_ws(), c.column());
                    if (!c.accept("Z")) c.fail("expected 'Z' or 'Z/<n>'");
                    if (c.accept("/")) {
                        Integer d = c.integer();
                        if (d < Integer(1)) throw ParseError(line_no, tc, "cyclic order must be positive");
                        torsion.push_back(d);
                    } else {
                        free_part.push_back(Integer(0));
                    }
                } while (c.accept("+"));
            }
            free_part.insert(free_part.end(), torsion.begin(), torsion.end());
            doc.add(GroupDecl{n, FgAbGroup::from_orders(free_part)});
        } else if (kw == "hom") {
            std::size_t col = (c.skip_ws(), c.column());
            std::string n = c.name("a homomorphism name");
            fresh(n, col);
            c.expect(":");
            std::size_t sc = (c.skip_ws(), c.column());
            std::string src = c.name("a source group");
            known_group(src, sc);
            c.expect("->");
            std::size_t tc = (c.skip_ws(), c.column());
            std::string tgt = c.name("a target group");
            known_group(tgt, tc);
            c.expect("=");
            FgAbGroup a = doc.group(src), b = doc.group(tgt);
            Matrix m = detail::parse_matrix(c, b.ngens(), a.ngens());
            try {
                GroupHom check(a, b, m);
            } catch (const IllDefinedHom& e) {
                throw IllDefinedHom("line " + std::to_string(line_no) + ": hom " + n + ": " + e.what());
            }
            doc.add(HomDecl{n, src, tgt, std::move(m)});
        } else if (kw == "complex") {
            std::size_t col = (c.skip_ws(), c.column());
            std::string n = c.name("a complex name");
            fresh(n, col);
            c.expect("=");
            std::size_t ac = (c.skip_ws(), c.column());
            std::string a = c.name("a group");
            known_group(a, ac);
            c.expect("--");
            std::size_t uc = (c.skip_ws(), c.column());
            std::string u = c.name("a homomorphism");
            c.expect("-->");
            std::size_t bc = (c.skip_ws(), c.column());
            std::string b = c.name("a group");
            known_group(b, bc);
            if (u != "0") {
                if (!doc.has_hom(u)) throw UnknownName(line_no, uc, u);
                const HomDecl& h = doc.hom_decl(u);
                if (h.source != a || h.target != b)
                    throw ParseError(line_no, uc, "hom " + u + " goes " + h.source + " -> " + h.target + ", not " + a + " -> " + b);
            }
            doc.add(ComplexDecl{n, a, u, b});
        } else {
            throw ParseError(line_no, kw_col, "expected 'group', 'hom' or 'complex'");
        }
        if (!c.at_end()) c.fail("unexpected trailing text");
        if (end == text.size()) break;
    }
    return doc;
}

inline std::string serialize_document(const Document& doc) {
    std::ostringstream os;
    for (const auto& d : doc.declarations()) {
        if (auto g = std::get_if<GroupDecl>(&d)) {
            os << "group " << g->name << " = ";
            if (g->group.ngens() == 0) os << "0";
            for (std::size_t i = 0; i < g->group.ngens(); ++i) {
                if (i) os << " + ";
                const Integer& o = g->group.order_of(i);
                if (o.is_zero()) os << "Z";
                else os << "Z/" << o;
            }
        } else if (auto h = std::get_if<HomDecl>(&d)) {
            os << "hom " << h->name << " : " << h->source << " -> " << h->target << " = [";
            for (std::size_t i = 0; i < h->matrix.rows(); ++i) {
                os << (i ? ",[" : "[");
                for (std::size_t j = 0; j < h->matrix.cols(); ++j) os << (j ? "," : "") << h->matrix(i, j);
                os << "]";
            }
            os << "]";
        } else {
            const auto& c = std::get<ComplexDecl>(d);
            os << "complex " << c.name << " = " << c.a << " --" << c.u << "--> " << c.b;
        }
        os << "\n";
    }
    return os.str();
}

// A bare matrix: either [[..],[..]] or whitespace-separated rows, one per line.
inline Matrix parse_matrix_text(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') {
        std::string flat(text);
        for (char& ch : flat)
            if (ch == '\n' || ch == '\r') ch = ' ';
        detail::LineCursor c(flat, 1);
        c.expect("[");
        std::vector<Vec> rows;
        if (!c.accept("]")) {
            do {
                c.expect("[");
                Vec row;
                if (!c.accept("]")) {
                    do row.push_back(c.integer());
                    while (c.accept(","));
                    c.expect("]");
                }
                rows.push_back(std::move(row));
            } while (c.accept(","));
            c.expect("]");
        }
        if (!c.at_end()) c.fail("unexpected trailing text");
        std::size_t cols = rows.empty() ? 0 : rows[0].size();
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw ParseError(1, 1, "ragged matrix");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    std::vector<Vec> rows;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        detail::LineCursor c(line, line_no);
        Vec row;
        while (!c.at_end()) row.push_back(c.integer());
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows[0].size()) throw ParseError(line_no, 1, "ragged matrix");
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace biext
