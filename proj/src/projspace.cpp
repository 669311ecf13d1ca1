#include "hermgeo/projspace.hpp"

#include <algorithm>

namespace hermgeo {

namespace {

int first_nonzero(const Vec4& v) {
    for (int i = 0; i < 4; ++i)
        if (v[i] != 0) return i;
    return -1;
}

Vec4 scale_canonical(const Field& f, Vec4 v) {
    const int k = first_nonzero(v);
    if (k < 0) throw std::invalid_argument("projspace: zero coordinate vector");
    const felem s = f.inv(v[k]);
    for (auto& x : v) x = f.mul(x, s);
    return v;
}

// line pivot patterns in enumeration order, with their free entry slots
struct LinePattern {
    int piv0, piv1;
    int nfree;
    std::array<std::array<int, 2>, 4> free_at; // (row, col), most significant first
};

const LinePattern kLinePatterns[6] = {
    {0, 1, 4, {{{0, 2}, {0, 3}, {1, 2}, {1, 3}}}},
    {0, 2, 3, {{{0, 1}, {0, 3}, {1, 3}, {0, 0}}}},
    {0, 3, 2, {{{0, 1}, {0, 2}, {0, 0}, {0, 0}}}},
    {1, 2, 2, {{{0, 3}, {1, 3}, {0, 0}, {0, 0}}}},
    {1, 3, 1, {{{0, 2}, {0, 0}, {0, 0}, {0, 0}}}},
    {2, 3, 0, {{{0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
};

std::uint64_t upow(std::uint64_t base, unsigned k) {
    std::uint64_t r = 1;
    while (k--) r *= base;
    return r;
}

} // namespace

unsigned rref(const Field& f, std::vector<Vec4>& rows) {
    unsigned rank = 0;
    for (int col = 0; col < 4 && rank < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const felem inv = f.inv(rows[rank][col]);
        for (int j = 0; j < 4; ++j) rows[rank][j] = f.mul(rows[rank][j], inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const felem c = rows[r][col];
            for (int j = 0; j < 4; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

std::vector<Vec4> null_space(const Field& f, const std::vector<Vec4>& constraint_rows) {
    std::vector<Vec4> rows = constraint_rows;
    const unsigned rank = rref(f, rows);
    std::array<int, 4> pivot_of_col{-1, -1, -1, -1};
    for (unsigned r = 0; r < rank; ++r) {
        const int pc = first_nonzero(rows[r]);
        pivot_of_col[pc] = static_cast<int>(r);
    }
    std::vector<Vec4> basis;
    for (int j = 0; j < 4; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        Vec4 v{};
        v[j] = 1;
        for (int c = 0; c < 4; ++c)
            if (pivot_of_col[c] >= 0) v[c] = f.neg(rows[pivot_of_col[c]][j]);
        basis.push_back(v);
    }
    rref(f, basis);
    return basis;
}

std::uint64_t point_count(const Field& f) {
    const std::uint64_t s = f.order();
    return s * s * s + s * s + s + 1;
}
std::uint64_t plane_count(const Field& f) { return point_count(f); }
std::uint64_t line_count(const Field& f) {
    const std::uint64_t s = f.order();
    return (s * s + 1) * (s * s + s + 1);
}

Point point_at(const Field& f, std::uint64_t idx) {
    const std::uint64_t s = f.order();
    Vec4 c{};
    for (int k = 0; k < 4; ++k) {
        const std::uint64_t block = upow(s, 3 - k);
        if (idx < block) {
            c[k] = 1;
            for (int j = 3; j > k; --j) {
                c[j] = static_cast<felem>(idx % s);
                idx /= s;
            }
            return Point{&f, c};
        }
        idx -= block;
    }
    throw std::out_of_range("point_at: index out of range");
}

std::uint64_t point_index(const Point& p) {
    const std::uint64_t s = p.f->order();
    const int k = first_nonzero(p.c);
    std::uint64_t idx = 0;
    for (int j = 0; j < k; ++j) idx += upow(s, 3 - j);
    std::uint64_t off = 0;
    for (int j = k + 1; j < 4; ++j) off = off * s + p.c[j];
    return idx + off;
}

Plane plane_at(const Field& f, std::uint64_t idx) {
    const Point p = point_at(f, idx);
    return Plane{&f, p.c};
}

std::uint64_t plane_index(const Plane& pl) { return point_index(Point{pl.f, pl.dual}); }

Line line_at(const Field& f, std::uint64_t idx) {
    const std::uint64_t s = f.order();
    for (const auto& pat : kLinePatterns) {
        const std::uint64_t block = upow(s, pat.nfree);
        if (idx >= block) { idx -= block; continue; }
        Line l{&f, {}};
        l.rows[0][pat.piv0] = 1;
        l.rows[1][pat.piv1] = 1;
        for (int i = pat.nfree - 1; i >= 0; --i) {
            l.rows[pat.free_at[i][0]][pat.free_at[i][1]] = static_cast<felem>(idx % s);
            idx /= s;
        }
        return l;
    }
    throw std::out_of_range("line_at: index out of range");
}

std::uint64_t line_index(const Line& l) {
    const std::uint64_t s = l.f->order();
    const int piv0 = first_nonzero(l.rows[0]);
    const int piv1 = first_nonzero(l.rows[1]);
    std::uint64_t base = 0;
    for (const auto& pat : kLinePatterns) {
        if (pat.piv0 == piv0 && pat.piv1 == piv1) {
            std::uint64_t off = 0;
            for (int i = 0; i < pat.nfree; ++i)
                off = off * s + l.rows[pat.free_at[i][0]][pat.free_at[i][1]];
            return base + off;
        }
        base += upow(s, pat.nfree);
    }
    throw std::logic_error("line_index: malformed RREF line");
}

Point make_point(const Field& f, const Vec4& raw) { return Point{&f, scale_canonical(f, raw)}; }

Plane make_plane(const Field& f, const Vec4& raw_dual) {
    return Plane{&f, scale_canonical(f, raw_dual)};
}

Line make_line(const Field& f, const Vec4& r0, const Vec4& r1) {
    std::vector<Vec4> rows{r0, r1};
    if (rref(f, rows) != 2)
        throw std::invalid_argument("make_line: rows do not span a line");
    return Line{&f, {rows[0], rows[1]}};
}

Line line_through(const Point& p, const Point& q) {
    if (p == q) throw std::invalid_argument("line_through: coincident points");
    return make_line(*p.f, p.c, q.c);
}

bool point_on_plane(const Point& p, const Plane& pl) {
    const Field& f = *p.f;
    felem acc = 0;
    for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(p.c[i], pl.dual[i]));
    return acc == 0;
}

bool point_on_line(const Point& p, const Line& l) {
    std::vector<Vec4> rows{l.rows[0], l.rows[1], p.c};
    return rref(*p.f, rows) == 2;
}

bool line_in_plane(const Line& l, const Plane& pl) {
    return point_on_plane(Point{l.f, l.rows[0]}, pl) &&
           point_on_plane(Point{l.f, l.rows[1]}, pl);
}

std::vector<Point> points_on_line(const Line& l) {
    const Field& f = *l.f;
    std::vector<Point> pts;
    pts.reserve(f.order() + 1);
    for (std::uint32_t mu = 0; mu < f.order(); ++mu) {
        Vec4 v;
        for (int i = 0; i < 4; ++i)
            v[i] = f.add(l.rows[0][i], f.mul(static_cast<felem>(mu), l.rows[1][i]));
        pts.push_back(make_point(f, v));
    }
    pts.push_back(make_point(f, l.rows[1]));
    std::sort(pts.begin(), pts.end());
    return pts;
}

Plane plane_through(const Line& l, const Point& p) {
    const auto basis = null_space(*l.f, {l.rows[0], l.rows[1], p.c});
    if (basis.size() != 1)
        throw std::invalid_argument("plane_through: point lies on the line");
    return make_plane(*l.f, basis[0]);
}

Line meet_planes(const Plane& a, const Plane& b) {
    if (a == b) throw std::invalid_argument("meet_planes: planes coincide");
    const auto basis = null_space(*a.f, {a.dual, b.dual});
    return make_line(*a.f, basis[0], basis[1]);
}

bool lines_meet(const Line& a, const Line& b) {
    std::vector<Vec4> rows{a.rows[0], a.rows[1], b.rows[0], b.rows[1]};
    return rref(*a.f, rows) < 4;
}

std::optional<Point> meet_lines(const Line& a, const Line& b) {
    if (a == b) throw std::invalid_argument("meet_lines: lines coincide");
    const Field& f = *a.f;
    // solve u*a0 + v*a1 + w*b0 + x*b1 = 0 coordinatewise
    std::vector<Vec4> rows(4);
    for (int i = 0; i < 4; ++i)
        rows[i] = {a.rows[0][i], a.rows[1][i], b.rows[0][i], b.rows[1][i]};
    const auto basis = null_space(f, rows);
    if (basis.empty()) return std::nullopt;
    const Vec4& v = basis[0];
    Vec4 pt{};
    for (int i = 0; i < 4; ++i)
        pt[i] = f.add(f.mul(v[0], a.rows[0][i]), f.mul(v[1], a.rows[1][i]));
    return make_point(f, pt);
}

std::vector<Plane> book_of_planes(const Line& l) {
    const Field& f = *l.f;
    const auto basis = null_space(f, {l.rows[0], l.rows[1]});
    if (basis.size() != 2) throw std::logic_error("book_of_planes: bad null space");
    std::vector<Plane> book;
    book.reserve(f.order() + 1);
    for (std::uint32_t mu = 0; mu < f.order(); ++mu) {
        Vec4 v;
        for (int i = 0; i < 4; ++i)
            v[i] = f.add(basis[0][i], f.mul(static_cast<felem>(mu), basis[1][i]));
        book.push_back(make_plane(f, v));
    }
    book.push_back(make_plane(f, basis[1]));
    std::sort(book.begin(), book.end());
    return book;
}

void for_each_point(const Field& f, const std::function<bool(const Point&)>& fn) {
    const std::uint64_t n = point_count(f);
    for (std::uint64_t i = 0; i < n; ++i)
        if (!fn(point_at(f, i))) return;
}

void for_each_plane(const Field& f, const std::function<bool(const Plane&)>& fn) {
    const std::uint64_t n = plane_count(f);
    for (std::uint64_t i = 0; i < n; ++i)
        if (!fn(plane_at(f, i))) return;
}

void for_each_line(const Field& f, const std::function<bool(const Line&)>& fn) {
    const std::uint64_t n = line_count(f);
    for (std::uint64_t i = 0; i < n; ++i)
        if (!fn(line_at(f, i))) return;
}

void for_each_line_through(const Point& p, const std::function<bool(const Line&)>& fn) {
    const Field& f = *p.f;
    const std::uint64_t s = f.order();
    const int pivk = first_nonzero(p.c);
    // lines through p meet the coordinate plane x_pivk = 0 in one point each;
    // enumerate that plane as a copy of PG(2)
    const std::uint64_t n2 = s * s + s + 1;
    for (std::uint64_t idx = 0; idx < n2; ++idx) {
        std::array<felem, 3> c3{};
        std::uint64_t rem = idx;
        bool placed = false;
        for (int k = 0; k < 3 && !placed; ++k) {
            const std::uint64_t block = upow(s, 2 - k);
            if (rem < block) {
                c3[k] = 1;
                for (int j = 2; j > k; --j) {
                    c3[j] = static_cast<felem>(rem % s);
                    rem /= s;
                }
                placed = true;
            } else {
                rem -= block;
            }
        }
        Vec4 q{};
        int src = 0;
        for (int i = 0; i < 4; ++i)
            if (i != pivk) q[i] = c3[src++];
        if (!fn(line_through(p, Point{&f, q}))) return;
    }
}

Projectivity identity_map(const Field& f) {
    Projectivity m{&f, {}};
    for (int i = 0; i < 4; ++i) m.m[i][i] = 1;
    return m;
}

Point apply(const Projectivity& m, const Point& p) {
    const Field& f = *m.f;
    Vec4 y{};
    for (int i = 0; i < 4; ++i) {
        felem acc = 0;
        for (int j = 0; j < 4; ++j) acc = f.add(acc, f.mul(m.m[i][j], p.c[j]));
        y[i] = acc;
    }
    return make_point(f, y);
}

Line apply(const Projectivity& m, const Line& l) {
    return line_through(apply(m, Point{l.f, l.rows[0]}), apply(m, Point{l.f, l.rows[1]}));
}

Projectivity compose(const Projectivity& a, const Projectivity& b) {
    const Field& f = *a.f;
    Projectivity r{&f, {}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            felem acc = 0;
            for (int k = 0; k < 4; ++k) acc = f.add(acc, f.mul(a.m[i][k], b.m[k][j]));
            r.m[i][j] = acc;
        }
    return r;
}

Projectivity inverse(const Projectivity& m) {
    const Field& f = *m.f;
    std::array<std::array<felem, 8>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = m.m[i][j];
        aug[i][4 + i] = 1;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (aug[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw std::domain_error("Projectivity::inverse: singular matrix");
        std::swap(aug[col], aug[piv]);
        const felem inv = f.inv(aug[col][col]);
        for (int j = 0; j < 8; ++j) aug[col][j] = f.mul(aug[col][j], inv);
        for (int r = 0; r < 4; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            const felem c = aug[r][col];
            for (int j = 0; j < 8; ++j) aug[r][j] = f.sub(aug[r][j], f.mul(c, aug[col][j]));
        }
    }
    Projectivity out{&f, {}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.m[i][j] = aug[i][4 + j];
    return out;
}

felem det(const Projectivity& m) {
    const Field& f = *m.f;
    std::array<Vec4, 4> a = m.m;
    felem d = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(a[col], a[piv]);
            d = f.neg(d);
        }
        d = f.mul(d, a[col][col]);
        const felem inv = f.inv(a[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            if (a[r][col] == 0) continue;
            const felem c = f.mul(a[r][col], inv);
            for (int j = col; j < 4; ++j) a[r][j] = f.sub(a[r][j], f.mul(c, a[col][j]));
        }
    }
    return d;
}

Plane image_plane(const Projectivity& m, const Plane& pl) {
    const Field& f = *m.f;
    const Projectivity mi = inverse(m);
    Vec4 d{};
    for (int j = 0; j < 4; ++j) {
        felem acc = 0;
        for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(mi.m[i][j], pl.dual[i]));
        d[j] = acc;
    }
    return make_plane(f, d);
}

Projectivity adapted_coords(const Line& l, const std::optional<Line>& l2) {
    const Field& f = *l.f;
    std::vector<Vec4> cols{l.rows[0], l.rows[1]};
    if (l2) {
        std::vector<Vec4> all{l.rows[0], l.rows[1], l2->rows[0], l2->rows[1]};
        if (rref(f, all) != 4)
            throw std::invalid_argument("adapted_coords: second line is not skew to the first");
        cols.push_back(l2->rows[0]);
        cols.push_back(l2->rows[1]);
    } else {
        for (int i = 0; i < 4 && cols.size() < 4; ++i) {
            Vec4 e{};
            e[i] = 1;
            std::vector<Vec4> test = cols;
            test.push_back(e);
            const auto need = test.size();
            if (rref(f, test) == need) cols.push_back(e);
        }
    }
    Projectivity m{&f, {}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.m[i][j] = cols[j][i];
    if (det(m) == 0) throw std::logic_error("adapted_coords: produced a singular map");
    return m;
}

std::string to_string(const Point& p) {
    std::string out = "[";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ':';
        out += p.f->to_string(p.c[i]);
    }
    return out + "]";
}

std::string to_string(const Plane& pl) {
    std::string out = "plane(";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ':';
        out += pl.f->to_string(pl.dual[i]);
    }
    return out + ")";
}

std::string to_string(const Line& l) {
    return "span(" + to_string(Point{l.f, l.rows[0]}) + "," +
           to_string(Point{l.f, l.rows[1]}) + ")";
}

} // namespace hermgeo
