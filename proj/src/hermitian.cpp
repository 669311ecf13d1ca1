#include "hermgeo/hermitian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hermgeo {

namespace {

Vec4 mat_apply_conj(const Field& f, const Mat4& a, const Vec4& x) {
    Vec4 y{};
    Vec4 xc;
    for (int i = 0; i < 4; ++i) xc[i] = f.conj(x[i]);
    for (int i = 0; i < 4; ++i) {
        felem s = 0;
        for (int j = 0; j < 4; ++j) s = f.add(s, f.mul(a[i][j], xc[j]));
        y[i] = s;
    }
    return y;
}

unsigned matrix_rank(const Field& f, Mat4 a) {
    unsigned rank = 0;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int piv = -1;
        for (unsigned r = rank; r < 4; ++r)
            if (a[r][col] != 0) { piv = static_cast<int>(r); break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[static_cast<unsigned>(piv)]);
        const felem s = f.inv(a[rank][col]);
        for (int j = 0; j < 4; ++j) a[rank][j] = f.mul(s, a[rank][j]);
        for (unsigned r = 0; r < 4; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const felem c = a[r][col];
            for (int j = 0; j < 4; ++j)
                a[r][j] = f.sub(a[r][j], f.mul(c, a[rank][j]));
        }
        ++rank;
    }
    return rank;
}

Mat4 matrix_inverse(const Field& f, Mat4 a) {
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw std::logic_error("matrix_inverse: singular matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const felem s = f.inv(a[col][col]);
        for (int j = 0; j < 4; ++j) {
            a[col][j] = f.mul(s, a[col][j]);
            inv[col][j] = f.mul(s, inv[col][j]);
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const felem c = a[r][col];
            for (int j = 0; j < 4; ++j) {
                a[r][j] = f.sub(a[r][j], f.mul(c, a[col][j]));
                inv[r][j] = f.sub(inv[r][j], f.mul(c, inv[col][j]));
            }
        }
    }
    return inv;
}

} // namespace

HermitianSurface::HermitianSurface(const Field& f, const Mat4& a)
    : f_(&f), a_(a), gens_once_(std::make_unique<std::once_flag>()) {
    bool all_zero = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (a_[i][j] != 0) all_zero = false;
            if (j < i) continue;
            if (a_[j][i] != f.conj(a_[i][j]))
                throw std::invalid_argument(
                    "matrix is not hermitian: entry (" + std::to_string(j) + "," +
                    std::to_string(i) + ") is not the conjugate of entry (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        }
    if (all_zero) throw std::invalid_argument("hermitian matrix is zero");

    rank_ = matrix_rank(f, a_);
    if (rank_ == 4) ainv_ = matrix_inverse(f, a_);

    const std::uint64_t n = point_count(f);
    for (std::uint64_t i = 0; i < n; ++i)
        if (value(point_at(f, i).c) == 0) points_.push_back(i);
}

HermitianSurface::HermitianSurface(const HermitianSurface& other)
    : f_(other.f_),
      a_(other.a_),
      ainv_(other.ainv_),
      rank_(other.rank_),
      points_(other.points_),
      gens_once_(std::make_unique<std::once_flag>()) {}

HermitianSurface& HermitianSurface::operator=(const HermitianSurface& other) {
    if (this == &other) return *this;
    f_ = other.f_;
    a_ = other.a_;
    ainv_ = other.ainv_;
    rank_ = other.rank_;
    points_ = other.points_;
    gens_once_ = std::make_unique<std::once_flag>();
    gens_.clear();
    return *this;
}

felem HermitianSurface::value(const Vec4& x) const {
    const Vec4 t = mat_apply_conj(*f_, a_, x);
    felem v = 0;
    for (int i = 0; i < 4; ++i) v = f_->add(v, f_->mul(x[i], t[i]));
    return v;
}

void HermitianSurface::require_nondegenerate(const char* op) const {
    if (rank_ != 4)
        throw std::logic_error(std::string(op) + ": surface has rank " +
                               std::to_string(rank_) + ", need 4");
}

Plane HermitianSurface::polar_plane(const Point& p) const {
    require_nondegenerate("polar_plane");
    return make_plane(*f_, mat_apply_conj(*f_, a_, p.c));
}

Point HermitianSurface::pole(const Plane& h) const {
    require_nondegenerate("pole");
    Vec4 v{};
    for (int i = 0; i < 4; ++i) {
        felem s = 0;
        for (int j = 0; j < 4; ++j) s = f_->add(s, f_->mul(ainv_[i][j], h.dual[j]));
        v[i] = f_->conj(s);
    }
    return make_point(*f_, v);
}

LineClass HermitianSurface::classify_line(const Line& l) const {
    require_nondegenerate("classify_line");
    // Restrict the form to the line: b[i][j] = r_i^T A conj(r_j) is a 2x2
    // Hermitian matrix whose rank decides the class.
    felem b[2][2];
    for (int j = 0; j < 2; ++j) {
        const Vec4 t = mat_apply_conj(*f_, a_, l.rows[j]);
        for (int i = 0; i < 2; ++i) {
            felem s = 0;
            for (int k = 0; k < 4; ++k) s = f_->add(s, f_->mul(l.rows[i][k], t[k]));
            b[i][j] = s;
        }
    }
    if (b[0][0] == 0 && b[0][1] == 0 && b[1][0] == 0 && b[1][1] == 0)
        return LineClass::Generator;
    const felem det = f_->sub(f_->mul(b[0][0], b[1][1]), f_->mul(b[0][1], b[1][0]));
    return det == 0 ? LineClass::Tangent : LineClass::Secant;
}

PlaneClass HermitianSurface::classify_plane(const Plane& h) const {
    require_nondegenerate("classify_plane");
    return contains(pole(h)) ? PlaneClass::Tangent : PlaneClass::NonTangent;
}

BookProfile HermitianSurface::book_profile(const Line& l) const {
    require_nondegenerate("book_profile");
    BookProfile bp;
    for (const Plane& pl : book_of_planes(l)) {
        if (classify_plane(pl) == PlaneClass::Tangent)
            ++bp.tangent;
        else
            ++bp.non_tangent;
    }
    return bp;
}

LineTally HermitianSurface::line_tally(const Point& p) const {
    require_nondegenerate("line_tally");
    LineTally t;
    for_each_line_through(p, [&](const Line& l) {
        switch (classify_line(l)) {
            case LineClass::Generator: ++t.generators; break;
            case LineClass::Tangent: ++t.tangents; break;
            case LineClass::Secant: ++t.secants; break;
        }
        return true;
    });
    return t;
}

void HermitianSurface::build_generators() const {
    const Field& f = *f_;
    std::vector<std::uint64_t> idx;
    // Generators through a surface point lie in its polar plane, so scanning
    // the pencil of lines inside the polar plane at every surface point sees
    // each generator once per point on it.
    for (const std::uint64_t pi : points_) {
        const Point p = point_at(f, pi);
        const Plane polar = polar_plane(p);
        const auto basis = null_space(f, {polar.dual});
        // pick two basis vectors independent from p
        int bi = -1, bj = -1;
        for (int i = 0; i < 3 && bi < 0; ++i)
            for (int j = i + 1; j < 3; ++j) {
                std::vector<Vec4> rows = {p.c, basis[static_cast<unsigned>(i)],
                                          basis[static_cast<unsigned>(j)]};
                if (rref(f, rows) == 3) {
                    bi = i;
                    bj = j;
                    break;
                }
            }
        if (bi < 0) throw std::logic_error("build_generators: degenerate pencil frame");
        const Vec4& u = basis[static_cast<unsigned>(bi)];
        const Vec4& v = basis[static_cast<unsigned>(bj)];
        const auto consider = [&](const Vec4& dir) {
            const Line l = line_through(p, make_point(f, dir));
            if (classify_line(l) == LineClass::Generator) idx.push_back(line_index(l));
        };
        for (std::uint64_t m = 0; m < f.order(); ++m) {
            Vec4 dir;
            for (int k = 0; k < 4; ++k)
                dir[k] = f.add(u[k], f.mul(static_cast<felem>(m), v[k]));
            consider(dir);
        }
        consider(v);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    gens_.reserve(idx.size());
    for (const std::uint64_t i : idx) gens_.push_back(line_at(f, i));
}

const std::vector<Line>& HermitianSurface::generators() const {
    require_nondegenerate("generators");
    std::call_once(*gens_once_, [this] { build_generators(); });
    return gens_;
}

HermitianSurface HermitianSurface::transform(const Projectivity& m) const {
    if (m.f != f_) throw std::invalid_argument("transform: field mismatch");
    // (Mx)^T A conj(Mx) = x^T (M^T A conj(M)) conj(x)
    Mat4 am{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            felem s = 0;
            for (int k = 0; k < 4; ++k)
                s = f_->add(s, f_->mul(a_[i][k], f_->conj(m.m[k][j])));
            am[i][j] = s;
        }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            felem s = 0;
            for (int k = 0; k < 4; ++k) s = f_->add(s, f_->mul(m.m[k][i], am[k][j]));
            out[i][j] = s;
        }
    return HermitianSurface(*f_, out);
}

HermitianSurface canonical_surface(const Field& f, unsigned rank) {
    if (rank < 1 || rank > 4)
        throw std::invalid_argument("canonical_surface: rank must be 1..4, got " +
                                    std::to_string(rank));
    Mat4 a{};
    for (unsigned i = 0; i < rank; ++i) a[i][i] = 1;
    return HermitianSurface(f, a);
}

const char* to_string(LineClass c) {
    switch (c) {
        case LineClass::Tangent: return "tangent";
        case LineClass::Secant: return "secant";
        case LineClass::Generator: return "generator";
    }
    return "?";
}

const char* to_string(PlaneClass c) {
    switch (c) {
        case PlaneClass::Tangent: return "tangent";
        case PlaneClass::NonTangent: return "non-tangent";
    }
    return "?";
}

} // namespace hermgeo
