#pragma once

#include "hermgeo/projspace.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace hermgeo {

// 4x4 matrix over GF(q^2), row major.
using Mat4 = std::array<std::array<felem, 4>, 4>;

enum class LineClass { Tangent, Secant, Generator };
enum class PlaneClass { Tangent, NonTangent };

// Line classes through a fixed point.
struct LineTally {
    std::uint64_t generators = 0;
    std::uint64_t tangents = 0;
    std::uint64_t secants = 0;
};

// Plane classes in the pencil through a fixed line.
struct BookProfile {
    unsigned tangent = 0;
    unsigned non_tangent = 0;
};

// The variety x^T A conj(x) = 0 for a Hermitian matrix A, i.e. one with
// A[j][i] == conj(A[i][j]).  The constructor validates A and rejects zero or
// non-Hermitian matrices.  Polarity-based operations (polar_plane, pole,
// classification, generators) require full rank and throw otherwise.
class HermitianSurface {
public:
    HermitianSurface(const Field& f, const Mat4& a);

    HermitianSurface(const HermitianSurface& other);
    HermitianSurface& operator=(const HermitianSurface& other);
    HermitianSurface(HermitianSurface&&) = default;
    HermitianSurface& operator=(HermitianSurface&&) = default;

    const Field& field() const { return *f_; }
    const Mat4& matrix() const { return a_; }
    unsigned rank() const { return rank_; }
    bool nondegenerate() const { return rank_ == 4; }

    felem value(const Vec4& x) const;
    bool contains(const Point& p) const { return value(p.c) == 0; }

    // Indices of the surface points, ascending.
    const std::vector<std::uint64_t>& point_indices() const { return points_; }
    std::uint64_t num_points() const { return points_.size(); }

    Plane polar_plane(const Point& p) const;
    Point pole(const Plane& h) const;

    LineClass classify_line(const Line& l) const;
    PlaneClass classify_plane(const Plane& h) const;

    BookProfile book_profile(const Line& l) const;
    LineTally line_tally(const Point& p) const;

    // All lines contained in the surface, sorted by line index.  Built on
    // first use and cached.
    const std::vector<Line>& generators() const;

    // Pullback under x -> Mx: the result contains p exactly when this
    // surface contains Mp.
    HermitianSurface transform(const Projectivity& m) const;

private:
    void require_nondegenerate(const char* op) const;
    void build_generators() const;

    const Field* f_;
    Mat4 a_;
    Mat4 ainv_{};
    unsigned rank_ = 0;
    std::vector<std::uint64_t> points_;

    mutable std::unique_ptr<std::once_flag> gens_once_;
    mutable std::vector<Line> gens_;
};

// diag(1,...,1,0,...,0) with the given rank, 1 <= rank <= 4.  Rank 4 is the
// standard surface sum_i x_i^(q+1) = 0.
HermitianSurface canonical_surface(const Field& f, unsigned rank = 4);

const char* to_string(LineClass c);
const char* to_string(PlaneClass c);

} // namespace hermgeo
