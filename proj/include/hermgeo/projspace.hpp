#pragma once

#include "hermgeo/field.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hermgeo {

/** PG(3, s) over a Field of order s. Points and plane duals are canonical
 *  coordinate 4-tuples (first nonzero entry scaled to 1); lines are 2x4
 *  row-reduced echelon bases, unique per line. Enumeration is by pivot
 *  position, earliest pivot first, trailing coordinates counting up in
 *  element order, so index 0 is [1:0:0:0] (dual V(x0) for planes). */

using Vec4 = std::array<felem, 4>;

struct Point {
    const Field* f = nullptr;
    Vec4 c{};
    friend bool operator==(const Point& a, const Point& b) { return a.f == b.f && a.c == b.c; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) { return a.c < b.c; }
};

struct Plane {
    const Field* f = nullptr;
    Vec4 dual{};
    friend bool operator==(const Plane& a, const Plane& b) { return a.f == b.f && a.dual == b.dual; }
    friend bool operator!=(const Plane& a, const Plane& b) { return !(a == b); }
    friend bool operator<(const Plane& a, const Plane& b) { return a.dual < b.dual; }
};

struct Line {
    const Field* f = nullptr;
    std::array<Vec4, 2> rows{};
    friend bool operator==(const Line& a, const Line& b) { return a.f == b.f && a.rows == b.rows; }
    friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }
    friend bool operator<(const Line& a, const Line& b) { return a.rows < b.rows; }
};

/** Invertible 4x4 matrix acting on points as column vectors, y = M x. */
struct Projectivity {
    const Field* f = nullptr;
    std::array<Vec4, 4> m{}; // m[i][j] = row i, column j
};

// --- counts and index arithmetic ------------------------------------------

std::uint64_t point_count(const Field& f);
std::uint64_t plane_count(const Field& f);
std::uint64_t line_count(const Field& f);

Point point_at(const Field& f, std::uint64_t idx);
std::uint64_t point_index(const Point& p);
Plane plane_at(const Field& f, std::uint64_t idx);
std::uint64_t plane_index(const Plane& pl);
Line line_at(const Field& f, std::uint64_t idx);
std::uint64_t line_index(const Line& l);

// --- construction ----------------------------------------------------------

Point make_point(const Field& f, const Vec4& raw);     // canonicalizes, rejects zero
Plane make_plane(const Field& f, const Vec4& raw_dual);
Line line_through(const Point& p, const Point& q);     // rejects p == q
Line make_line(const Field& f, const Vec4& r0, const Vec4& r1);

// --- incidence --------------------------------------------------------------

bool point_on_plane(const Point& p, const Plane& pl);
bool point_on_line(const Point& p, const Line& l);
bool line_in_plane(const Line& l, const Plane& pl);
std::vector<Point> points_on_line(const Line& l);      // s+1 points, sorted

Plane plane_through(const Line& l, const Point& p);    // rejects p on l
Line meet_planes(const Plane& a, const Plane& b);      // rejects a == b
bool lines_meet(const Line& a, const Line& b);         // false means skew
std::optional<Point> meet_lines(const Line& a, const Line& b);

/** All s+1 planes containing l, sorted by canonical dual. */
std::vector<Plane> book_of_planes(const Line& l);

// --- enumeration ------------------------------------------------------------

// fn returns false to stop early
void for_each_point(const Field& f, const std::function<bool(const Point&)>& fn);
void for_each_plane(const Field& f, const std::function<bool(const Plane&)>& fn);
void for_each_line(const Field& f, const std::function<bool(const Line&)>& fn);

/** The s^2+s+1 lines through p, each exactly once. */
void for_each_line_through(const Point& p, const std::function<bool(const Line&)>& fn);

// --- projectivities ----------------------------------------------------------

Projectivity identity_map(const Field& f);
Point apply(const Projectivity& m, const Point& p);
Line apply(const Projectivity& m, const Line& l);
Projectivity compose(const Projectivity& a, const Projectivity& b); // a after b
Projectivity inverse(const Projectivity& m);
felem det(const Projectivity& m);
Plane image_plane(const Projectivity& m, const Plane& pl); // image of V(dual) under m

/** A projectivity sending V(x2,x3) onto l, and V(x0,x1) onto l2 when given;
 *  l2 must be skew to l. Used to move a line into normal position via
 *  pullback. */
Projectivity adapted_coords(const Line& l, const std::optional<Line>& l2 = std::nullopt);

// --- small exact linear algebra ----------------------------------------------

// in-place row reduction to canonical RREF; returns rank
unsigned rref(const Field& f, std::vector<Vec4>& rows);
// basis of { x : r . x = 0 for all given rows }, returned in RREF
std::vector<Vec4> null_space(const Field& f, const std::vector<Vec4>& rows);

std::string to_string(const Point& p);
std::string to_string(const Plane& pl);
std::string to_string(const Line& l);

} // namespace hermgeo
