#include "hermgeo/constructions.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace hermgeo {

namespace {

std::uint64_t count_on_planes(const HermitianSurface& s, const std::vector<Plane>& planes) {
    const Field& f = s.field();
    std::uint64_t n = 0;
    for (const std::uint64_t idx : s.point_indices()) {
        const Point p = point_at(f, idx);
        for (const Plane& h : planes) {
            felem dot = 0;
            for (int i = 0; i < 4; ++i) dot = f.add(dot, f.mul(h.dual[i], p.c[i]));
            if (dot == 0) {
                ++n;
                break;
            }
        }
    }
    return n;
}

Configuration finish(const HermitianSurface& s, ConfigKind kind, std::vector<Plane> planes,
                     std::vector<Line> axis_lines, std::vector<Point> base_points,
                     std::uint64_t expected) {
    Configuration c{kind,
                    std::move(planes),
                    std::move(axis_lines),
                    std::move(base_points),
                    Form4(s.field(), 1),
                    expected,
                    0};
    c.form = plane_form(c.planes.front());
    for (std::size_t i = 1; i < c.planes.size(); ++i) c.form = c.form * plane_form(c.planes[i]);
    c.measured_count = count_on_planes(s, c.planes);
    return c;
}

// Optional per-construction RNG: absent means enumeration-order picks.
struct Picker {
    std::optional<std::mt19937_64> rng;

    explicit Picker(std::optional<std::uint64_t> seed) {
        if (seed) rng.emplace(*seed);
    }
    // index into a pool of n candidates; 0 in deterministic mode
    std::uint64_t index(std::uint64_t n) { return rng ? uniform_below(*rng, n) : 0; }
    // k distinct indices below n, ascending in deterministic mode
    std::vector<std::uint64_t> indices(std::uint64_t k, std::uint64_t n) {
        std::vector<std::uint64_t> pool(n);
        for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
        if (rng)
            for (std::uint64_t i = 0; i < k; ++i)
                std::swap(pool[i], pool[i + uniform_below(*rng, n - i)]);
        pool.resize(k);
        return pool;
    }
};

// A secant through a surface point; deterministic mode takes the lowest
// indexed base point and partner, seeded mode draws pairs until one spans
// a secant.
Line pick_secant(const HermitianSurface& s, Picker& pick) {
    const Field& f = s.field();
    const auto& pts = s.point_indices();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Point a = point_at(f, pts.at(pick.index(pts.size())));
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const Point b = point_at(f, pts[pick.rng ? pick.index(pts.size()) : j]);
            if (b == a) continue;
            const Line l = line_through(a, b);
            if (s.classify_line(l) == LineClass::Secant) return l;
            if (pick.rng) break; // one partner per attempt, then redraw both
        }
        if (!pick.rng) break;
    }
    throw std::logic_error("pick_secant: no secant found through the base point");
}

// The k-th generator through a surface point, in line enumeration order.
// Generators through p all lie in its polar plane, so only that pencil is
// scanned.
Line generator_through(const HermitianSurface& s, const Point& p, std::uint64_t k) {
    const Plane polar = s.polar_plane(p);
    Line found;
    std::uint64_t seen = 0;
    bool ok = false;
    for_each_line_through(p, [&](const Line& l) {
        if (!line_in_plane(l, polar) || s.classify_line(l) != LineClass::Generator)
            return true;
        if (seen++ < k) return true;
        found = l;
        ok = true;
        return false;
    });
    if (!ok)
        throw std::logic_error("generator_through: fewer than " + std::to_string(k + 1) +
                               " generators through the point");
    return found;
}

// The plane spanned by two distinct lines through a common point.
Plane span_of(const Line& a, const Line& b) {
    for (const Point& x : points_on_line(b))
        if (!point_on_line(x, a)) return plane_through(a, x);
    throw std::logic_error("span_of: coincident lines");
}

} // namespace

Configuration sorensen(const HermitianSurface& s, unsigned d,
                       std::optional<std::uint64_t> seed) {
    const std::uint64_t q = s.field().q();
    if (d < 2 || d > q + 1)
        throw std::invalid_argument("sorensen: d must be in [2, q+1], got " + std::to_string(d));
    Picker pick(seed);
    const Line l = pick_secant(s, pick);
    std::vector<Plane> tangent;
    for (const Plane& h : book_of_planes(l))
        if (s.classify_plane(h) == PlaneClass::Tangent) tangent.push_back(h);
    if (tangent.size() < d)
        throw std::logic_error("sorensen: secant book has too few tangent planes");
    std::vector<Plane> picked;
    for (const std::uint64_t i : pick.indices(d, tangent.size()))
        picked.push_back(tangent[i]);
    return finish(s, ConfigKind::Sorensen, std::move(picked), {l}, {},
                  d * (q * q * q + q * q - q) + q + 1);
}

Configuration second_best(const HermitianSurface& s, std::optional<std::uint64_t> seed) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    Picker pick(seed);
    const Point p = point_at(f, s.point_indices().at(pick.index(s.num_points())));
    const Plane tang = s.polar_plane(p);
    const auto gk = pick.indices(3, q + 1);
    const Line g1 = generator_through(s, p, gk[0]);
    const Line g2 = generator_through(s, p, gk[1]);
    const Line g3 = generator_through(s, p, gk[2]);

    // any line through p leaving the tangent plane is a secant
    std::vector<Line> off_plane;
    for_each_line_through(p, [&](const Line& l) {
        if (!line_in_plane(l, tang)) off_plane.push_back(l);
        // deterministic mode needs only the first hit; seeded mode pools all
        return pick.rng.has_value() || off_plane.empty();
    });
    if (off_plane.empty())
        throw std::logic_error("second_best: no line through the base point leaves its "
                               "tangent plane");
    const Line lsec = off_plane[pick.index(off_plane.size())];
    if (s.classify_line(lsec) != LineClass::Secant)
        throw std::logic_error("second_best: off-plane pencil line is not a secant");

    const Plane pi1 = span_of(lsec, g1);
    const Plane pi2 = span_of(lsec, g2);

    // a further line of pi1 through p: not g1, not the secant, and not
    // inside the tangent plane (the last exclusion is implied by the first,
    // since pi1 meets the tangent plane exactly in g1, but is checked)
    std::vector<Line> third;
    for_each_line_through(p, [&](const Line& l) {
        if (line_in_plane(l, pi1) && l != g1 && l != lsec && !line_in_plane(l, tang))
            third.push_back(l);
        return pick.rng.has_value() || third.empty();
    });
    if (third.empty())
        throw std::logic_error("second_best: no admissible third line in the first plane; "
                               "pencil of q^2+1 lines exhausted");
    const Line l13 = third[pick.index(third.size())];
    if (s.classify_line(l13) != LineClass::Secant)
        throw std::logic_error("second_best: third line is not a secant");
    const Plane pi3 = span_of(l13, g3);

    // structural guarantees behind the count: pairwise secant meets and a
    // single common point, on the surface
    const Line m12 = meet_planes(pi1, pi2);
    const Line m13 = meet_planes(pi1, pi3);
    const Line m23 = meet_planes(pi2, pi3);
    for (const Line* m : {&m12, &m13, &m23})
        if (s.classify_line(*m) != LineClass::Secant)
            throw std::logic_error("second_best: non-secant pairwise meet");
    const auto c1 = meet_lines(m12, m13);
    const auto c2 = meet_lines(m12, m23);
    if (!c1 || !c2 || *c1 != p || *c2 != p || !s.contains(p))
        throw std::logic_error("second_best: planes do not meet in the base point");
    for (const Plane* h : {&pi1, &pi2, &pi3})
        if (s.classify_plane(*h) != PlaneClass::Tangent)
            throw std::logic_error("second_best: non-tangent plane");

    return finish(s, ConfigKind::SecondBest, {pi1, pi2, pi3}, {m12, m13, m23}, {p},
                  3 * (q * q * q + q * q - q) + 1);
}

Configuration generator_book(const HermitianSurface& s, unsigned d,
                             std::optional<std::uint64_t> seed) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    if (d < 2 || d > f.order() + 1)
        throw std::invalid_argument("generator_book: d must be in [2, q^2+1], got " +
                                    std::to_string(d));
    Picker pick(seed);
    const Point p = point_at(f, s.point_indices().at(pick.index(s.num_points())));
    const Line gen = generator_through(s, p, pick.index(q + 1));
    const std::vector<Plane> book = book_of_planes(gen);
    std::vector<Plane> picked;
    for (const std::uint64_t i : pick.indices(d, book.size()))
        picked.push_back(book[i]);
    return finish(s, ConfigKind::GeneratorBook, std::move(picked), {gen}, {},
                  d * q * q * q + q * q + 1);
}

const char* to_string(ConfigKind k) {
    switch (k) {
    case ConfigKind::Sorensen: return "sorensen";
    case ConfigKind::SecondBest: return "second-best";
    case ConfigKind::GeneratorBook: return "generator-book";
    }
    throw std::logic_error("to_string: unknown ConfigKind");
}

} // namespace hermgeo
