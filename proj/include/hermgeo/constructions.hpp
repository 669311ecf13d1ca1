#pragma once

#include "hermgeo/forms.hpp"
#include "hermgeo/hermitian.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hermgeo {

enum class ConfigKind { Sorensen, SecondBest, GeneratorBook };

/** A plane arrangement cutting a named point count out of the surface.
 *
 *  axis_lines holds the lines the arrangement is built around: the common
 *  secant (Sorensen), the three pairwise intersection lines (SecondBest),
 *  or the common generator (GeneratorBook).  base_points holds the single
 *  common surface point for SecondBest and is empty otherwise.  The
 *  builders fill both the closed-form count and a direct tally over the
 *  surface points; callers compare the two. */
struct Configuration {
    ConfigKind kind = ConfigKind::Sorensen;
    std::vector<Plane> planes;
    std::vector<Line> axis_lines;
    std::vector<Point> base_points;
    Form4 form;                       // product of the planes' linear forms
    std::uint64_t expected_count = 0; // closed-form count
    std::uint64_t measured_count = 0; // direct count over the surface points
};

/** d tangent planes through a common secant line, meeting the surface in
 *  d(q^3+q^2-q) + q + 1 points.  Requires 2 <= d <= q+1, the number of
 *  tangent planes in a secant book.  Picks are first-in-enumeration-order,
 *  or seeded-random when a seed is given; the count is the same either
 *  way. */
Configuration sorensen(const HermitianSurface& s, unsigned d,
                       std::optional<std::uint64_t> seed = std::nullopt);

/** Three tangent planes with secant pairwise meets and a single common
 *  point lying on the surface: 3(q^3+q^2-q) + 1 points, q fewer than
 *  sorensen(s, 3).  Every structural step is asserted and a failure throws
 *  std::logic_error. */
Configuration second_best(const HermitianSurface& s,
                          std::optional<std::uint64_t> seed = std::nullopt);

/** d planes through a common generator: d q^3 + q^2 + 1 points.  Requires
 *  2 <= d <= q^2+1, the full book. */
Configuration generator_book(const HermitianSurface& s, unsigned d,
                             std::optional<std::uint64_t> seed = std::nullopt);

const char* to_string(ConfigKind k);

} // namespace hermgeo
