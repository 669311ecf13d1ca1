#pragma once

#include "hermgeo/hermitian.hpp"
#include "hermgeo/polyform.hpp"

#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace hermgeo {

using Form4 = PolyForm<4>;
using Form3 = PolyForm<3>;
using Form2 = PolyForm<2>;

felem evaluate(const Form4& form, const Point& p);

// Projective zeros in PG(3, q^2).
std::uint64_t zero_count(const Form4& form);

// Zeros of the form among the surface points.
std::uint64_t intersection_count(const Form4& form, const HermitianSurface& s);

// The degree-1 form with the plane's dual coefficients.
Form4 plane_form(const Plane& h);

// Parametrization of a plane used by restrict_to_plane: with pivot k (the
// first nonzero, scaled to 1, coordinate of the dual) the frame vectors are
// b_i = e_{j_i} - h_{j_i} e_k for the three non-pivot coordinates j_0 < j_1
// < j_2, so (y0,y1,y2) -> sum y_i b_i covers the plane.
std::array<Vec4, 3> plane_frame(const Plane& h);

Form3 restrict_to_plane(const Form4& form, const Plane& h);

// Restriction along (y0,y1,y2) -> y0 b0 + y1 b1 + y2 b2.
Form3 restrict_to_span(const Form4& form, const std::array<Vec4, 3>& basis);

// Restriction along (u,v) -> u r0 + v r1 with the line's canonical rows.
Form2 restrict_to_line(const Form4& form, const Line& l);

bool line_on_form(const Form4& form, const Line& l);

// Largest m with form in I(l)^m, i.e. the multiplicity of the line as a
// component; 0 when the form does not vanish on the line.  The form must be
// nonzero.
unsigned line_multiplicity(const Form4& form, const Line& l);

// Exact quotient; throws std::invalid_argument when the plane does not
// divide the form.
Form4 divide_by_plane(const Form4& form, const Plane& h);

// All linear factors with multiplicities, ordered by plane index.
std::vector<std::pair<Plane, unsigned>> linear_factors(const Form4& form);

// G with G(x) = form(Mx).
Form4 pullback(const Form4& form, const Projectivity& m);

Form4 partial_derivative(const Form4& form, int var);

// First-hit version of linear_factors.
bool has_linear_factor(const Form4& form);

// Rational points where the form and all four partials vanish, ascending.
std::vector<Point> singular_points(const Form4& form);

// Lines the form contains with multiplicity >= 2, sorted by line index.
// Any such line consists of singular points, so candidates are the lines
// covering a full quota of singular-point pairs; survivors are confirmed
// by line_multiplicity.
std::vector<Line> double_lines(const Form4& form);

// Uniform draws.  uniform_below avoids modulo bias by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
felem uniform_element(const Field& f, std::mt19937_64& rng);

// Uniformly random nonzero form of the given degree.
Form4 random_form(const Field& f, unsigned degree, std::mt19937_64& rng);

} // namespace hermgeo
