#pragma once

#include "hermgeo/constructions.hpp"
#include "hermgeo/cubicnf.hpp"
#include "hermgeo/forms.hpp"
#include "hermgeo/hermitian.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hermgeo {

/** Whether the normal-form invariant (det M_F in odd characteristic, the
 *  quintic in even) vanishes.  NotApplicable when the cubic contains no two
 *  skew generators, so no normal position exists to evaluate it in. */
enum class InvariantStatus { NotApplicable, Zero, Nonzero };

/** Everything the case split over cubics wants to know about one form.  The
 *  invariant, when applicable, is taken with respect to the first skew pair
 *  of contained generators in enumeration order. */
struct CubicProfile {
    bool reducible = false;      // the cubic has a linear factor
    bool contains_plane = false; // equivalent for cubics; kept for reports
    std::vector<Plane> planes;   // distinct linear-factor planes
    bool all_linear_factors_tangent = true; // vacuously true without factors
    std::vector<Line> generators_contained;
    bool has_skew_generator_pair = false;
    std::vector<Line> double_lines;
    InvariantStatus invariant_status = InvariantStatus::NotApplicable;
    std::uint64_t intersection_count = 0;
};

/** Classifies the cubic against the surface: linear factors and their
 *  tangency, contained generators with a skew-pair scan, double lines, the
 *  normal-form invariant, and the exact intersection count. */
CubicProfile profile_cubic(const Form4& cubic, const HermitianSurface& s);

/** One conditional bound verdict.  detail names the binding branch when a
 *  bound is a maximum of constituents, or notes that the extremal value was
 *  attained. */
struct BoundCheck {
    std::string lemma;
    std::uint64_t bound = 0;
    bool pass = false;
    std::string detail;
};

/** Checks the profile's intersection count against every bound whose
 *  hypotheses the profile satisfies.  Lemma ids: "nogen" (no generator,
 *  q > 2), "noskew" (a generator, no skew pair, no plane), "nontan" (a
 *  non-tangent plane), "gentang" (two planes through a contained
 *  generator), "reducible" (all linear factors tangent), "doubleline"
 *  (irreducible with a double line).  The bounds assume d <= q, so the
 *  list is empty when d > q.  Failures are data, not errors. */
std::vector<BoundCheck> assert_conditional_bounds(const CubicProfile& profile,
                                                  std::uint64_t q, unsigned d = 3);

/** Aggregate outcome of one survey.  histogram maps an intersection count
 *  to its frequency and always sums to sample_size.  witnesses holds the
 *  forms achieving max_count in canonical enumeration order, truncated to
 *  survey_witness_cap entries.  violations must be empty; the surveys
 *  throw std::runtime_error after filling it otherwise.  notes carries
 *  report-only observations that are deliberately not asserted. */
struct SurveyReport {
    std::string survey;
    std::uint64_t q = 0;
    unsigned d = 0;
    std::string mode; // "exhaustive" or "random"
    std::uint64_t seed = 0;
    std::uint64_t sample_size = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t max_count = 0;
    std::vector<Form4> witnesses;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
};

inline constexpr std::size_t survey_witness_cap = 16;

/** Counts the surface intersection of every projective quadric (only
 *  feasible at q = 2: 349,525 forms).  Asserts the maximum is 23, that 22
 *  never occurs, and that every maximizer is a product of two tangent
 *  planes through a secant. */
SurveyReport exhaustive_quadrics(const HermitianSurface& s, unsigned jobs = 1);

/** Parameters for cubic_survey.  samples counts every surveyed cubic:
 *  one fifth are plane triples (the first three being the named extremal
 *  configurations), one fifth are plane-times-quadric products, and the
 *  rest are random cubics redrawn until irreducible. */
struct SamplerSpec {
    std::uint64_t seed = 0;
    std::uint64_t samples = 1000; // at least 15
    bool strict_conjecture = false;
};

/** Profiles seeded cubics and checks each against its conditional bounds.
 *  For q >= 8 (or under strict_conjecture) also asserts that no count
 *  lands strictly between 3(q^3+q^2-q)+1 and 3(q^3+q^2-q)+q+1 and that
 *  none exceeds the latter; for 3 <= q < 8 the same dichotomy is reported
 *  in notes only. */
SurveyReport cubic_survey(const HermitianSurface& s, const SamplerSpec& spec,
                          unsigned jobs = 1);

/** Exhausts all unordered triples of distinct planes through a common
 *  line.  Asserts 3(q^3+q^2-q)+1 never occurs, that all-tangent triples
 *  through a secant hit exactly 3(q^3+q^2-q)+q+1, that generator-axis
 *  triples hit exactly 3q^3+q^2+1, and that everything else stays at or
 *  below 3q^3+2q^2+1. */
SurveyReport elx_survey(const HermitianSurface& s, unsigned jobs = 1);

/** Replay of the classical incidence facts.  Full enumeration for q <= 3;
 *  a seeded sample of lines, planes, points and plane pairs otherwise. */
struct StructureReport {
    std::uint64_t q = 0;
    std::string mode; // "full" or "sampled"
    std::uint64_t seed = 0;
    std::uint64_t surface_points = 0;
    std::uint64_t lines_checked = 0;
    std::uint64_t planes_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::map<std::string, std::uint64_t> line_census;  // by line class
    std::map<std::uint64_t, std::uint64_t> line_point_spectrum;
    std::map<std::string, std::uint64_t> plane_census; // by plane class
    std::map<std::uint64_t, std::uint64_t> plane_point_spectrum;
    // axis class -> (tangent, non-tangent) book profile, identical for
    // every line of the class
    std::map<std::string, std::array<std::uint64_t, 2>> book_profiles;
    std::vector<std::string> violations;
};

/** Checks line classes against their point tallies, plane classes against
 *  their section sizes, book profiles and tangency touch points per axis
 *  class, the polarity bijection, and the excluded meet classes for plane
 *  pairs.  Violations are data; exceptions from degenerate input
 *  propagate. */
StructureReport structure_audit(const HermitianSurface& s, std::uint64_t seed = 0,
                                std::uint64_t samples = 2000);

const char* to_string(InvariantStatus st);

} // namespace hermgeo
