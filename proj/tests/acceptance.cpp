// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion owns its wall-clock budget and re-derives its expected
// values from scratch rather than trusting the unit suites.

#include "hermgeo/json_io.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

using namespace hermgeo;

namespace {

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion bodies -------------------------------------------------------

void audit_q2() {
    const StructureReport r = structure_audit(canonical_surface(Field(2)));
    expect(r.mode == "full", "q=2 audit must enumerate");
    expect(r.violations.empty(), "q=2 audit reported violations");
    expect(r.lines_checked == 357, "expected 357 lines");
    expect(r.planes_checked == 85, "expected 85 planes");
    const std::map<std::uint64_t, std::uint64_t> lines{{1, 90}, {3, 240}, {5, 27}};
    expect(r.line_point_spectrum == lines, "line point spectrum off");
    const std::map<std::uint64_t, std::uint64_t> planes{{9, 40}, {13, 45}};
    expect(r.plane_point_spectrum == planes, "plane point spectrum off");
    const std::array<std::uint64_t, 2> gen{5, 0}, tan{1, 4}, sec{3, 2};
    expect(r.book_profiles.at("generator") == gen, "generator book profile off");
    expect(r.book_profiles.at("tangent") == tan, "tangent book profile off");
    expect(r.book_profiles.at("secant") == sec, "secant book profile off");
}

void audit_q3() {
    const StructureReport r = structure_audit(canonical_surface(Field(3)));
    expect(r.mode == "full", "q=3 audit must enumerate");
    expect(r.violations.empty(), "q=3 audit reported violations");
    expect(r.lines_checked == 7462, "expected 7462 lines");
    expect(r.planes_checked == 820, "expected 820 planes");
    expect(r.surface_points == 280, "expected 280 surface points");
}

void surface_sizes() {
    const std::map<std::uint32_t, std::uint64_t> sizes{
        {2, 45}, {3, 280}, {4, 1105}, {8, 33345}};
    for (const auto& [q, n] : sizes) {
        const Field f(q);
        const HermitianSurface s = canonical_surface(f);
        expect(s.num_points() == n,
               "q=" + std::to_string(q) + " counted " + std::to_string(s.num_points()));
        expect(s.point_indices().size() == n, "enumeration disagrees with num_points");
        const std::uint64_t closed =
            (std::uint64_t(q) * q * q + 1) * (std::uint64_t(q) * q + 1);
        expect(n == closed, "closed form disagrees");
    }
}

void quadric_spectrum() {
    const SurveyReport r = exhaustive_quadrics(canonical_surface(Field(2)), 1);
    expect(r.sample_size == 349525, "expected 349525 quadrics");
    expect(r.max_count == 23, "maximum must be 23");
    expect(r.histogram.count(22) == 0, "22 must be absent");
    std::uint64_t mass = 0;
    for (const auto& [count, freq] : r.histogram) mass += freq;
    expect(mass == 349525, "histogram mass off");
}

void sorensen_counts() {
    const std::array<std::array<std::uint64_t, 3>, 4> rows{
        {{2, 2, 23}, {3, 3, 103}, {4, 3, 233}, {8, 3, 1713}}};
    for (const auto& [q, d, value] : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        const Field f(static_cast<std::uint32_t>(q));
        const Configuration c = sorensen(canonical_surface(f), static_cast<unsigned>(d));
        expect(c.measured_count == value && c.expected_count == value,
               "sorensen q=" + std::to_string(q) + " counted " +
                   std::to_string(c.measured_count) + ", expected " +
                   std::to_string(value));
        expect(seconds_since(t0) < 10.0, "sorensen q=" + std::to_string(q) + " too slow");
    }
}

void second_best_counts() {
    for (const auto& [q, value] :
         std::map<std::uint32_t, std::uint64_t>{{3, 100}, {8, 1705}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const Configuration c = second_best(canonical_surface(Field(q)));
        expect(c.measured_count == value && c.expected_count == value,
               "second-best q=" + std::to_string(q) + " counted " +
                   std::to_string(c.measured_count));
        expect(seconds_since(t0) < 10.0, "second-best q=" + std::to_string(q) + " too slow");
    }
}

void generator_book_counts() {
    for (const auto& [q, value] : std::map<std::uint32_t, std::uint64_t>{{2, 29}, {3, 91}}) {
        const Configuration c = generator_book(canonical_surface(Field(q)), 3);
        expect(c.measured_count == value && c.expected_count == value,
               "generator-book q=" + std::to_string(q) + " counted " +
                   std::to_string(c.measured_count));
    }
}

void triple_surveys() {
    for (const std::uint32_t q : {2u, 3u}) {
        const SurveyReport r = elx_survey(canonical_surface(Field(q)), 1);
        const std::uint64_t q3 = std::uint64_t(q) * q * q, q2 = std::uint64_t(q) * q;
        const std::uint64_t forbidden = 3 * (q3 + q2 - q) + 1;
        expect(r.histogram.count(forbidden) == 0,
               std::to_string(forbidden) + " occurred at q=" + std::to_string(q));
        expect(r.histogram.count(forbidden + q) == 1,
               std::to_string(forbidden + q) + " missing at q=" + std::to_string(q));
        expect(r.histogram.count(3 * q3 + q2 + 1) == 1,
               "generator value missing at q=" + std::to_string(q));
    }
}

void bound_suite() {
    SamplerSpec spec;
    spec.seed = 2026;
    spec.samples = 10000;
    const SurveyReport r3 = cubic_survey(canonical_surface(Field(3)), spec, 1);
    expect(r3.violations.empty(), "q=3 survey kept violations");
    expect(r3.histogram.at(103) >= 1, "q=3 extremal value never sampled");

    spec.samples = 1000;
    const SurveyReport r8 = cubic_survey(canonical_surface(Field(8)), spec, 1);
    expect(r8.violations.empty(), "q=8 survey kept violations");
    expect(r8.max_count == 3 * (512 + 64 - 8) + 8 + 1, "q=8 maximum off");
}

// cubics through V(x2,x3), redrawn until the degeneracy invariant is nonzero
void tell_suite() {
    for (const std::uint32_t q : {3u, 4u}) {
        const Field f(q);
        const bool even = q % 2 == 0;
        const Line axis = make_line(f, {1, 0, 0, 0}, {0, 1, 0, 0});
        std::mt19937_64 rng(97 + q);
        int done = 0;
        while (done < 1000) {
            Form4 g = random_form(f, 3, rng);
            const Form4 drawn = g;
            for (const auto& [e, c] : drawn.terms())
                if (e[2] == 0 && e[3] == 0) g.set_coeff(e, 0);
            if (g.is_zero()) continue;
            const CubicNF nf = normal_form(g, axis);
            if (degeneracy_invariant(nf).is_zero()) continue;
            if (even && !cubic_is_irreducible(g)) continue;
            const TEllReport t = t_ell(g, axis);
            expect(t.invariant_nonzero, "t_ell missed the nonzero invariant");
            expect(t.members.size() <= 5,
                   "|T_l| = " + std::to_string(t.members.size()) + " at q=" +
                       std::to_string(q));
            ++done;
        }
    }
}

// invariant-zero cubics through the skew pair V(x2,x3), V(x0,x1)
void dichotomy_suite() {
    for (const std::uint32_t q : {3u, 4u}) {
        const Field f(q);
        const Line l1 = make_line(f, {1, 0, 0, 0}, {0, 1, 0, 0});
        const Line l2 = make_line(f, {0, 0, 1, 0}, {0, 0, 0, 1});
        std::mt19937_64 rng(131 + q);
        const auto coeff = [&] { return static_cast<felem>(uniform_below(rng, f.order())); };
        int done = 0;
        bool saw_reducible = false, saw_double = false;
        while (done < 1000) {
            Form4 g(f, 3);
            if (done % 2 == 0) {
                // quadratic in the ideal of l1 with span(x0,x1) coefficients:
                // the normal form has A..E concentrated in D, E, so the
                // invariant vanishes identically
                for (const std::uint8_t v : {std::uint8_t{0}, std::uint8_t{1}})
                    for (int m = 0; m < 3; ++m) {
                        Form4::Exponents e{};
                        e[v] = 1;
                        e[2] = static_cast<std::uint8_t>(2 - m);
                        e[3] = static_cast<std::uint8_t>(m);
                        g.set_coeff(e, coeff());
                    }
                if (g.is_zero()) continue;
            } else {
                // a plane through l1 times a quadric through l2, kept only
                // when the invariant happens to vanish
                Form4 plane(f, 1);
                plane.set_coeff({0, 0, 1, 0}, coeff());
                plane.set_coeff({0, 0, 0, 1}, coeff());
                if (plane.is_zero()) continue;
                Form4 quad = random_form(f, 2, rng);
                quad.set_coeff({0, 0, 2, 0}, 0);
                quad.set_coeff({0, 0, 1, 1}, 0);
                quad.set_coeff({0, 0, 0, 2}, 0);
                if (quad.is_zero()) continue;
                g = plane * quad;
            }
            const Dichotomy d = dichotomy_check(g, l1, l2); // throws when unresolved
            if (d == Dichotomy::InvariantNonzero) continue;
            expect(degeneracy_invariant(normal_form(g, l1)).is_zero(),
                   "dichotomy filter disagrees with the invariant");
            saw_reducible = saw_reducible || d == Dichotomy::Reducible;
            saw_double = saw_double || d == Dichotomy::DoubleLine;
            ++done;
        }
        expect(saw_reducible, "no reducible verdict at q=" + std::to_string(q));
        expect(saw_double, "no double-line verdict at q=" + std::to_string(q));
    }
}

void determinism() {
    const Field f3(3);
    const HermitianSurface s3 = canonical_surface(f3);
    SamplerSpec spec;
    spec.seed = 11;
    spec.samples = 60;
    const std::string c1 = to_json(cubic_survey(s3, spec, 1)).dump(2);
    expect(c1 == to_json(cubic_survey(s3, spec, 1)).dump(2), "cubic survey rerun differs");
    expect(c1 == to_json(cubic_survey(s3, spec, 3)).dump(2), "cubic survey jobs differ");

    const Field f2(2);
    const HermitianSurface s2 = canonical_surface(f2);
    const std::string e1 = to_json(elx_survey(s2, 1)).dump(2);
    expect(e1 == to_json(elx_survey(s2, 4)).dump(2), "triple survey jobs differ");
    const std::string q1 = to_json(exhaustive_quadrics(s2, 1)).dump(2);
    expect(q1 == to_json(exhaustive_quadrics(s2, 2)).dump(2), "quadric scan jobs differ");

    const Field f4(4);
    const HermitianSurface s4 = canonical_surface(f4);
    const std::string a1 = to_json(structure_audit(s4, 3, 150)).dump(2);
    expect(a1 == to_json(structure_audit(s4, 3, 150)).dump(2), "sampled audit rerun differs");
}

struct Criterion {
    const char* label;
    void (*body)();
    double budget; // seconds
};

} // namespace

int main() {
    const Criterion plan[] = {
        {"structure audit q=2", audit_q2, 1.0},
        {"structure audit q=3", audit_q3, 30.0},
        {"surface sizes by enumeration", surface_sizes, 120.0},
        {"exhaustive quadric spectrum q=2", quadric_spectrum, 300.0},
        {"sorensen construction counts", sorensen_counts, 40.0},
        {"second-best construction counts", second_best_counts, 20.0},
        {"generator-book construction counts", generator_book_counts, 20.0},
        {"plane triple surveys q=2,3", triple_surveys, 600.0},
        {"conditional bound suite q=3,8", bound_suite, 1800.0},
        {"T_l section scan suite", tell_suite, 600.0},
        {"dichotomy resolution suite", dichotomy_suite, 600.0},
        {"determinism and jobs invariance", determinism, 600.0},
    };

    int failures = 0;
    int n = 0;
    for (const Criterion& c : plan) {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.body();
            if (seconds_since(t0) > c.budget) {
                verdict = "FAIL";
                detail = "exceeded the " + std::to_string(c.budget) + "s budget";
            }
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
        }
        if (verdict == "FAIL") ++failures;
        std::printf("criterion %2d %s %-38s (%.2fs)%s%s\n", n, verdict.c_str(), c.label,
                    seconds_since(t0), detail.empty() ? "" : ": ", detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
