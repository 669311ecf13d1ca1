#include "hermgeo/forms.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hermgeo {

namespace {

int pivot_of(const Vec4& v) {
    for (int i = 0; i < 4; ++i)
        if (v[i] != 0) return i;
    throw std::invalid_argument("zero vector has no pivot");
}

template <int N>
PolyForm<N> substitute(const Form4& form, const std::array<PolyForm<N>, 4>& lin) {
    const Field& f = form.field();
    PolyForm<N> out(f, form.degree());
    for (const auto& [e, c] : form.terms()) {
        PolyForm<N> t(f, 0);
        t.set_coeff({}, c);
        for (int i = 0; i < 4; ++i)
            for (int rep = 0; rep < e[i]; ++rep) t = t * lin[i];
        out += t;
    }
    return out;
}

} // namespace

felem evaluate(const Form4& form, const Point& p) { return form.evaluate(p.c); }

std::uint64_t zero_count(const Form4& form) {
    const Field& f = form.field();
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < point_count(f); ++i)
        if (form.evaluate(point_at(f, i).c) == 0) ++n;
    return n;
}

std::uint64_t intersection_count(const Form4& form, const HermitianSurface& s) {
    const Field& f = s.field();
    if (&form.field() != &f)
        throw std::invalid_argument("intersection_count: field mismatch");
    std::uint64_t n = 0;
    for (const std::uint64_t i : s.point_indices())
        if (form.evaluate(point_at(f, i).c) == 0) ++n;
    return n;
}

Form4 plane_form(const Plane& h) {
    Form4 out(*h.f, 1);
    for (int i = 0; i < 4; ++i) {
        Form4::Exponents e{};
        e[i] = 1;
        out.set_coeff(e, h.dual[i]);
    }
    return out;
}

std::array<Vec4, 3> plane_frame(const Plane& h) {
    const Field& f = *h.f;
    const int k = pivot_of(h.dual);
    std::array<Vec4, 3> frame{};
    int row = 0;
    for (int j = 0; j < 4; ++j) {
        if (j == k) continue;
        frame[row][j] = 1;
        frame[row][k] = f.neg(h.dual[j]);
        ++row;
    }
    return frame;
}

Form3 restrict_to_span(const Form4& form, const std::array<Vec4, 3>& basis) {
    const Field& f = form.field();
    std::array<Form3, 4> lin = {Form3(f, 1), Form3(f, 1), Form3(f, 1), Form3(f, 1)};
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 3; ++m) {
            Form3::Exponents e{};
            e[m] = 1;
            lin[i].add_term(e, basis[m][i]);
        }
    return substitute<3>(form, lin);
}

Form3 restrict_to_plane(const Form4& form, const Plane& h) {
    return restrict_to_span(form, plane_frame(h));
}

Form2 restrict_to_line(const Form4& form, const Line& l) {
    const Field& f = form.field();
    std::array<Form2, 4> lin = {Form2(f, 1), Form2(f, 1), Form2(f, 1), Form2(f, 1)};
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 2; ++m) {
            Form2::Exponents e{};
            e[m] = 1;
            lin[i].add_term(e, l.rows[m][i]);
        }
    return substitute<2>(form, lin);
}

bool line_on_form(const Form4& form, const Line& l) {
    return restrict_to_line(form, l).is_zero();
}

unsigned line_multiplicity(const Form4& form, const Line& l) {
    if (form.is_zero()) throw std::invalid_argument("line_multiplicity: zero form");
    // In coordinates adapted to the line it becomes V(x2, x3), where the
    // power of the ideal (x2, x3) can be read off the exponents.
    const Form4 g = pullback(form, adapted_coords(l));
    unsigned m = form.degree();
    for (const auto& [e, c] : g.terms()) {
        (void)c;
        m = std::min(m, static_cast<unsigned>(e[2]) + e[3]);
    }
    return m;
}

Form4 divide_by_plane(const Form4& form, const Plane& h) {
    const Field& f = form.field();
    if (form.degree() < 1)
        throw std::invalid_argument("divide_by_plane: form of degree 0");
    const int k = pivot_of(h.dual);
    const Form4 hf = plane_form(h);
    Form4 q(f, form.degree() - 1);
    Form4 r = form;
    for (unsigned d = form.degree(); d >= 1; --d) {
        Form4 chunk(f, form.degree() - 1);
        for (const auto& [e, c] : r.terms()) {
            if (e[static_cast<std::size_t>(k)] != static_cast<std::uint8_t>(d)) continue;
            Form4::Exponents e2 = e;
            --e2[static_cast<std::size_t>(k)];
            chunk.set_coeff(e2, c);
        }
        if (chunk.is_zero()) continue;
        q += chunk;
        r -= hf * chunk;
    }
    if (!r.is_zero())
        throw std::invalid_argument("divide_by_plane: the plane does not divide the form");
    return q;
}

namespace {

// Points of the probe line where the form vanishes.  The restriction is a
// nonzero binary form, so there are at most degree() of them.
std::vector<Point> restriction_roots(const Form4& form, const Line& l) {
    const Field& f = form.field();
    const Form2 r = restrict_to_line(form, l);
    std::vector<Point> out;
    const auto at = [&](felem u, felem v) {
        Vec4 x{};
        for (int j = 0; j < 4; ++j)
            x[j] = f.add(f.mul(u, l.rows[0][j]), f.mul(v, l.rows[1][j]));
        return make_point(f, x);
    };
    if (r.evaluate({0, 1}) == 0) out.push_back(at(0, 1));
    for (std::uint32_t v = 0; v < f.order(); ++v)
        if (r.evaluate({1, static_cast<felem>(v)}) == 0)
            out.push_back(at(1, static_cast<felem>(v)));
    return out;
}

// Candidate planes for linear factors, sorted by plane index.  A factor
// plane meets each of three pairwise skew probe lines chosen off the zero
// locus in exactly one point, which must be a root of the restriction
// there, so the factor is spanned by a root triple (or lies in the book of
// a collinear one).  No candidates means no factor, and in particular a
// rootless probe is a proof of irreducibility.
std::vector<Plane> factor_candidates(const Form4& form) {
    const Field& f = form.field();
    std::vector<Line> probes;
    const std::uint64_t nlines = line_count(f);
    for (std::uint64_t li = 0; li < nlines && probes.size() < 3; ++li) {
        const Line l = line_at(f, li);
        bool skew = true;
        for (const Line& p : probes)
            if (lines_meet(p, l)) skew = false;
        if (!skew || line_on_form(form, l)) continue;
        probes.push_back(l);
    }
    if (probes.size() < 3)
        throw std::logic_error("factor_candidates: probe lines exhausted");

    std::array<std::vector<Point>, 3> roots;
    for (int i = 0; i < 3; ++i) {
        roots[i] = restriction_roots(form, probes[i]);
        if (roots[i].empty()) return {};
    }
    std::set<Plane> seen;
    for (const Point& a : roots[0])
        for (const Point& b : roots[1]) {
            const Line ab = line_through(a, b);
            for (const Point& c : roots[2]) {
                if (point_on_line(c, ab))
                    for (const Plane& h : book_of_planes(ab)) seen.insert(h);
                else
                    seen.insert(plane_through(ab, c));
            }
        }
    std::vector<Plane> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const Plane& a, const Plane& b) {
        return plane_index(a) < plane_index(b);
    });
    return out;
}

} // namespace

std::vector<std::pair<Plane, unsigned>> linear_factors(const Form4& form) {
    if (form.is_zero()) throw std::invalid_argument("linear_factors: zero form");
    if (form.degree() == 0) return {};
    std::vector<std::pair<Plane, unsigned>> out;
    for (const Plane& h : factor_candidates(form)) {
        if (!restrict_to_plane(form, h).is_zero()) continue;
        unsigned mult = 1;
        Form4 g = divide_by_plane(form, h);
        while (g.degree() >= 1 && restrict_to_plane(g, h).is_zero()) {
            g = divide_by_plane(g, h);
            ++mult;
        }
        out.emplace_back(h, mult);
    }
    return out;
}

bool has_linear_factor(const Form4& form) {
    if (form.is_zero()) throw std::invalid_argument("has_linear_factor: zero form");
    if (form.degree() == 0) return false;
    for (const Plane& h : factor_candidates(form))
        if (restrict_to_plane(form, h).is_zero()) return true;
    return false;
}

Form4 pullback(const Form4& form, const Projectivity& m) {
    const Field& f = form.field();
    if (m.f != &f) throw std::invalid_argument("pullback: field mismatch");
    std::array<Form4, 4> lin = {Form4(f, 1), Form4(f, 1), Form4(f, 1), Form4(f, 1)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Form4::Exponents e{};
            e[j] = 1;
            lin[i].add_term(e, m.m[i][j]);
        }
    return substitute<4>(form, lin);
}

Form4 partial_derivative(const Form4& form, int var) {
    if (var < 0 || var > 3) throw std::invalid_argument("partial_derivative: bad variable");
    if (form.degree() < 1)
        throw std::invalid_argument("partial_derivative: form of degree 0");
    const Field& f = form.field();
    Form4 out(f, form.degree() - 1);
    for (const auto& [e, c] : form.terms()) {
        const unsigned k = e[static_cast<std::size_t>(var)];
        if (k == 0) continue;
        const felem scale = static_cast<felem>(k % f.p());
        if (scale == 0) continue;
        Form4::Exponents e2 = e;
        --e2[static_cast<std::size_t>(var)];
        out.add_term(e2, f.mul(c, scale));
    }
    return out;
}

std::vector<Point> singular_points(const Form4& form) {
    if (form.is_zero()) throw std::invalid_argument("singular_points: zero form");
    const Field& f = form.field();
    std::array<Form4, 4> grad = {
        partial_derivative(form, 0), partial_derivative(form, 1),
        partial_derivative(form, 2), partial_derivative(form, 3)};
    std::vector<Point> out;
    for (std::uint64_t i = 0; i < point_count(f); ++i) {
        const Point p = point_at(f, i);
        if (form.evaluate(p.c) != 0) continue;
        bool sing = true;
        for (int v = 0; v < 4 && sing; ++v)
            if (grad[static_cast<std::size_t>(v)].evaluate(p.c) != 0) sing = false;
        if (sing) out.push_back(p);
    }
    return out;
}

std::vector<Line> double_lines(const Form4& form) {
    const auto sing = singular_points(form);
    // A line of multiplicity >= 2 lies entirely in the singular locus, so it
    // accounts for all C(n, 2) pairs among its n points.  Counting the pairs
    // per spanned line filters the candidates down before the symbolic check.
    const std::uint64_t n = form.field().order() + 1;
    const std::uint64_t full = n * (n - 1) / 2;
    std::map<std::uint64_t, std::uint64_t> pair_tally;
    for (std::size_t i = 0; i < sing.size(); ++i)
        for (std::size_t j = i + 1; j < sing.size(); ++j)
            ++pair_tally[line_index(line_through(sing[i], sing[j]))];
    std::vector<Line> out;
    for (const auto& [idx, tally] : pair_tally) {
        if (tally < full) continue;
        const Line l = line_at(form.field(), idx);
        if (line_multiplicity(form, l) >= 2) out.push_back(l);
    }
    return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: empty range");
    for (;;) {
        const std::uint64_t r = rng();
        const std::uint64_t v = r % n;
        // accept unless r fell into the final partial block
        if (r - v <= std::numeric_limits<std::uint64_t>::max() - (n - 1)) return v;
    }
}

felem uniform_element(const Field& f, std::mt19937_64& rng) {
    return static_cast<felem>(uniform_below(rng, f.order()));
}

Form4 random_form(const Field& f, unsigned degree, std::mt19937_64& rng) {
    const auto monos = monomial_exponents<4>(degree);
    for (;;) {
        Form4 out(f, degree);
        for (const auto& e : monos) out.set_coeff(e, uniform_element(f, rng));
        if (!out.is_zero()) return out;
    }
}

} // namespace hermgeo
