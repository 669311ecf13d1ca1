#include "hermgeo/cubicnf.hpp"

#include <stdexcept>

namespace hermgeo {

namespace {

// Binary forms convert to univariate polynomials by x1 = 1; the lost root at
// infinity is tracked separately as deg(form) - deg(poly). Coefficient i of
// the vector is the coefficient of x0^i x1^(d-i).
std::vector<felem> univariate(const Form2& g) {
    std::vector<felem> c(g.degree() + 1, 0);
    for (const auto& [e, v] : g.terms()) c[e[0]] = v;
    return c;
}

int poly_degree(const std::vector<felem>& u) {
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        if (u[i] != 0) return i;
    return -1;
}

// division with remainder; num is consumed into the remainder
std::vector<felem> poly_divmod(const Field& f, std::vector<felem>& num,
                               const std::vector<felem>& den) {
    const int dd = poly_degree(den);
    int dn = poly_degree(num);
    if (dd < 0) throw std::invalid_argument("poly_divmod: zero divisor");
    std::vector<felem> quot(dn >= dd ? dn - dd + 1 : 0, 0);
    const felem lead_inv = f.inv(den[dd]);
    while (dn >= dd) {
        const felem c = f.mul(num[dn], lead_inv);
        quot[dn - dd] = c;
        for (int i = 0; i <= dd; ++i)
            num[dn - dd + i] = f.sub(num[dn - dd + i], f.mul(c, den[i]));
        dn = poly_degree(num);
    }
    return quot;
}

std::vector<felem> poly_gcd(const Field& f, std::vector<felem> a, std::vector<felem> b) {
    while (poly_degree(b) >= 0) {
        poly_divmod(f, a, b);
        std::swap(a, b);
    }
    return a;
}

std::vector<felem> poly_derivative(const Field& f, const std::vector<felem>& u) {
    std::vector<felem> d(u.size() > 1 ? u.size() - 1 : 0, 0);
    for (std::size_t i = 1; i < u.size(); ++i) {
        felem s = 0;
        for (unsigned r = 0; r < i % f.p(); ++r) s = f.add(s, u[i]);
        d[i - 1] = s;
    }
    return d;
}

void require_parity(const CubicNF& nf, bool want_even, const char* who) {
    if (nf.even_char != want_even)
        throw std::logic_error(std::string(who) + ": wrong characteristic parity");
}

} // namespace

CubicNF normal_form(const Form4& cubic, const Line& l) {
    const Field& f = cubic.field();
    if (cubic.degree() != 3)
        throw std::invalid_argument("normal_form: form of degree " +
                                    std::to_string(cubic.degree()));
    if (!line_on_form(cubic, l))
        throw std::invalid_argument("normal_form: V(F) does not contain the line");

    CubicNF nf{&f,        l,           adapted_coords(l),
               f.even_char(), Form2(f, 1), Form2(f, 1),
               Form2(f, 1),  Form2(f, 2), Form2(f, 2),
               Form2(f, 3)};
    const Form4 g = pullback(cubic, nf.frame);
    const felem half = nf.even_char ? 1 : f.inv(2);
    for (const auto& [e, c] : g.terms()) {
        const Form2::Exponents tail{e[2], e[3]};
        const felem ch = nf.even_char ? c : f.mul(c, half);
        switch (e[0] + e[1]) {
        case 2:
            if (e[0] == 2) nf.A.add_term(tail, c);
            else if (e[0] == 1) nf.B.add_term(tail, ch);
            else nf.C.add_term(tail, c);
            break;
        case 1:
            if (e[0] == 1) nf.D.add_term(tail, ch);
            else nf.E.add_term(tail, ch);
            break;
        case 0:
            nf.K.add_term(tail, c);
            break;
        default:
            throw std::logic_error("normal_form: residue in the axis variables");
        }
    }
    return nf;
}

Form4 reconstruct(const CubicNF& nf) {
    const Field& f = *nf.f;
    Form4 out(f, 3);
    const felem two = nf.even_char ? 1 : f.add(1, 1);
    const auto emit = [&](const Form2& part, std::uint8_t e0, std::uint8_t e1, felem scale) {
        for (const auto& [e, c] : part.terms())
            out.add_term({e0, e1, e[0], e[1]}, f.mul(scale, c));
    };
    emit(nf.A, 2, 0, 1);
    emit(nf.B, 1, 1, two);
    emit(nf.C, 0, 2, 1);
    emit(nf.D, 1, 0, two);
    emit(nf.E, 0, 1, two);
    emit(nf.K, 0, 0, 1);
    return out;
}

Form2 det_MF(const CubicNF& nf) {
    require_parity(nf, false, "det_MF");
    Form2 det = nf.A * nf.C * nf.K;
    const Form2 bde = nf.B * nf.D * nf.E;
    det += bde;
    det += bde;
    det -= nf.A * nf.E * nf.E;
    det -= nf.C * nf.D * nf.D;
    det -= nf.B * nf.B * nf.K;
    return det;
}

Form2 quintic_invariant(const CubicNF& nf) {
    require_parity(nf, true, "quintic_invariant");
    Form2 q = nf.A * nf.E * nf.E;
    q += nf.B * nf.D * nf.E;
    q += nf.C * nf.D * nf.D;
    q += nf.B * nf.B * nf.K;
    return q;
}

Form2 degeneracy_invariant(const CubicNF& nf) {
    return nf.even_char ? quintic_invariant(nf) : det_MF(nf);
}

bool conic_is_line_union(const Form3& g) {
    if (g.degree() != 2)
        throw std::invalid_argument("conic_is_line_union: form of degree " +
                                    std::to_string(g.degree()));
    if (g.is_zero()) throw std::invalid_argument("conic_is_line_union: zero form");
    const Field& f = g.field();
    const felem a = g.coeff({2, 0, 0}), b = g.coeff({1, 1, 0}), c = g.coeff({0, 2, 0});
    const felem d = g.coeff({1, 0, 1}), e = g.coeff({0, 1, 1}), k = g.coeff({0, 0, 2});
    if (f.even_char()) {
        // b = d = e = 0 is a square of a line; otherwise the conic is strange
        // exactly when its quasi-discriminant vanishes.
        if (b == 0 && d == 0 && e == 0) return true;
        felem disc = f.mul(a, f.mul(e, e));
        disc = f.add(disc, f.mul(b, f.mul(d, e)));
        disc = f.add(disc, f.mul(c, f.mul(d, d)));
        disc = f.add(disc, f.mul(k, f.mul(b, b)));
        return disc == 0;
    }
    const felem h = f.inv(2);
    const felem bh = f.mul(b, h), dh = f.mul(d, h), eh = f.mul(e, h);
    felem det = f.mul(a, f.sub(f.mul(c, k), f.mul(eh, eh)));
    det = f.sub(det, f.mul(bh, f.sub(f.mul(bh, k), f.mul(eh, dh))));
    det = f.add(det, f.mul(dh, f.sub(f.mul(bh, eh), f.mul(c, dh))));
    return det == 0;
}

TEllReport t_ell(const Form4& cubic, const Line& l) {
    const CubicNF nf = normal_form(cubic, l);
    const Field& f = *nf.f;
    const Form4 g = reconstruct(nf);
    const Projectivity back = inverse(nf.frame);

    TEllReport rep;
    rep.axis = l;
    rep.invariant_nonzero = !degeneracy_invariant(nf).is_zero();
    for (const Plane& pl : book_of_planes(l)) {
        const Plane moved = image_plane(back, pl);
        if (moved.dual[0] != 0 || moved.dual[1] != 0)
            throw std::logic_error("t_ell: book plane left the axis pencil");
        const Vec4 dir{0, 0, moved.dual[3], f.neg(moved.dual[2])};
        const Form3 section =
            restrict_to_span(g, {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, dir});
        SectionKind kind;
        if (section.is_zero()) {
            kind = SectionKind::PlaneContained;
        } else {
            // the section vanishes on the axis line y2 = 0; peel that factor
            Form3 conic(f, 2);
            for (const auto& [e, c] : section.terms()) {
                if (e[2] == 0) throw std::logic_error("t_ell: section misses the axis");
                conic.add_term({e[0], e[1], static_cast<std::uint8_t>(e[2] - 1)}, c);
            }
            kind = conic_is_line_union(conic) ? SectionKind::LineUnion
                                              : SectionKind::SmoothConic;
        }
        rep.sections.emplace_back(pl, kind);
        if (kind != SectionKind::SmoothConic) rep.members.push_back(pl);
    }
    return rep;
}

Dichotomy dichotomy_check(const Form4& cubic, const Line& l1, const Line& l2) {
    const Field& f = cubic.field();
    if (cubic.degree() != 3)
        throw std::invalid_argument("dichotomy_check: form of degree " +
                                    std::to_string(cubic.degree()));
    if (!line_on_form(cubic, l1))
        throw std::invalid_argument("dichotomy_check: V(F) misses the first line");
    if (!line_on_form(cubic, l2))
        throw std::invalid_argument("dichotomy_check: V(F) misses the second line");

    const Projectivity frame = adapted_coords(l1, l2); // rejects meeting lines
    const Form4 g = pullback(cubic, frame);
    const CubicNF nf = normal_form(g, make_line(f, {1, 0, 0, 0}, {0, 1, 0, 0}));
    if (!nf.K.is_zero())
        throw std::logic_error("dichotomy_check: second line did not clear K");
    if (!degeneracy_invariant(nf).is_zero()) return Dichotomy::InvariantNonzero;
    if (has_linear_factor(cubic)) return Dichotomy::Reducible;
    if (!double_lines(cubic).empty()) return Dichotomy::DoubleLine;
    throw std::runtime_error("dichotomy_check: unresolved cubic " + to_string(cubic));
}

bool is_squarefree(const Form2& g) {
    if (g.is_zero()) throw std::invalid_argument("is_squarefree: zero form");
    const Field& f = g.field();
    if (g.degree() <= 1) return true;

    const std::vector<felem> u = univariate(g);
    const int du = poly_degree(u);
    const unsigned at_infinity = g.degree() - static_cast<unsigned>(du);
    if (at_infinity >= 2) return false;

    if (!f.even_char()) {
        if (du == 0) return true;
        const std::vector<felem> up = poly_derivative(f, u);
        if (poly_degree(up) < 0) return false; // p-th power
        return poly_degree(poly_gcd(f, u, up)) <= 0;
    }

    // Even characteristic: the derivative test collapses, so count distinct
    // roots in a splitting field instead. A quadratic splits over the
    // quadratic extension; higher degrees are out of scope here.
    if (g.degree() > 2)
        throw std::logic_error("is_squarefree: degree > 2 in even characteristic");
    Field big(f.order());
    const std::vector<felem> into = f.embedding_into(big);
    unsigned roots = at_infinity;
    for (std::uint32_t x = 0; x < big.order(); ++x) {
        felem acc = 0, pw = 1;
        for (int i = 0; i <= du; ++i) {
            acc = big.add(acc, big.mul(into[u[i]], pw));
            pw = big.mul(pw, static_cast<felem>(x));
        }
        if (acc == 0) ++roots;
    }
    return roots == 2;
}

std::optional<Form2> binary_form_divide(const Form2& num, const Form2& den) {
    if (den.is_zero()) throw std::invalid_argument("binary_form_divide: zero divisor");
    const Field& f = num.field();
    if (num.degree() < den.degree()) return std::nullopt;
    const unsigned dq = num.degree() - den.degree();
    if (num.is_zero()) return Form2(f, dq);

    std::vector<felem> u = univariate(num);
    const std::vector<felem> v = univariate(den);
    // x1-multiplicities (roots at infinity) must divide as well
    const unsigned inf_num = num.degree() - static_cast<unsigned>(poly_degree(u));
    const unsigned inf_den = den.degree() - static_cast<unsigned>(poly_degree(v));
    if (inf_num < inf_den) return std::nullopt;

    const std::vector<felem> q = poly_divmod(f, u, v);
    if (poly_degree(u) >= 0) return std::nullopt;
    Form2 out(f, dq);
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] != 0)
            out.add_term({static_cast<std::uint8_t>(i),
                          static_cast<std::uint8_t>(dq - i)},
                         q[i]);
    return out;
}

bool cubic_is_irreducible(const Form4& cubic) {
    if (cubic.degree() != 3)
        throw std::invalid_argument("cubic_is_irreducible: form of degree " +
                                    std::to_string(cubic.degree()));
    return !has_linear_factor(cubic);
}

std::string to_string(SectionKind k) {
    switch (k) {
    case SectionKind::SmoothConic: return "smooth-conic";
    case SectionKind::LineUnion: return "line-union";
    case SectionKind::PlaneContained: return "plane-contained";
    }
    return "?";
}

std::string to_string(Dichotomy d) {
    switch (d) {
    case Dichotomy::Reducible: return "reducible";
    case Dichotomy::DoubleLine: return "double-line";
    case Dichotomy::InvariantNonzero: return "invariant-nonzero";
    }
    return "?";
}

} // namespace hermgeo
