#include "hermgeo/field.hpp"

#include <algorithm>
#include <cctype>

namespace hermgeo {

namespace {

// polynomial helpers over GF(p); coefficient vectors ascending, not
// necessarily trimmed

int poly_deg(const std::vector<unsigned>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

std::vector<unsigned> poly_mul(const std::vector<unsigned>& a,
                               const std::vector<unsigned>& b, unsigned p) {
    std::vector<unsigned> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

// remainder of a modulo monic m
std::vector<unsigned> poly_rem(std::vector<unsigned> a,
                               const std::vector<unsigned>& m, unsigned p) {
    const int dm = poly_deg(m);
    for (int i = poly_deg(a); i >= dm; i = poly_deg(a)) {
        const unsigned c = a[i];
        for (int j = 0; j <= dm; ++j) {
            const unsigned sub = (c * m[j]) % p;
            a[i - dm + j] = (a[i - dm + j] + p * p - sub) % p;
        }
    }
    a.resize(dm > 0 ? dm : 1, 0);
    return a;
}

bool poly_is_irreducible(const std::vector<unsigned>& f, unsigned p) {
    const int m = poly_deg(f);
    if (m < 1) return false;
    if (f[0] == 0) return m == 1; // t divides; only t itself is irreducible
    // trial division by every monic polynomial of degree 1..m/2
    for (int d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<unsigned> g(d + 1, 0);
            std::uint64_t v = idx;
            for (int i = 0; i < d; ++i) { g[i] = v % p; v /= p; }
            g[d] = 1;
            if (poly_deg(poly_rem(f, g, p)) < 0) return false;
        }
    }
    return true;
}

struct ModulusEntry {
    unsigned p, m;
    std::vector<unsigned> coeffs; // ascending, monic
};

// Shipped moduli (version modtable-v1). Generated by preferred_modulus and
// frozen here so serialized elements stay reproducible; a test regenerates
// the table from the rule and compares.
const ModulusEntry kShippedModuli[] = {
    {2, 2, {1, 1, 1}},             // t^2+t+1        GF(4),  q=2
    {3, 2, {1, 0, 1}},             // t^2+1          GF(9),  q=3
    {2, 4, {1, 1, 0, 0, 1}},       // t^4+t+1        GF(16), q=4
    {5, 2, {2, 0, 1}},             // t^2+2          GF(25), q=5
    {7, 2, {1, 0, 1}},             // t^2+1          GF(49), q=7
    {2, 6, {1, 1, 0, 0, 0, 0, 1}}, // t^6+t+1        GF(64), q=8
};

bool decompose_prime_power(unsigned q, unsigned& p, unsigned& e) {
    if (q < 2) return false;
    unsigned base = 0;
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0) { base = d; break; }
    if (base == 0) { p = q; e = 1; return true; }
    p = base;
    e = 0;
    unsigned r = q;
    while (r % p == 0) { r /= p; ++e; }
    return r == 1;
}

} // namespace

std::vector<unsigned> Field::preferred_modulus(unsigned p, unsigned m) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        if (idx % p == 0) continue; // constant term 0 means t divides
        std::vector<unsigned> f(m + 1, 0);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < m; ++i) { f[i] = v % p; v /= p; }
        f[m] = 1;
        if (poly_is_irreducible(f, p)) return f;
    }
    throw std::logic_error("Field::preferred_modulus: no irreducible found");
}

Field::Field(unsigned q, std::uint32_t order_ceiling) {
    if (!decompose_prime_power(q, p_, e_))
        throw std::invalid_argument("Field: q = " + std::to_string(q) +
                                    " is not a prime power");
    q_ = q;
    deg_ = 2 * e_;
    std::uint64_t ord = std::uint64_t(q) * q;
    if (ord > order_ceiling)
        throw std::invalid_argument("Field: q^2 = " + std::to_string(ord) +
                                    " exceeds the order ceiling " +
                                    std::to_string(order_ceiling));
    order_ = static_cast<std::uint32_t>(ord);

    modulus_.clear();
    for (const auto& ent : kShippedModuli)
        if (ent.p == p_ && ent.m == deg_) modulus_ = ent.coeffs;
    if (modulus_.empty()) modulus_ = preferred_modulus(p_, deg_);
    if (!poly_is_irreducible(modulus_, p_))
        throw std::logic_error("Field: shipped modulus is reducible");

    build_tables();
}

felem Field::add(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    if (!addtab_.empty()) return addtab_[std::size_t(a) * order_ + b];
    std::uint32_t r = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        r += mult * ((a % p_ + b % p_) % p_);
        a = static_cast<felem>(a / p_);
        b = static_cast<felem>(b / p_);
        mult *= p_;
    }
    return static_cast<felem>(r);
}

felem Field::neg(felem a) const {
    if (p_ == 2) return a;
    std::uint32_t r = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        r += mult * ((p_ - a % p_) % p_);
        a = static_cast<felem>(a / p_);
        mult *= p_;
    }
    return static_cast<felem>(r);
}

felem Field::schoolbook_mul(felem a, felem b) const {
    std::vector<unsigned> da = coeffs(a), db = coeffs(b);
    std::vector<unsigned> prod = poly_mul(da, db, p_);
    prod = poly_rem(prod, modulus_, p_);
    prod.resize(deg_, 0);
    return from_coeffs(prod);
}

felem Field::pow(felem a, std::uint64_t k) const {
    felem r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

felem Field::frobenius_ref(felem a) const {
    felem r = 1, base = a;
    std::uint64_t k = q_;
    while (k) {
        if (k & 1) r = schoolbook_mul(r, base);
        base = schoolbook_mul(base, base);
        k >>= 1;
    }
    return r;
}

std::vector<felem> Field::embedding_into(const Field& big) const {
    if (big.p() != p_ || big.ext_degree() % deg_ != 0)
        throw std::invalid_argument("embedding_into: GF(" + std::to_string(order_) +
                                    ") does not embed in GF(" +
                                    std::to_string(big.order()) + ")");
    // root of this modulus in the big field; coefficients live in GF(p),
    // whose packed representation agrees in both fields
    felem root = 0;
    bool found = false;
    for (std::uint32_t x = 0; x < big.order() && !found; ++x) {
        felem v = 0;
        for (unsigned i = 0; i <= deg_; ++i) {
            const felem term = big.mul(static_cast<felem>(modulus_[i]),
                                       big.pow(static_cast<felem>(x), i));
            v = big.add(v, term);
        }
        if (v == 0) {
            root = static_cast<felem>(x);
            found = true;
        }
    }
    if (!found) throw std::logic_error("embedding_into: modulus has no root upstairs");

    std::vector<felem> table(order_);
    for (std::uint32_t a = 0; a < order_; ++a) {
        felem img = 0, rp = 1;
        std::uint32_t rest = a;
        for (unsigned i = 0; i < deg_; ++i) {
            const felem digit = static_cast<felem>(rest % p_);
            rest /= p_;
            img = big.add(img, big.mul(digit, rp));
            rp = big.mul(rp, root);
        }
        table[a] = img;
    }
    return table;
}

void Field::build_tables() {
    const std::uint32_t n = order_;

    // exp/log over a multiplicative generator found by direct order check
    exp_.assign(2 * (n - 1), 0);
    log_.assign(n, 0);
    bool found = false;
    for (felem g = 2; g < n && !found; ++g) {
        exp_[0] = 1;
        bool ok = true;
        felem cur = 1;
        for (std::uint32_t i = 1; i < n - 1; ++i) {
            cur = schoolbook_mul(cur, g);
            if (cur == 1) { ok = false; break; }
            exp_[i] = cur;
        }
        if (ok && schoolbook_mul(cur, g) == 1) found = true;
    }
    if (!found) throw std::logic_error("Field: no multiplicative generator (modulus reducible?)");
    for (std::uint32_t i = 0; i < n - 1; ++i) {
        exp_[i + (n - 1)] = exp_[i];
        log_[exp_[i]] = i;
    }

    if (p_ != 2 && n <= 256) {
        addtab_.assign(std::size_t(n) * n, 0);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b) {
                std::uint32_t r = 0, mult = 1, x = a, y = b;
                for (unsigned i = 0; i < deg_; ++i) {
                    r += mult * ((x % p_ + y % p_) % p_);
                    x /= p_; y /= p_; mult *= p_;
                }
                addtab_[std::size_t(a) * n + b] = static_cast<felem>(r);
            }
    }

    // conjugation as the GF(p)-linear map determined by the basis images
    // (t^i)^q = (t^q)^i
    std::vector<felem> basis_img(deg_);
    felem tq = frobenius_ref(gen());
    felem acc = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        basis_img[i] = acc;
        acc = schoolbook_mul(acc, tq);
    }
    conj_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
        felem r = 0;
        std::uint32_t x = a;
        for (unsigned i = 0; i < deg_ && x; ++i) {
            unsigned c = x % p_;
            x /= p_;
            if (c == 0) continue;
            felem term = basis_img[i];
            for (unsigned k = 1; k < c; ++k) term = add(term, basis_img[i]);
            r = add(r, term);
        }
        conj_[a] = r;
    }
}

felem Field::from_coeffs(const std::vector<unsigned>& c) const {
    if (c.size() > deg_)
        throw std::invalid_argument("Field::from_coeffs: too many coefficients");
    std::uint32_t r = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        unsigned ci = i < c.size() ? c[i] : 0;
        if (ci >= p_)
            throw std::invalid_argument("Field::from_coeffs: coefficient out of range");
        r += mult * ci;
        mult *= p_;
    }
    return static_cast<felem>(r);
}

std::vector<unsigned> Field::coeffs(felem a) const {
    std::vector<unsigned> c(deg_);
    std::uint32_t x = a;
    for (unsigned i = 0; i < deg_; ++i) { c[i] = x % p_; x /= p_; }
    return c;
}

std::string Field::to_string(felem a) const {
    if (a == 0) return "0";
    const std::vector<unsigned> c = coeffs(a);
    std::string out;
    for (int i = static_cast<int>(deg_) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]);
            out += 't';
            if (i >= 2) out += '^' + std::to_string(i);
        }
    }
    return out;
}

felem Field::parse(const std::string& s) const {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw std::invalid_argument("Field::parse: empty element string");

    std::vector<unsigned> c(deg_, 0);
    std::vector<bool> seen(deg_, false);
    std::size_t i = 0;
    while (i < t.size()) {
        if (!t.empty() && i > 0) {
            if (t[i] != '+')
                throw std::invalid_argument("Field::parse: expected '+' in \"" + s + "\"");
            ++i;
        }
        std::size_t start = i;
        unsigned long coeff = 1;
        bool have_digits = false;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i > start) {
            coeff = std::stoul(t.substr(start, i - start));
            have_digits = true;
        }
        unsigned expn = 0;
        if (i < t.size() && t[i] == 't') {
            ++i;
            expn = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::size_t es = i;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
                if (i == es)
                    throw std::invalid_argument("Field::parse: missing exponent in \"" + s + "\"");
                expn = static_cast<unsigned>(std::stoul(t.substr(es, i - es)));
            }
        } else if (!have_digits) {
            throw std::invalid_argument("Field::parse: malformed term in \"" + s + "\"");
        }
        if (coeff >= p_)
            throw std::invalid_argument("Field::parse: coefficient " +
                                        std::to_string(coeff) + " not reduced mod " +
                                        std::to_string(p_));
        if (expn >= deg_)
            throw std::invalid_argument("Field::parse: exponent " + std::to_string(expn) +
                                        " out of range for extension degree " +
                                        std::to_string(deg_));
        if (seen[expn])
            throw std::invalid_argument("Field::parse: duplicate exponent in \"" + s + "\"");
        seen[expn] = true;
        c[expn] = static_cast<unsigned>(coeff);
    }
    return from_coeffs(c);
}

} // namespace hermgeo
