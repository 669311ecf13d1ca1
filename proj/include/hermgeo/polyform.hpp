#pragma once

#include "hermgeo/field.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermgeo {

// Homogeneous polynomial in N variables x0..x{N-1} over GF(q^2).  Terms are
// kept in a map from exponent vector to nonzero coefficient; the declared
// degree is fixed at construction and every stored monomial must match it.
template <int N>
class PolyForm {
public:
    using Exponents = std::array<std::uint8_t, N>;

    PolyForm(const Field& f, unsigned degree) : f_(&f), degree_(degree) {}

    const Field& field() const { return *f_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Exponents, felem>& terms() const { return coeffs_; }

    felem coeff(const Exponents& e) const {
        const auto it = coeffs_.find(e);
        return it == coeffs_.end() ? 0 : it->second;
    }

    void set_coeff(const Exponents& e, felem c) {
        check_exponents(e);
        if (c == 0)
            coeffs_.erase(e);
        else
            coeffs_[e] = c;
    }

    void add_term(const Exponents& e, felem c) {
        check_exponents(e);
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second = f_->add(it->second, c);
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    felem evaluate(const std::array<felem, N>& x) const {
        felem acc = 0;
        for (const auto& [e, c] : coeffs_) {
            felem t = c;
            for (int i = 0; i < N; ++i)
                if (e[i] != 0) t = f_->mul(t, f_->pow(x[i], e[i]));
            acc = f_->add(acc, t);
        }
        return acc;
    }

    PolyForm& operator+=(const PolyForm& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }

    PolyForm& operator-=(const PolyForm& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.coeffs_) add_term(e, f_->neg(c));
        return *this;
    }

    PolyForm operator+(const PolyForm& o) const {
        PolyForm r = *this;
        r += o;
        return r;
    }

    PolyForm operator-(const PolyForm& o) const {
        PolyForm r = *this;
        r -= o;
        return r;
    }

    PolyForm operator*(const PolyForm& o) const {
        if (f_ != o.f_) throw std::invalid_argument("form product: field mismatch");
        PolyForm r(*f_, degree_ + o.degree_);
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_) {
                Exponents e;
                for (int i = 0; i < N; ++i)
                    e[i] = static_cast<std::uint8_t>(e1[i] + e2[i]);
                r.add_term(e, f_->mul(c1, c2));
            }
        return r;
    }

    PolyForm scaled(felem c) const {
        PolyForm r(*f_, degree_);
        if (c == 0) return r;
        for (const auto& [e, v] : coeffs_) r.coeffs_[e] = f_->mul(c, v);
        return r;
    }

    bool operator==(const PolyForm& o) const {
        return f_ == o.f_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const PolyForm& o) const { return !(*this == o); }

private:
    void check_exponents(const Exponents& e) const {
        unsigned s = 0;
        for (int i = 0; i < N; ++i) s += e[i];
        if (s != degree_)
            throw std::invalid_argument("monomial of degree " + std::to_string(s) +
                                        " in a form of degree " + std::to_string(degree_));
    }

    void check_compatible(const PolyForm& o) const {
        if (f_ != o.f_) throw std::invalid_argument("form sum: field mismatch");
        if (degree_ != o.degree_)
            throw std::invalid_argument("form sum: degree mismatch (" +
                                        std::to_string(degree_) + " vs " +
                                        std::to_string(o.degree_) + ")");
    }

    const Field* f_;
    unsigned degree_;
    std::map<Exponents, felem> coeffs_;
};

// All exponent vectors of the given total degree, in ascending
// lexicographic order (the order map iteration uses).
template <int N>
std::vector<std::array<std::uint8_t, N>> monomial_exponents(unsigned degree) {
    std::vector<std::array<std::uint8_t, N>> out;
    std::array<std::uint8_t, N> e{};
    const auto rec = [&](auto&& self, int pos, unsigned left) -> void {
        if (pos == N - 1) {
            e[pos] = static_cast<std::uint8_t>(left);
            out.push_back(e);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            e[pos] = static_cast<std::uint8_t>(d);
            self(self, pos + 1, left - d);
        }
    };
    rec(rec, 0, degree);
    return out;
}

template <int N>
std::string to_string(const PolyForm<N>& form) {
    if (form.is_zero()) return "0";
    const Field& f = form.field();
    std::string out;
    // print with the x0-leading terms first
    for (auto it = form.terms().rbegin(); it != form.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        std::string cs = f.to_string(c);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        std::string mono;
        for (int i = 0; i < N; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += cs + "*" + mono;
    }
    return out;
}

} // namespace hermgeo
