#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermgeo {

/** Packed field element: base-p digit vector (c0..c_{2e-1}) read as an
 *  integer sum(c_i * p^i). Ascending packed index is the canonical
 *  enumeration order, so 0 -> 0, 1 -> 1, p -> t. */
using felem = std::uint16_t;

/** Field: arithmetic context for GF(q^2), q = p^e, built as
 *  GF(p)[t]/(m(t)) with deg m = 2e. The subfield GF(q) is the fixed set
 *  of the conjugation a -> a^q; it never gets a context of its own.
 *
 *  Multiplication runs on exp/log tables (the order is capped at 2^16);
 *  the schoolbook reduce-by-modulus path stays available for cross-checks.
 *  Instances are immutable after construction and safe to share across
 *  threads. Elements from different Field instances must not be mixed. */
class Field {
public:
    explicit Field(unsigned q, std::uint32_t order_ceiling = 1u << 16);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }                 // subfield size p^e
    std::uint32_t order() const { return order_; }    // q^2 = p^(2e)
    unsigned ext_degree() const { return deg_; }      // 2e
    bool even_char() const { return p_ == 2; }

    // modulus coefficients c0..c_{2e}, ascending, monic (last entry 1)
    const std::vector<unsigned>& modulus() const { return modulus_; }
    static const char* modulus_table_version() { return "modtable-v1"; }

    // Fixed modulus choice for GF(p^m): the first monic irreducible of
    // degree m in packed-index order (equivalently smallest constant term,
    // then smallest t-coefficient, ...). Shipped entries for the common
    // fields are asserted against this rule in the tests.
    static std::vector<unsigned> preferred_modulus(unsigned p, unsigned m);

    // --- arithmetic on packed elements -----------------------------------
    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const { return add(a, neg(b)); }
    felem neg(felem a) const;
    felem mul(felem a, felem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    felem inv(felem a) const {
        if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
        return exp_[order_ - 1 - log_[a]];
    }
    felem div(felem a, felem b) const { return mul(a, inv(b)); }
    felem pow(felem a, std::uint64_t k) const;
    felem conj(felem a) const { return conj_[a]; }            // a -> a^q
    felem norm(felem a) const { return mul(a, conj_[a]); }    // a -> a^(q+1)

    // reference paths, kept independent of the tables for cross-checking
    felem schoolbook_mul(felem a, felem b) const;
    felem frobenius_ref(felem a) const;                       // a^q by square-and-multiply

    bool in_base_subfield(felem a) const { return conj_[a] == a; }

    // Embedding table into a larger field of the same characteristic whose
    // extension degree this one divides: index a maps to table[a].  Built by
    // sending t to the first root of this field's modulus in the big field.
    std::vector<felem> embedding_into(const Field& big) const;

    // --- element encoding -------------------------------------------------
    felem from_coeffs(const std::vector<unsigned>& c) const;
    std::vector<unsigned> coeffs(felem a) const;
    felem gen() const { return static_cast<felem>(p_); }      // the class of t

    // textual form: polynomial in t with descending powers, e.g. "t+1",
    // "2t", "t^3+t", "0"
    std::string to_string(felem a) const;
    felem parse(const std::string& s) const;

private:
    unsigned p_ = 0, e_ = 0, q_ = 0, deg_ = 0;
    std::uint32_t order_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<felem> exp_;    // length 2(order-1), doubled to skip the mod
    std::vector<std::uint32_t> log_;
    std::vector<felem> addtab_; // order x order, only built when order <= 256
    std::vector<felem> conj_;

    void build_tables();
};

/** FieldElement: value-type wrapper pairing a packed element with its
 *  context, for the API surface where mixed-context use must be caught.
 *  Hot loops work on raw felem via Field directly. */
class FieldElement {
public:
    FieldElement() : f_(nullptr), v_(0) {}
    FieldElement(const Field& f, felem v) : f_(&f), v_(v) {}

    const Field& field() const {
        if (!f_) throw std::logic_error("FieldElement: empty element");
        return *f_;
    }
    felem value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.same(b), a.f_->add(a.v_, b.v_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.same(b), a.f_->sub(a.v_, b.v_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.same(b), a.f_->mul(a.v_, b.v_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.same(b), a.f_->div(a.v_, b.v_));
    }
    FieldElement operator-() const { return FieldElement(field(), f_->neg(v_)); }
    FieldElement inv() const { return FieldElement(field(), f_->inv(v_)); }
    FieldElement conj() const { return FieldElement(field(), f_->conj(v_)); }
    FieldElement norm() const { return FieldElement(field(), f_->norm(v_)); }
    FieldElement pow(std::uint64_t k) const { return FieldElement(field(), f_->pow(v_, k)); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return &a.same(b) == a.f_ && a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    std::vector<unsigned> coeffs() const { return field().coeffs(v_); }
    std::string str() const { return field().to_string(v_); }

private:
    const Field& same(const FieldElement& b) const {
        if (!f_ || !b.f_) throw std::logic_error("FieldElement: empty element");
        if (f_ != b.f_) throw std::invalid_argument("FieldElement: field context mismatch");
        return *f_;
    }
    const Field* f_;
    felem v_;
};

} // namespace hermgeo
