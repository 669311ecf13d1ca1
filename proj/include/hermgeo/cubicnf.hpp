#pragma once

#include "hermgeo/forms.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hermgeo {

/** Normal form of a cubic F along a line l on V(F).
 *
 *  The frame moves l to V(x2,x3), so the pulled-back cubic G = F(frame * x)
 *  has no x0^3, x0^2 x1, x0 x1^2, x1^3 terms and splits as
 *
 *      G = A x0^2 + 2B x0 x1 + C x1^2 + 2D x0 + 2E x1 + K     (odd char)
 *      G = A x0^2 +  B x0 x1 + C x1^2 +  D x0 +  E x1 + K     (even char)
 *
 *  with A, B, C, D, E, K binary forms in (x2, x3) of degrees 1, 1, 1, 2, 2, 3.
 *  K vanishes exactly when V(G) also contains V(x0,x1). */
struct CubicNF {
    const Field* f = nullptr;
    Line axis;          // the line moved into normal position
    Projectivity frame; // reconstruct(nf) == pullback(original, frame)
    bool even_char = false;
    Form2 A, B, C, D, E, K;
};

/** Computes the normal form of `cubic` along `l`. Throws std::invalid_argument
 *  if the form is not a cubic or if V(cubic) does not contain l. */
CubicNF normal_form(const Form4& cubic, const Line& l);

/** The cubic in normal position; equals pullback(original, nf.frame). */
Form4 reconstruct(const CubicNF& nf);

/** det of the symmetric matrix [[A,B,D],[B,C,E],[D,E,K]], a binary quintic.
 *  Odd characteristic only; throws std::logic_error in even characteristic. */
Form2 det_MF(const CubicNF& nf);

/** The binary quintic A E^2 + B D E + C D^2 + B^2 K. Even characteristic
 *  only; throws std::logic_error in odd characteristic. */
Form2 quintic_invariant(const CubicNF& nf);

/** det_MF in odd characteristic, quintic_invariant in even. Vanishing of this
 *  quintic marks the degenerate cubics along the axis. */
Form2 degeneracy_invariant(const CubicNF& nf);

/** Whether the conic V(g) in PG(2) is a union of (at most two) lines over the
 *  algebraic closure, i.e. fails to be smooth. g must be a nonzero quadratic
 *  in three variables; decided from the coefficients alone. */
bool conic_is_line_union(const Form3& g);

enum class SectionKind {
    SmoothConic,    // residual conic is nondegenerate
    LineUnion,      // residual conic splits into lines (possibly one, doubled)
    PlaneContained, // the whole plane lies on V(F); no residual conic
};

/** Scan of T_l: the planes through the axis whose section of V(F) is a union
 *  of lines. Sections come in book_of_planes order. */
struct TEllReport {
    Line axis;
    bool invariant_nonzero = false;
    std::vector<std::pair<Plane, SectionKind>> sections;
    std::vector<Plane> members; // planes with kind != SmoothConic, book order
};

/** Classifies every plane through l by its residual conic. V(cubic) must
 *  contain l. */
TEllReport t_ell(const Form4& cubic, const Line& l);

enum class Dichotomy {
    Reducible,        // the cubic has a linear factor
    DoubleLine,       // some line on V(F) has multiplicity >= 2
    InvariantNonzero, // degeneracy invariant along l1 is not identically zero
};

/** For a cubic containing the skew lines l1, l2 (so K == 0 along l1): either
 *  the degeneracy invariant is nonzero, or the cubic is reducible, or V(F)
 *  carries a double line. Checked in the order Reducible, DoubleLine after a
 *  zero invariant; a cubic resolving to none of the three states throws
 *  std::runtime_error with the offending form in the message. */
Dichotomy dichotomy_check(const Form4& cubic, const Line& l1, const Line& l2);

/** Whether the binary form g has no repeated root in the algebraic closure
 *  (the root at infinity counts). Zero input throws std::invalid_argument.
 *  Even characteristic is supported for degree <= 2 only and throws
 *  std::logic_error beyond that. */
bool is_squarefree(const Form2& g);

/** Exact quotient num / den of binary forms, or nullopt when den does not
 *  divide num. Zero den throws std::invalid_argument. */
std::optional<Form2> binary_form_divide(const Form2& num, const Form2& den);

/** Whether the cubic is irreducible over the base field. Any nontrivial
 *  factorization of a degree 3 form has a degree 1 part, so this reduces to
 *  the linear factor scan. */
bool cubic_is_irreducible(const Form4& cubic);

std::string to_string(SectionKind k);
std::string to_string(Dichotomy d);

} // namespace hermgeo
