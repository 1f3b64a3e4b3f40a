#pragma once

#include "npzeta/arith.hpp"
#include "npzeta/laurent.hpp"
#include "npzeta/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace npz {

struct FaceCheck {
    std::string face;  // "vertex (i,j)", "edge k", "interior"
    bool ok = true;
};

// A common torus zero of a face polynomial and its two scaled partials, with
// coordinates in F_{q^degree} = F_p[X]/(field.rbar).
struct DegeneracyWitness {
    int edge = -1;  // index into the polytope's edge list, or -1 for the whole polygon
    int degree = 1;
    FieldSpec field;
    Fq::Elem x, y;

    std::string describe() const;
};

struct NondegeneracyReport {
    bool nondegenerate = true;
    std::vector<FaceCheck> faces;
    std::optional<DegeneracyWitness> witness;
};

// Face polynomial of f: the terms on the given edge, or f itself for edge == -1.
Laurent<Fq> face_polynomial(const Laurent<Fq>& f, const NewtonPolytope& P, int edge);

// True when (x, y) is a common zero of f_face, x d/dx f_face and y d/dy f_face.
bool witness_holds(const Laurent<Fq>& f, const DegeneracyWitness& w);

// Edges are decided by gcd(g, g') of the univariate edge polynomial. The polygon face is
// certified nondegenerate when 1 lies in the span of {f, x f_x, y f_y} times monomials
// of the doubled polygon; otherwise a witness is searched in F_{q^k} for
// k <= min(2wh, search_bound), and ExceedsSearchBound is thrown if none turns up.
NondegeneracyReport is_nondegenerate(const Laurent<Fq>& f, int search_bound = 12);

struct ValidatedInput {
    Laurent<Fq> f;  // after the normalizing substitution
    NewtonPolytope polytope;
    UnimodularMap map;
    NondegeneracyReport report;
};

// Normalizes f and checks genus and nondegeneracy; throws GenusZero or Degenerate.
ValidatedInput validate_input(const Laurent<Fq>& f);

}  // namespace npz
