#pragma once

#include "npzeta/arith.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace npz {

// Dense univariate polynomials over F_q, ascending coefficients, no trailing zeros.
using FqPoly = std::vector<Fq::Elem>;

namespace fqpoly {

void trim(const Fq& F, FqPoly& a);
int deg(const FqPoly& a);  // -1 for the zero polynomial (assumes trimmed)
FqPoly constant(const Fq& F, const Fq::Elem& c);
FqPoly monomial(const Fq& F, const Fq::Elem& c, int d);
FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const Fq& F, const FqPoly& a, const Fq::Elem& c);
void divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem);
FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const Fq& F, const FqPoly& a);
FqPoly gcd(const Fq& F, FqPoly a, FqPoly b);  // monic, or zero
FqPoly mulmod(const Fq& F, const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly powmod(const Fq& F, const FqPoly& base, const mpz_class& e, const FqPoly& m);
FqPoly deriv(const Fq& F, const FqPoly& a);
Fq::Elem eval(const Fq& F, const FqPoly& a, const Fq::Elem& x);
bool is_one(const Fq& F, const FqPoly& a);

// X^(q^k) mod m.
FqPoly x_pow_qk(const Fq& F, int k, const FqPoly& m);

// Distinct roots in F_q, sorted by index_of. Deterministic for a given seed.
std::vector<Fq::Elem> roots(const Fq& F, const FqPoly& a, std::uint64_t seed = 1);

// Distinct-degree factorization of a squarefree monic polynomial: (degree, product of
// all irreducible factors of that degree).
std::vector<std::pair<int, FqPoly>> distinct_degree(const Fq& F, const FqPoly& a);

// Strip factors of t from a polynomial, returning the number removed.
int strip_t(const Fq& F, FqPoly& a);

}  // namespace fqpoly

// A field extension F_{q^k} of a given F_q, realized as F_p[X]/(find_irreducible(p, nk)),
// together with the embedding of F_q.
class FqExtension {
public:
    FqExtension(const Fq& base, int k);

    const Fq& big() const { return big_; }
    int degree() const { return k_; }
    Fq::Elem embed(const Fq::Elem& a) const;
    FqPoly embed(const FqPoly& a) const;

private:
    const Fq* base_;
    int k_;
    Fq big_;
    Fq::Elem gen_image_;  // image of the base generator
    std::vector<Fq::Elem> gen_pows_;
};

}  // namespace npz
