#pragma once

#include "npzeta/dense.hpp"
#include "npzeta/laurent.hpp"
#include "npzeta/nullstellensatz.hpp"
#include "npzeta/polytope.hpp"

#include <map>
#include <memory>

namespace npz {

// Lift of Frobenius x -> x^p Z_x, y -> y^p Z_y on Z_q[x^+-1, y^+-1]/(f), stored as strip
// representatives modulo p^N inside the x-window budget * [chi1, chi2].
struct FrobeniusLift {
    int N = 0;
    long budget = 0;
    std::shared_ptr<const StripAlgebra> alg;
    Laurent<ZqRing> delta, delta_x, delta_y;  // lifts of the p-th powers of gamma, alpha, beta
    DenseLaurent Z, Zx, Zy, Zx_inv, Zy_inv;
    int newton_rounds = 0;  // full-precision rounds after the doubling schedule
};

// Newton iteration on G(Z) = x^{-pa} y^{-pb} g^sigma(x^p (1 + delta_x Z), y^p (1 + delta_y Z))
// with g = x^a y^b f, at precisions 1, 2, 4, ..., N, then repeated at N until G(Z) is zero.
// The budget is 9pN + 5p + extra_budget. f must live in a ring of precision N.
FrobeniusLift lift_frobenius(const Laurent<ZqRing>& f, const PolytopeConstants& K, const NssCertificate& cert,
                             long extra_budget = 0);

// Images of monomials and polynomials under the lift, with cached powers of Z_x and of
// strip(y^{pj}) Z_y^j over a box of exponents.
class FrobeniusAction {
public:
    FrobeniusAction(const FrobeniusLift& L, long xlo, long xhi, long ylo, long yhi);

    // sigma(c) x^{pi} y^{pj} Z_x^i Z_y^j reduced to the strip.
    DenseLaurent monomial(const LatticePoint& s) const;
    DenseLaurent apply(const Laurent<ZqRing>& h) const;
    const DenseLaurent& zx_pow(long i) const;
    const DenseLaurent& y_factor(long j) const;  // strip(y^{pj}) Z_y^j

private:
    const FrobeniusLift* L_;
    std::map<long, DenseLaurent> zx_, yf_;
};

// The differential kernel E, clipped to the window (9pN + 3p) * [chi1, chi2].
struct FrobeniusKernel {
    long budget = 0;
    DenseLaurent E;
};

FrobeniusKernel precompute_E(const FrobeniusLift& L, const FrobeniusAction& act, const NssCertificate& cert,
                             const Laurent<ZqRing>& f, const PolytopeConstants& K);

// strip(f^sigma(x^p Z_x, y^p Z_y)); zero for a correct lift.
DenseLaurent frobenius_residual(const FrobeniusLift& L, const Laurent<ZqRing>& f);

}  // namespace npz
