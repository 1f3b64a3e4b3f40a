#pragma once

#include "npzeta/frobenius.hpp"
#include "npzeta/laurent.hpp"
#include "npzeta/matrix.hpp"
#include "npzeta/nondegen.hpp"
#include "npzeta/polytope.hpp"
#include "npzeta/reduction.hpp"

#include <map>
#include <string>
#include <vector>

namespace npz {

struct PrecisionPlan {
    int N = 0;
    int first_term = 0;  // ceil(log_p(2 C(d, floor(d/2)) q^{g+R-1})), d = 2 Vol + 1
    int eps_bound = 0;   // ceil(log_p((9pN + 5p) max(|chi1|, chi2) h + h w)) at the chosen N
    int dimension = 0;   // d
};

// Right-hand side of the working-precision inequality evaluated at N.
long precision_requirement(const NewtonPolytope& P, const PolytopeConstants& K, u64 p, int n, int N);
// Smallest N with N >= precision_requirement(N), by fixed-point iteration from the first term.
PrecisionPlan determine_precision(const NewtonPolytope& P, const PolytopeConstants& K, u64 p, int n);

struct FrobeniusMatrix {
    ZqMatrix M;  // p^eps times the matrix of the p-th power Frobenius, rows act on basis rows
    int eps = 0;
    int N = 0;
};

// Reduces F(x^s) E for every lattice point s of 2P, then expresses the result in the
// basis. threads > 1 splits the monomials into independent batches.
FrobeniusMatrix frobenius_matrix(const Laurent<ZqRing>& f, const NewtonPolytope& P, const PolytopeConstants& K,
                                 const FrobeniusLift& L, const FrobeniusAction& act, const FrobeniusKernel& E,
                                 const CohomologyBasis& basis, int threads = 1);

// M^{sigma^{n-1}} ... M^sigma M by binary splitting.
ZqMatrix norm_matrix(const ZqMatrix& M, int n);
// The same product multiplied out one factor at a time.
ZqMatrix norm_matrix_direct(const ZqMatrix& M, int n);

struct ZetaResult {
    FieldSpec field;
    mpz_class q;
    long genus = 0;
    long boundary_points = 0;
    long volume_x2 = 0;
    int N = 0;
    int eps = 0;
    std::vector<mpz_class> chi;  // ascending; chi(0) = q^{g+R-1}
    std::vector<mpz_class> P;    // chi(qt) / q^{g+R-1}, ascending, P(0) = 1
    std::map<std::string, double> timings_ms;

    // Torus point counts over F_{q^k} for k = 1..kmax.
    std::vector<mpz_class> counts(int kmax) const;
};

// Power sums of the reciprocal roots of P and the resulting counts q^k - s_k.
std::vector<mpz_class> counts_from_numerator(const std::vector<mpz_class>& P, const mpz_class& q, int kmax);

// Turns det(tI - M_n) mod p^N into the zeta data; M_n carries the factor p^{n eps}.
ZetaResult assemble_zeta(const std::vector<ZqRing::Elem>& charpoly, int eps, int N, const NewtonPolytope& P,
                         const FieldSpec& field);

// Failed output checks: Weil window, integrality of P, range of N_k for k <= 6.
std::vector<std::string> hygiene_problems(const ZetaResult& Z);

struct ZetaOptions {
    int precision_override = 0;  // 0: use determine_precision
    int threads = 1;
};

ZetaResult compute_zeta(const Laurent<Fq>& f, const ZetaOptions& opt = {});

}  // namespace npz
