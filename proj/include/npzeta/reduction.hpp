#pragma once

#include "npzeta/dense.hpp"
#include "npzeta/laurent.hpp"
#include "npzeta/matrix.hpp"
#include "npzeta/polytope.hpp"

#include <memory>
#include <vector>

namespace npz {

// Ceiling of log_p(x) for x >= 1: the least e with p^e >= x.
int ceil_log(u64 p, const mpz_class& x);

struct ReductionPlan {
    PolytopeConstants K;
    long c = 1;     // block size of the two peeling phases
    long m = 0;     // largest |x| among the inputs
    int eps = 0;    // inputs are scaled by p^eps
    int theta = 0;  // extra precision for the linear solves
};

ReductionPlan plan_reduction(const PolytopeConstants& K, u64 p, long m);

// Strip element stored column by column: cell (x, y) at (x - base) * H + (y - d_b).
// Columns outside [xlo, xhi] are zero; the storage may extend beyond that range.
struct StripColumns {
    long base = 0;
    long xlo = 0;
    long xhi = -1;
    std::vector<ZqRing::Elem> c;
};

struct ReductionOutput {
    // Coordinates over the lattice points of the doubled polygon (y-major), per input.
    std::vector<std::vector<ZqRing::Elem>> r;
    // The accumulated g with input = r + D(g) mod (f), when requested.
    std::vector<Laurent<ZqRing>> g;
    long phase1_steps = 0;
    long phase2_steps = 0;
};

// Reduction of strip polynomials modulo the image of D to combinations of the monomials
// of the doubled polygon. The working ring carries check + theta digits; every identity
// holds modulo p^check.
class Reducer {
public:
    Reducer(const Laurent<ZqRing>& f, const NewtonPolytope& P, const ReductionPlan& plan, int check);
    Reducer(const Reducer&) = delete;
    Reducer& operator=(const Reducer&) = delete;

    const ZqRing& ring() const { return R_; }
    long c() const { return c_; }
    const std::vector<LatticePoint>& targets() const { return targets_; }
    // strip(y^l y f_y) and strip(y^l x f_x), so that D(x^k y^l) = x^k (k P_l - l Q_l).
    const Laurent<ZqRing>& template_P(long l) const { return P_[l - d_b_]; }
    const Laurent<ZqRing>& template_Q(long l) const { return Q_[l - d_b_]; }

    StripColumns from_dense(const DenseLaurent& a) const;
    StripColumns from_sparse(const Laurent<ZqRing>& h) const;

    // Returns r at precision check and, if asked, g in the working ring.
    ReductionOutput run(std::vector<StripColumns> work, bool want_g) const;

private:
    struct Cell {
        long dx;
        long y;
        ZqRing::Elem p, q;
    };
    ZqRing::Elem entry(const Cell& t, long k, long l) const;
    void subtract_D(StripColumns& w, long k, long l, const ZqRing::Elem& v) const;
    void ensure(StripColumns& w, long lo, long hi) const;
    void trim(StripColumns& w) const;
    // Solve for g on the unknown block [ka, kb] so that the columns in [xa, xb] vanish.
    void peel(std::vector<StripColumns>& work, long ka, long kb, long xa, long xb,
              std::vector<Laurent<ZqRing>>* g) const;
    void finish(std::vector<StripColumns>& work, ReductionOutput& out, std::vector<Laurent<ZqRing>>* g) const;

    ZqRing R_;
    Laurent<ZqRing> f_;
    ReductionPlan plan_;
    int check_;
    long c_;
    long d_b_, d_t_, H_;
    long tmin_ = 0, tmax_ = 0;  // x-offset range of the templates
    std::vector<Laurent<ZqRing>> P_, Q_;
    std::vector<std::vector<Cell>> cells_;  // per row l, union support of P_l and Q_l
    std::vector<LatticePoint> targets_;
    std::vector<Laurent<ZqRing>> target_strip_;
};

// Reduce p^eps h for each h (strip polynomials known mod p^N), working at precision
// N + eps (+ theta inside the solves). m < 0 takes the largest |x| from the inputs; a
// larger m lets independent batches share eps.
struct CohomologyReduction {
    ReductionPlan plan;
    std::shared_ptr<const ZqRing> ring;  // precision N + eps; the ring of out.g
    ReductionOutput out;                 // r at precision N + eps
};
CohomologyReduction reduce_cohomology(const std::vector<Laurent<ZqRing>>& h, const Laurent<ZqRing>& f,
                                      const NewtonPolytope& P, const PolytopeConstants& K, bool want_g,
                                      long m = -1);

// Relation matrix: rows D(x^s) then f x^s for s in P, columns the lattice points of 2P.
ZqMatrix relation_matrix(const Laurent<ZqRing>& f, const NewtonPolytope& P);

struct CohomologyBasis {
    std::vector<LatticePoint> points;  // lattice points of 2P, y-major
    int N = 0;                         // precision of basis and N2
    int N0 = 0;                        // extra digits used for the diagonalization
    size_t ell = 0;                    // number of nonzero invariant factors
    SmithData smith;                   // at precision N + N0
    ZqMatrix N2;                       // at precision N
    ZqMatrix basis;                    // rows ell.. of N2^-1 at precision N
    size_t dimension() const { return points.size() - ell; }
};

// Extra precision for the diagonalization: floor(l n log_p(l w h n p)) + 1 with l the
// a-priori bound min(2 #P, #2P) on the number of nonzero invariant factors.
int basis_extra_precision(const NewtonPolytope& P, u64 p, int n);

// f is a digit lift; it is re-read at precision N + N0.
CohomologyBasis cohomology_basis(const Laurent<ZqRing>& f, const NewtonPolytope& P, int N);

}  // namespace npz
