#pragma once

#include "npzeta/laurent.hpp"
#include "npzeta/matrix.hpp"
#include "npzeta/polytope.hpp"

#include <vector>

namespace npz {

// gamma f + alpha x f_x + beta y f_y = 1 with all three supported in the doubled polygon.
struct NssCertificate {
    Laurent<ZqRing> gamma, alpha, beta;
    int precision = 0;
};

// The linear map (gamma, alpha, beta) -> gamma f + alpha x f_x + beta y f_y from three
// copies of the coefficients over 2P into coefficients over 3P. Column c belongs to
// block c / cols.size() (gamma, alpha, beta) and exponent cols[c % cols.size()].
struct NssSystem {
    ZqMatrix A;
    std::vector<LatticePoint> rows;  // 3P, y-major
    std::vector<LatticePoint> cols;  // 2P, y-major
};

NssSystem nss_system(const Laurent<ZqRing>& f, const NewtonPolytope& P);

// Gauss-Jordan elimination with unit pivots only (first unit in column order for each
// row); throws NoUnitPivot when some row has none. Works at the precision of f's ring.
NssCertificate solve_nss(const Laurent<ZqRing>& f, const NewtonPolytope& P);

Laurent<ZqRing> nss_residual(const NssCertificate& c, const Laurent<ZqRing>& f);

}  // namespace npz
