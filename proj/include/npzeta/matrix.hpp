#pragma once

#include "npzeta/arith.hpp"

#include <string>
#include <vector>

namespace npz {

// Dense row-major matrix over Z_q / p^N.
class ZqMatrix {
public:
    using Elem = ZqRing::Elem;

    ZqMatrix() = default;
    ZqMatrix(const ZqRing& R, size_t rows, size_t cols);
    static ZqMatrix identity(const ZqRing& R, size_t n);

    const ZqRing& ring() const { return R_; }
    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Elem& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Elem& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    // Reinterpret every entry at the precision of another ring.
    ZqMatrix convert(const ZqRing& to) const;
    ZqMatrix sigma(int i = 1) const;
    ZqMatrix transpose() const;
    ZqMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    bool equal(const ZqMatrix& o) const;
    bool is_zero() const;
    std::string to_string() const;

    void swap_rows(size_t i, size_t k);
    void swap_cols(size_t j, size_t k);

private:
    ZqRing R_;
    size_t r_ = 0;
    size_t c_ = 0;
    std::vector<Elem> a_;
};

ZqMatrix operator*(const ZqMatrix& A, const ZqMatrix& B);
ZqMatrix operator+(const ZqMatrix& A, const ZqMatrix& B);
ZqMatrix operator-(const ZqMatrix& A, const ZqMatrix& B);

// N1 * A * N2 = diag(d_0, d_1, ...) with unimodular N1, N2. Pivots have minimal valuation
// (ties: smallest row, then column), so the valuations come out nondecreasing.
struct SmithData {
    ZqMatrix N1, N2, N1inv, N2inv;
    std::vector<ZqRing::Elem> diag;  // min(rows, cols) entries
    std::vector<int> valuations;     // precision for zero entries
    size_t rank = 0;
    int precision = 0;
};

SmithData smith_diagonalize(const ZqMatrix& A);

// Solve A x = b mod p^N through the Smith form at precision N + theta. The result is
// returned at precision N and satisfies A x = b there.
std::vector<ZqRing::Elem> solve_zq(const ZqMatrix& A, const std::vector<ZqRing::Elem>& b, int N, int theta);

// Solve A X = B for all columns of B at once by full-pivot elimination in A's ring. On
// return each equation holds modulo p^check (check <= precision). Throws Inconsistent
// when some right-hand side is not in the image.
ZqMatrix solve_elimination(ZqMatrix A, ZqMatrix B, int check);

// det(tI - A), ascending coefficients, via Hessenberg reduction with minimal-valuation
// pivots.
std::vector<ZqRing::Elem> charpoly(const ZqMatrix& A);

}  // namespace npz
