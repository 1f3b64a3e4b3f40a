#include "npzeta/matrix.hpp"

#include "npzeta/errors.hpp"

#include <utility>

namespace npz {

ZqMatrix::ZqMatrix(const ZqRing& R, size_t rows, size_t cols) : R_(R), r_(rows), c_(cols), a_(rows * cols, R.zero())
{
}

ZqMatrix ZqMatrix::identity(const ZqRing& R, size_t n)
{
    ZqMatrix I(R, n, n);
    for (size_t i = 0; i < n; ++i)
        I.at(i, i) = R.one();
    return I;
}

ZqMatrix ZqMatrix::convert(const ZqRing& to) const
{
    ZqMatrix M(to, r_, c_);
    for (size_t k = 0; k < a_.size(); ++k)
        M.a_[k] = to.convert(a_[k], R_);
    return M;
}

ZqMatrix ZqMatrix::sigma(int i) const
{
    ZqMatrix M = *this;
    if (R_.n() == 1)
        return M;
    for (auto& e : M.a_)
        e = R_.sigma(e, i);
    return M;
}

ZqMatrix ZqMatrix::transpose() const
{
    ZqMatrix M(R_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            M.at(j, i) = at(i, j);
    return M;
}

ZqMatrix ZqMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const
{
    if (r0 + nr > r_ || c0 + nc > c_)
        fail(ErrorKind::InvalidArgument, "matrix block out of range");
    ZqMatrix M(R_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j)
            M.at(i, j) = at(r0 + i, c0 + j);
    return M;
}

bool ZqMatrix::equal(const ZqMatrix& o) const
{
    if (r_ != o.r_ || c_ != o.c_)
        return false;
    for (size_t k = 0; k < a_.size(); ++k)
        if (!R_.equal(a_[k], o.a_[k]))
            return false;
    return true;
}

bool ZqMatrix::is_zero() const
{
    for (const auto& e : a_)
        if (!R_.is_zero(e))
            return false;
    return true;
}

std::string ZqMatrix::to_string() const
{
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < c_; ++j) {
            if (j)
                s += ", ";
            s += R_.to_string(at(i, j));
        }
        s += "]";
    }
    return s + "]";
}

void ZqMatrix::swap_rows(size_t i, size_t k)
{
    if (i == k)
        return;
    for (size_t j = 0; j < c_; ++j)
        std::swap(at(i, j), at(k, j));
}

void ZqMatrix::swap_cols(size_t j, size_t k)
{
    if (j == k)
        return;
    for (size_t i = 0; i < r_; ++i)
        std::swap(at(i, j), at(i, k));
}

ZqMatrix operator*(const ZqMatrix& A, const ZqMatrix& B)
{
    if (A.cols() != B.rows())
        fail(ErrorKind::DimensionMismatch, "matrix product shapes differ");
    const ZqRing& R = A.ring();
    ZqMatrix C(R, A.rows(), B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t k = 0; k < A.cols(); ++k) {
            const auto& a = A.at(i, k);
            if (R.is_zero(a))
                continue;
            for (size_t j = 0; j < B.cols(); ++j)
                R.addmul(C.at(i, j), a, B.at(k, j));
        }
    return C;
}

ZqMatrix operator+(const ZqMatrix& A, const ZqMatrix& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        fail(ErrorKind::DimensionMismatch, "matrix sum shapes differ");
    ZqMatrix C = A;
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            C.at(i, j) = A.ring().add(A.at(i, j), B.at(i, j));
    return C;
}

ZqMatrix operator-(const ZqMatrix& A, const ZqMatrix& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        fail(ErrorKind::DimensionMismatch, "matrix difference shapes differ");
    ZqMatrix C = A;
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            C.at(i, j) = A.ring().sub(A.at(i, j), B.at(i, j));
    return C;
}

namespace {

// a / (u p^v) for a divisible by p^v, given u^-1.
ZqRing::Elem divide_by_pivot(const ZqRing& R, const ZqRing::Elem& a, int v, const ZqRing::Elem& uinv)
{
    if (R.is_zero(a))
        return R.zero();
    return R.mul(R.div_pow(a, v), uinv);
}

struct Pivot {
    size_t row = 0;
    size_t col = 0;
    int val = 0;
};

// Minimal valuation in the lower-right block starting at (k, k); ties go to the smallest
// row, then the smallest column. A unit, when present, is found with a cheap mod-p test.
Pivot find_pivot(const ZqMatrix& M, size_t k0, size_t c0)
{
    const ZqRing& R = M.ring();
    Pivot best{0, 0, R.precision()};
    for (size_t i = k0; i < M.rows(); ++i)
        for (size_t j = c0; j < M.cols(); ++j) {
            const auto& a = M.at(i, j);
            if (R.is_zero(a))
                continue;
            if (R.is_unit(a))
                return {i, j, 0};
            int v = R.valuation(a);
            if (v < best.val)
                best = {i, j, v};
        }
    return best;
}

}  // namespace

SmithData smith_diagonalize(const ZqMatrix& A)
{
    const ZqRing& R = A.ring();
    const size_t m = A.rows(), n = A.cols();
    SmithData S;
    S.precision = R.precision();
    ZqMatrix D = A;
    S.N1 = ZqMatrix::identity(R, m);
    S.N1inv = ZqMatrix::identity(R, m);
    S.N2 = ZqMatrix::identity(R, n);
    S.N2inv = ZqMatrix::identity(R, n);
    const size_t r = std::min(m, n);
    for (size_t k = 0; k < r; ++k) {
        Pivot pv = find_pivot(D, k, k);
        if (pv.val >= R.precision())
            break;
        D.swap_rows(k, pv.row);
        S.N1.swap_rows(k, pv.row);
        S.N1inv.swap_cols(k, pv.row);
        D.swap_cols(k, pv.col);
        S.N2.swap_cols(k, pv.col);
        S.N2inv.swap_rows(k, pv.col);

        const int v = pv.val;
        const ZqRing::Elem uinv = R.inv(R.div_pow(D.at(k, k), v));
        for (size_t i = k + 1; i < m; ++i) {
            if (R.is_zero(D.at(i, k)))
                continue;
            ZqRing::Elem t = divide_by_pivot(R, D.at(i, k), v, uinv);
            for (size_t j = k; j < n; ++j)
                R.submul(D.at(i, j), t, D.at(k, j));
            for (size_t j = 0; j < m; ++j)
                R.submul(S.N1.at(i, j), t, S.N1.at(k, j));
            for (size_t j = 0; j < m; ++j)
                R.addmul(S.N1inv.at(j, k), t, S.N1inv.at(j, i));
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (R.is_zero(D.at(k, j)))
                continue;
            ZqRing::Elem t = divide_by_pivot(R, D.at(k, j), v, uinv);
            D.at(k, j) = R.zero();
            for (size_t i = 0; i < n; ++i)
                R.submul(S.N2.at(i, j), t, S.N2.at(i, k));
            for (size_t i = 0; i < n; ++i)
                R.addmul(S.N2inv.at(k, i), t, S.N2inv.at(j, i));
        }
        S.rank = k + 1;
    }
    S.diag.resize(r);
    S.valuations.resize(r);
    for (size_t k = 0; k < r; ++k) {
        S.diag[k] = D.at(k, k);
        S.valuations[k] = R.valuation(D.at(k, k));
    }
    return S;
}

std::vector<ZqRing::Elem> solve_zq(const ZqMatrix& A, const std::vector<ZqRing::Elem>& b, int N, int theta)
{
    if (b.size() != A.rows())
        fail(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
    const ZqRing& R0 = A.ring();
    const ZqRing RN = R0.at_precision(N);
    const ZqRing RW = R0.at_precision(N + theta);
    SmithData S = smith_diagonalize(A.convert(RW));

    ZqMatrix bw(RW, b.size(), 1);
    for (size_t i = 0; i < b.size(); ++i)
        bw.at(i, 0) = RW.convert(b[i], R0);
    ZqMatrix y = S.N1 * bw;
    ZqMatrix z(RW, A.cols(), 1);
    for (size_t i = 0; i < A.rows(); ++i) {
        ZqRing::Elem yi = RN.convert(y.at(i, 0), RW);
        if (i >= S.rank) {
            if (!RN.is_zero(yi))
                fail(ErrorKind::Inconsistent, "right-hand side has a component outside the image");
            continue;
        }
        const int v = S.valuations[i];
        if (v > 0 && RN.valuation(yi) < std::min(v, N))
            fail(ErrorKind::Inconsistent, "right-hand side not divisible by invariant factor");
        ZqRing::Elem uinv = RW.inv(RW.div_pow(S.diag[i], v));
        z.at(i, 0) = divide_by_pivot(RW, y.at(i, 0), v, uinv);
    }
    ZqMatrix x = S.N2 * z;
    std::vector<ZqRing::Elem> out(A.cols());
    for (size_t j = 0; j < A.cols(); ++j)
        out[j] = RN.convert(x.at(j, 0), RW);

    ZqMatrix AN = A.convert(RN);
    for (size_t i = 0; i < A.rows(); ++i) {
        ZqRing::Elem acc = RN.zero();
        for (size_t j = 0; j < A.cols(); ++j)
            RN.addmul(acc, AN.at(i, j), out[j]);
        if (!RN.equal(acc, RN.convert(b[i], R0)))
            fail(ErrorKind::Inconsistent, "solution does not satisfy the system");
    }
    return out;
}

ZqMatrix solve_elimination(ZqMatrix A, ZqMatrix B, int check)
{
    const ZqRing& R = A.ring();
    if (B.rows() != A.rows())
        fail(ErrorKind::DimensionMismatch, "right-hand side rows differ from system rows");
    const size_t m = A.rows(), n = A.cols(), nb = B.cols();
    const ZqRing RC = R.at_precision(check);
    std::vector<size_t> perm(n);
    for (size_t j = 0; j < n; ++j)
        perm[j] = j;
    std::vector<int> vals;
    std::vector<ZqRing::Elem> uinvs;

    size_t rank = 0;
    for (size_t k = 0; k < std::min(m, n); ++k) {
        Pivot pv = find_pivot(A, k, k);
        if (pv.val >= R.precision())
            break;
        A.swap_rows(k, pv.row);
        B.swap_rows(k, pv.row);
        A.swap_cols(k, pv.col);
        std::swap(perm[k], perm[pv.col]);
        const int v = pv.val;
        ZqRing::Elem uinv = R.inv(R.div_pow(A.at(k, k), v));
        for (size_t i = k + 1; i < m; ++i) {
            if (R.is_zero(A.at(i, k)))
                continue;
            ZqRing::Elem t = divide_by_pivot(R, A.at(i, k), v, uinv);
            A.at(i, k) = R.zero();
            for (size_t j = k + 1; j < n; ++j)
                if (!R.is_zero(A.at(k, j)))
                    R.submul(A.at(i, j), t, A.at(k, j));
            for (size_t j = 0; j < nb; ++j)
                if (!R.is_zero(B.at(k, j)))
                    R.submul(B.at(i, j), t, B.at(k, j));
        }
        vals.push_back(v);
        uinvs.push_back(std::move(uinv));
        rank = k + 1;
    }
    for (size_t i = rank; i < m; ++i)
        for (size_t j = 0; j < nb; ++j)
            if (!RC.is_zero(RC.convert(B.at(i, j), R)))
                fail(ErrorKind::Inconsistent, "right-hand side outside the image of the system");

    ZqMatrix X(R, n, nb);
    for (size_t c = 0; c < nb; ++c) {
        std::vector<ZqRing::Elem> x(rank, R.zero());
        for (size_t k = rank; k-- > 0;) {
            ZqRing::Elem rhs = B.at(k, c);
            for (size_t j = k + 1; j < rank; ++j)
                if (!R.is_zero(A.at(k, j)))
                    R.submul(rhs, A.at(k, j), x[j]);
            const int v = vals[k];
            if (v > 0) {
                int need = std::min(v, check);
                if (!R.is_zero(rhs) && R.valuation(rhs) < need)
                    fail(ErrorKind::Inconsistent, "right-hand side not divisible by pivot");
                // Drop the part below the checked precision so the division is exact.
                if (R.valuation(rhs) < v) {
                    mpz_class keep = R.p_power(v);
                    for (auto& c0 : rhs)
                        c0 -= c0 % keep;
                }
            }
            x[k] = divide_by_pivot(R, rhs, v, uinvs[k]);
        }
        for (size_t k = 0; k < rank; ++k)
            X.at(perm[k], c) = std::move(x[k]);
    }
    return X;
}

std::vector<ZqRing::Elem> charpoly(const ZqMatrix& A)
{
    const ZqRing& R = A.ring();
    const size_t n = A.rows();
    if (A.cols() != n)
        fail(ErrorKind::DimensionMismatch, "characteristic polynomial of a non-square matrix");
    ZqMatrix H = A;
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t best = n;
        int bv = R.precision();
        for (size_t i = j + 1; i < n; ++i) {
            if (R.is_zero(H.at(i, j)))
                continue;
            int v = R.valuation(H.at(i, j));
            if (v < bv) {
                bv = v;
                best = i;
            }
        }
        if (best == n)
            continue;
        H.swap_rows(j + 1, best);
        H.swap_cols(j + 1, best);
        ZqRing::Elem uinv = R.inv(R.div_pow(H.at(j + 1, j), bv));
        for (size_t i = j + 2; i < n; ++i) {
            if (R.is_zero(H.at(i, j)))
                continue;
            ZqRing::Elem t = divide_by_pivot(R, H.at(i, j), bv, uinv);
            for (size_t c = j; c < n; ++c)
                R.submul(H.at(i, c), t, H.at(j + 1, c));
            for (size_t r = 0; r < n; ++r)
                R.addmul(H.at(r, j + 1), t, H.at(r, i));
        }
    }

    // p_k(t) = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}.
    using Poly = std::vector<ZqRing::Elem>;
    std::vector<Poly> P(n + 1);
    P[0] = {R.one()};
    for (size_t k = 1; k <= n; ++k) {
        Poly pk(k + 1, R.zero());
        for (size_t d = 0; d < k; ++d) {
            R.add_to(pk[d + 1], P[k - 1][d]);
            R.submul(pk[d], H.at(k - 1, k - 1), P[k - 1][d]);
        }
        ZqRing::Elem prod = R.one();
        for (size_t i = k - 1; i-- > 0;) {
            prod = R.mul(prod, H.at(i + 1, i));
            if (R.is_zero(prod))
                break;
            ZqRing::Elem c = R.mul(prod, H.at(i, k - 1));
            for (size_t d = 0; d < P[i].size(); ++d)
                R.submul(pk[d], c, P[i][d]);
        }
        P[k] = std::move(pk);
    }
    return P[n];
}

}  // namespace npz
