#include "npzeta/nullstellensatz.hpp"

#include "npzeta/errors.hpp"

#include <map>

namespace npz {

NssSystem nss_system(const Laurent<ZqRing>& f, const NewtonPolytope& P)
{
    const ZqRing& R = f.ring();
    NssSystem S;
    S.rows = P.dilate_points(3);
    S.cols = P.dilate_points(2);
    std::map<LatticePoint, size_t> row_index;
    for (size_t i = 0; i < S.rows.size(); ++i)
        row_index[S.rows[i]] = i;
    const size_t K = S.cols.size();
    S.A = ZqMatrix(R, S.rows.size(), 3 * K);
    const Laurent<ZqRing> gens[3] = {f, f.x_dx(), f.y_dy()};
    for (int b = 0; b < 3; ++b)
        for (size_t c = 0; c < K; ++c)
            for (const auto& [e, v] : gens[b].terms()) {
                auto it = row_index.find(e + S.cols[c]);
                if (it == row_index.end())
                    fail(ErrorKind::Internal, "product leaves the tripled polygon");
                S.A.at(it->second, b * K + c) = R.add(S.A.at(it->second, b * K + c), v);
            }
    return S;
}

NssCertificate solve_nss(const Laurent<ZqRing>& f, const NewtonPolytope& P)
{
    const ZqRing& R = f.ring();
    NssSystem S = nss_system(f, P);
    ZqMatrix& A = S.A;
    const size_t m = A.rows(), n = A.cols();
    std::vector<ZqRing::Elem> rhs(m, R.zero());
    for (size_t i = 0; i < m; ++i)
        if (S.rows[i] == LatticePoint{0, 0})
            rhs[i] = R.one();

    std::vector<bool> used(n, false);
    std::vector<size_t> pivot_col(m);
    for (size_t r = 0; r < m; ++r) {
        size_t pc = n;
        for (size_t c = 0; c < n; ++c)
            if (!used[c] && R.is_unit(A.at(r, c))) {
                pc = c;
                break;
            }
        if (pc == n)
            fail(ErrorKind::NoUnitPivot, "no unit pivot in row for exponent " + to_string(S.rows[r]));
        used[pc] = true;
        pivot_col[r] = pc;
        ZqRing::Elem inv = R.inv(A.at(r, pc));
        for (size_t c = 0; c < n; ++c)
            A.at(r, c) = R.mul(A.at(r, c), inv);
        rhs[r] = R.mul(rhs[r], inv);
        for (size_t i = 0; i < m; ++i) {
            if (i == r || R.is_zero(A.at(i, pc)))
                continue;
            ZqRing::Elem t = A.at(i, pc);
            for (size_t c = 0; c < n; ++c)
                if (!R.is_zero(A.at(r, c)))
                    R.submul(A.at(i, c), t, A.at(r, c));
            R.submul(rhs[i], t, rhs[r]);
        }
    }

    const size_t K = S.cols.size();
    NssCertificate cert{Laurent<ZqRing>(R), Laurent<ZqRing>(R), Laurent<ZqRing>(R), R.precision()};
    Laurent<ZqRing>* parts[3] = {&cert.gamma, &cert.alpha, &cert.beta};
    for (size_t r = 0; r < m; ++r) {
        size_t c = pivot_col[r];
        parts[c / K]->set(S.cols[c % K], rhs[r]);
    }
    Laurent<ZqRing> res = nss_residual(cert, f);
    if (!(res == Laurent<ZqRing>::constant(R, R.one())))
        fail(ErrorKind::Internal, "Nullstellensatz certificate fails its residual check");
    return cert;
}

Laurent<ZqRing> nss_residual(const NssCertificate& c, const Laurent<ZqRing>& f)
{
    return c.gamma * f + c.alpha * f.x_dx() + c.beta * f.y_dy();
}

}  // namespace npz
