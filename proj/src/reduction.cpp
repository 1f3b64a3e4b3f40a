#include "npzeta/reduction.hpp"

#include "npzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace npz {

int ceil_log(u64 p, const mpz_class& x)
{
    int e = 0;
    mpz_class pw = 1;
    while (pw < x) {
        pw *= static_cast<unsigned long>(p);
        ++e;
    }
    return e;
}

ReductionPlan plan_reduction(const PolytopeConstants& K, u64 p, long m)
{
    ReductionPlan plan;
    plan.K = K;
    plan.c = std::max<long>(K.kappa2, 1);
    plan.m = m;
    plan.eps = ceil_log(p, mpz_class(m) * K.M + K.Delta);
    plan.theta = ceil_log(p, mpz_class(m + 2 * (K.kappa2 - K.kappa1 + 1)) * K.M + K.Delta);
    return plan;
}

Reducer::Reducer(const Laurent<ZqRing>& f, const NewtonPolytope& P, const ReductionPlan& plan, int check)
    : R_(f.ring().at_precision(check + plan.theta)), f_(change_precision(f, R_)), plan_(plan), check_(check),
      c_(plan.c), d_b_(P.d_b()), d_t_(P.d_t()), H_(P.d_t() - P.d_b())
{
    const Laurent<ZqRing> fx = f_.x_dx(), fy = f_.y_dy();
    tmin_ = LONG_MAX;
    tmax_ = LONG_MIN;
    for (long l = d_b_; l < d_t_; ++l) {
        const Laurent<ZqRing> yl = Laurent<ZqRing>::monomial(R_, {0, l}, R_.one());
        P_.push_back(reduce_to_strip(yl * fy, f_));
        Q_.push_back(reduce_to_strip(yl * fx, f_));
        std::map<LatticePoint, Cell> u;
        for (const auto& [e, c] : P_.back().terms()) {
            auto [it, fresh] = u.try_emplace(e, Cell{e.i, e.j, R_.zero(), R_.zero()});
            it->second.p = c;
        }
        for (const auto& [e, c] : Q_.back().terms()) {
            auto [it, fresh] = u.try_emplace(e, Cell{e.i, e.j, R_.zero(), R_.zero()});
            it->second.q = c;
        }
        std::vector<Cell> row;
        for (auto& [e, cell] : u) {
            tmin_ = std::min(tmin_, cell.dx);
            tmax_ = std::max(tmax_, cell.dx);
            row.push_back(std::move(cell));
        }
        cells_.push_back(std::move(row));
    }
    if (tmin_ > tmax_)
        tmin_ = tmax_ = 0;
    targets_ = P.dilate_points(2);
    for (const auto& s : targets_)
        target_strip_.push_back(reduce_to_strip(Laurent<ZqRing>::monomial(R_, s, R_.one()), f_));
}

StripColumns Reducer::from_dense(const DenseLaurent& a) const
{
    StripColumns w;
    if (a.empty())
        return w;
    if (a.y0 < d_b_ || a.y1() >= d_t_)
        fail(ErrorKind::InvalidArgument, "reduction input is not a strip representative");
    w.base = w.xlo = a.x0;
    w.xhi = a.x1();
    w.c.assign(static_cast<size_t>(a.W * H_), R_.zero());
    const int n = R_.n();
    for (long y = a.y0; y <= a.y1(); ++y)
        for (long x = a.x0; x <= a.x1(); ++x) {
            const mpz_class* src = a.at(x, y);
            ZqRing::Elem& dst = w.c[static_cast<size_t>((x - w.base) * H_ + (y - d_b_))];
            for (int t = 0; t < n; ++t)
                dst[t] = src[t];
            R_.normalize(dst);
        }
    trim(w);
    return w;
}

StripColumns Reducer::from_sparse(const Laurent<ZqRing>& h) const
{
    const Laurent<ZqRing> r = reduce_to_strip(change_precision(h, R_), f_);
    StripColumns w;
    if (r.is_zero())
        return w;
    long lo = LONG_MAX, hi = LONG_MIN;
    for (const auto& [e, c] : r.terms()) {
        lo = std::min(lo, e.i);
        hi = std::max(hi, e.i);
    }
    ensure(w, lo, hi);
    for (const auto& [e, c] : r.terms())
        w.c[static_cast<size_t>((e.i - w.base) * H_ + (e.j - d_b_))] = c;
    return w;
}

ZqRing::Elem Reducer::entry(const Cell& t, long k, long l) const
{
    ZqRing::Elem v = R_.mul_int(t.p, k);
    R_.submul(v, R_.from_int(l), t.q);
    return v;
}

void Reducer::ensure(StripColumns& w, long lo, long hi) const
{
    const long cols = static_cast<long>(w.c.size()) / H_;
    if (w.xlo > w.xhi) {
        w.xlo = lo;
        w.xhi = hi;
    } else {
        w.xlo = std::min(w.xlo, lo);
        w.xhi = std::max(w.xhi, hi);
    }
    if (cols > 0 && w.xlo >= w.base && w.xhi < w.base + cols)
        return;
    // Grow with slack so repeated extensions stay linear.
    const long slack = cols / 2 + 8;
    long nbase = w.base, nend = w.base + cols;
    if (cols == 0) {
        nbase = w.xlo;
        nend = w.xhi + 1;
    }
    if (w.xlo < nbase)
        nbase = w.xlo - slack;
    if (w.xhi >= nend)
        nend = w.xhi + 1 + slack;
    std::vector<ZqRing::Elem> c(static_cast<size_t>((nend - nbase) * H_), R_.zero());
    if (cols > 0)
        std::move(w.c.begin(), w.c.end(), c.begin() + (w.base - nbase) * H_);
    w.c = std::move(c);
    w.base = nbase;
}

void Reducer::trim(StripColumns& w) const
{
    auto column_zero = [&](long x) {
        for (long y = 0; y < H_; ++y)
            if (!R_.is_zero(w.c[static_cast<size_t>((x - w.base) * H_ + y)]))
                return false;
        return true;
    };
    while (w.xlo <= w.xhi && column_zero(w.xlo))
        ++w.xlo;
    while (w.xhi >= w.xlo && column_zero(w.xhi))
        --w.xhi;
}

void Reducer::subtract_D(StripColumns& w, long k, long l, const ZqRing::Elem& v) const
{
    const auto& row = cells_[static_cast<size_t>(l - d_b_)];
    if (row.empty())
        return;
    ensure(w, k + tmin_, k + tmax_);
    for (const Cell& t : row) {
        ZqRing::Elem& dst = w.c[static_cast<size_t>((k + t.dx - w.base) * H_ + (t.y - d_b_))];
        R_.submul(dst, entry(t, k, l), v);
    }
}

void Reducer::peel(std::vector<StripColumns>& work, long ka, long kb, long xa, long xb,
                   std::vector<Laurent<ZqRing>>* g) const
{
    const size_t nu = static_cast<size_t>((kb - ka + 1) * H_);
    const size_t ne = static_cast<size_t>((xb - xa + 1) * H_);
    ZqMatrix B(R_, ne, work.size());
    bool any = false;
    for (size_t col = 0; col < work.size(); ++col) {
        const StripColumns& w = work[col];
        for (long x = std::max(xa, w.xlo); x <= std::min(xb, w.xhi); ++x)
            for (long y = 0; y < H_; ++y) {
                const auto& v = w.c[static_cast<size_t>((x - w.base) * H_ + y)];
                if (!R_.is_zero(v)) {
                    B.at(static_cast<size_t>((x - xa) * H_ + y), col) = v;
                    any = true;
                }
            }
    }
    if (!any)
        return;
    ZqMatrix A(R_, ne, nu);
    for (long k = ka; k <= kb; ++k)
        for (long l = d_b_; l < d_t_; ++l) {
            const size_t u = static_cast<size_t>((k - ka) * H_ + (l - d_b_));
            for (const Cell& t : cells_[static_cast<size_t>(l - d_b_)]) {
                const long x = k + t.dx;
                if (x < xa || x > xb)
                    continue;
                R_.add_to(A.at(static_cast<size_t>((x - xa) * H_ + (t.y - d_b_)), u), entry(t, k, l));
            }
        }
    const ZqMatrix X = solve_elimination(A, B, check_);
    for (size_t col = 0; col < work.size(); ++col) {
        StripColumns& w = work[col];
        for (long k = ka; k <= kb; ++k)
            for (long l = d_b_; l < d_t_; ++l) {
                const auto& v = X.at(static_cast<size_t>((k - ka) * H_ + (l - d_b_)), col);
                if (R_.is_zero(v))
                    continue;
                subtract_D(w, k, l, v);
                if (g)
                    (*g)[col].add_term({k, l}, v);
            }
        // The peeled columns now vanish modulo p^check; drop the digits above.
        for (long x = std::max(xa, w.xlo); x <= std::min(xb, w.xhi); ++x)
            for (long y = 0; y < H_; ++y) {
                auto& v = w.c[static_cast<size_t>((x - w.base) * H_ + y)];
                if (R_.valuation(v) < check_)
                    fail(ErrorKind::Internal, "peeled column does not vanish");
                v = R_.zero();
            }
        trim(w);
    }
}

void Reducer::finish(std::vector<StripColumns>& work, ReductionOutput& out,
                     std::vector<Laurent<ZqRing>>* g) const
{
    const ZqRing Rc = R_.at_precision(check_);
    const size_t K = targets_.size();
    out.r.assign(work.size(), std::vector<ZqRing::Elem>(K, Rc.zero()));
    // Terms already sitting on a target monomial inside the strip go straight to r.
    std::vector<std::vector<ZqRing::Elem>> direct(work.size(), std::vector<ZqRing::Elem>(K, R_.zero()));
    for (size_t s = 0; s < K; ++s) {
        const auto& ts = target_strip_[s].terms();
        if (ts.size() != 1 || ts.begin()->first != targets_[s] || !R_.equal(ts.begin()->second, R_.one()))
            continue;
        const LatticePoint& e = targets_[s];
        for (size_t col = 0; col < work.size(); ++col) {
            StripColumns& w = work[col];
            if (e.i < w.xlo || e.i > w.xhi)
                continue;
            auto& v = w.c[static_cast<size_t>((e.i - w.base) * H_ + (e.j - d_b_))];
            direct[col][s] = v;
            v = R_.zero();
        }
    }
    for (auto& w : work)
        trim(w);
    long lo = LONG_MAX, hi = LONG_MIN;
    for (const auto& w : work)
        if (w.xlo <= w.xhi) {
            lo = std::min(lo, w.xlo);
            hi = std::max(hi, w.xhi);
        }
    if (lo > hi) {
        for (size_t col = 0; col < work.size(); ++col)
            for (size_t s = 0; s < K; ++s)
                out.r[col][s] = Rc.convert(direct[col][s], R_);
        return;
    }
    // The relation to the targets may pass through every column between them and the input.
    for (const auto& t : target_strip_)
        for (const auto& [e, c] : t.terms()) {
            lo = std::min(lo, e.i);
            hi = std::max(hi, e.i);
        }

    const long ka = lo - tmax_, kb = hi - tmin_;
    const long xa = ka + tmin_, xb = kb + tmax_;
    const size_t ng = static_cast<size_t>((kb - ka + 1) * H_);
    const size_t ne = static_cast<size_t>((xb - xa + 1) * H_);
    ZqMatrix A(R_, ne, ng + K);
    for (long k = ka; k <= kb; ++k)
        for (long l = d_b_; l < d_t_; ++l) {
            const size_t u = static_cast<size_t>((k - ka) * H_ + (l - d_b_));
            for (const Cell& t : cells_[static_cast<size_t>(l - d_b_)])
                R_.add_to(A.at(static_cast<size_t>((k + t.dx - xa) * H_ + (t.y - d_b_)), u), entry(t, k, l));
        }
    for (size_t s = 0; s < K; ++s)
        for (const auto& [e, c] : target_strip_[s].terms())
            R_.add_to(A.at(static_cast<size_t>((e.i - xa) * H_ + (e.j - d_b_)), ng + s), c);
    ZqMatrix B(R_, ne, work.size());
    for (size_t col = 0; col < work.size(); ++col) {
        const StripColumns& w = work[col];
        for (long x = w.xlo; x <= w.xhi; ++x)
            for (long y = 0; y < H_; ++y)
                B.at(static_cast<size_t>((x - xa) * H_ + y), col) = w.c[static_cast<size_t>((x - w.base) * H_ + y)];
    }
    const ZqMatrix X = solve_elimination(A, B, check_);
    for (size_t col = 0; col < work.size(); ++col) {
        StripColumns& w = work[col];
        for (long k = ka; k <= kb; ++k)
            for (long l = d_b_; l < d_t_; ++l) {
                const auto& v = X.at(static_cast<size_t>((k - ka) * H_ + (l - d_b_)), col);
                if (R_.is_zero(v))
                    continue;
                subtract_D(w, k, l, v);
                if (g)
                    (*g)[col].add_term({k, l}, v);
            }
        for (size_t s = 0; s < K; ++s) {
            const auto& v = X.at(ng + s, col);
            out.r[col][s] = Rc.convert(R_.add(v, direct[col][s]), R_);
            if (R_.is_zero(v))
                continue;
            for (const auto& [e, c] : target_strip_[s].terms()) {
                ensure(w, e.i, e.i);
                R_.submul(w.c[static_cast<size_t>((e.i - w.base) * H_ + (e.j - d_b_))], c, v);
            }
        }
        for (const auto& v : w.c)
            if (R_.valuation(v) < check_)
                fail(ErrorKind::Internal, "reduction leaves a nonzero remainder");
    }
}

ReductionOutput Reducer::run(std::vector<StripColumns> work, bool want_g) const
{
    ReductionOutput out;
    std::vector<Laurent<ZqRing>> gs;
    if (want_g)
        gs.assign(work.size(), Laurent<ZqRing>(R_));
    std::vector<Laurent<ZqRing>>* g = want_g ? &gs : nullptr;
    for (auto& w : work)
        trim(w);
    const PolytopeConstants& K = plan_.K;

    long mp = LONG_MIN;
    for (const auto& w : work)
        if (w.xlo <= w.xhi)
            mp = std::max(mp, w.xhi);
    if (mp > 0) {
        const long t = std::max<long>(0, std::min(mp + K.kappa1 - K.kappa2 + 1, mp - 2 * K.chi2) / c_);
        for (long i = 1; i <= t; ++i) {
            const long ka = mp - i * c_ - K.kappa2 + 2, kb = mp - (i - 1) * c_ + K.kappa2 - 1;
            long xb = kb + tmax_;
            for (const auto& w : work)
                if (w.xlo <= w.xhi)
                    xb = std::max(xb, w.xhi);
            peel(work, ka, kb, mp - i * c_ + 1, xb, g);
        }
        out.phase1_steps = t;
    }

    long mm = LONG_MIN;
    for (const auto& w : work)
        if (w.xlo <= w.xhi)
            mm = std::max(mm, -w.xlo);
    if (mm > 0) {
        const long t = std::max<long>(0, std::min(mm + K.kappa1 - K.kappa2 + 1, mm + 2 * K.chi1) / c_);
        for (long i = 1; i <= t; ++i) {
            const long ka = -mm + (i - 1) * c_ + K.kappa1 + 1, kb = -mm + i * c_ - K.kappa1 - 2;
            long xa = ka + tmin_;
            for (const auto& w : work)
                if (w.xlo <= w.xhi)
                    xa = std::min(xa, w.xlo);
            peel(work, ka, kb, xa, -mm + i * c_ - 1, g);
        }
        out.phase2_steps = t;
    }

    finish(work, out, g);
    if (want_g)
        out.g = std::move(gs);
    return out;
}

CohomologyReduction reduce_cohomology(const std::vector<Laurent<ZqRing>>& h, const Laurent<ZqRing>& f,
                                      const NewtonPolytope& P, const PolytopeConstants& K, bool want_g, long m)
{
    const int N = h.empty() ? f.ring().precision() : h.front().ring().precision();
    long extent = 0;
    for (const auto& hi : h)
        for (const auto& [e, c] : hi.terms())
            extent = std::max(extent, std::abs(e.i));
    if (m < 0)
        m = extent;
    else if (m < extent)
        fail(ErrorKind::InvalidArgument, "reduction bound below the input extent");
    CohomologyReduction cr;
    cr.plan = plan_reduction(K, f.ring().p(), m);
    const int check = N + cr.plan.eps;
    Reducer red(f, P, cr.plan, check);
    std::vector<StripColumns> work;
    for (const auto& hi : h) {
        Laurent<ZqRing> s(red.ring());
        for (const auto& [e, c] : hi.terms())
            s.set(e, red.ring().mul_pow(red.ring().convert(c, hi.ring()), cr.plan.eps));
        work.push_back(red.from_sparse(s));
    }
    cr.out = red.run(std::move(work), want_g);
    auto ring = std::make_shared<ZqRing>(f.ring().at_precision(check));
    for (auto& g : cr.out.g)
        g = change_precision(g, *ring);
    cr.ring = ring;
    return cr;
}

ZqMatrix relation_matrix(const Laurent<ZqRing>& f, const NewtonPolytope& P)
{
    const ZqRing& R = f.ring();
    const std::vector<LatticePoint> cols = P.dilate_points(2);
    const std::vector<LatticePoint>& src = P.lattice_points();
    std::map<LatticePoint, size_t> index;
    for (size_t i = 0; i < cols.size(); ++i)
        index[cols[i]] = i;
    ZqMatrix A(R, 2 * src.size(), cols.size());
    auto put = [&](size_t row, const Laurent<ZqRing>& h) {
        for (const auto& [e, c] : h.terms()) {
            auto it = index.find(e);
            if (it == index.end())
                fail(ErrorKind::Internal, "relation leaves the doubled polygon");
            A.at(row, it->second) = c;
        }
    };
    for (size_t i = 0; i < src.size(); ++i) {
        const Laurent<ZqRing> mono = Laurent<ZqRing>::monomial(R, src[i], R.one());
        put(i, D_operator(mono, f));
        put(src.size() + i, mono * f);
    }
    return A;
}

int basis_extra_precision(const NewtonPolytope& P, u64 p, int n)
{
    const double ell = static_cast<double>(
        std::min(2 * P.lattice_points().size(), P.dilate_points(2).size()));
    const double arg = ell * static_cast<double>(P.width()) * static_cast<double>(P.height()) * n *
                       static_cast<double>(p);
    return static_cast<int>(std::floor(ell * n * std::log(arg) / std::log(static_cast<double>(p)))) + 1;
}

CohomologyBasis cohomology_basis(const Laurent<ZqRing>& f, const NewtonPolytope& P, int N)
{
    CohomologyBasis cb;
    cb.points = P.dilate_points(2);
    cb.N = N;
    cb.N0 = basis_extra_precision(P, f.ring().p(), f.ring().n());
    const ZqRing Rw = f.ring().at_precision(N + cb.N0);
    const ZqRing RN = f.ring().at_precision(N);
    cb.smith = smith_diagonalize(relation_matrix(change_precision(f, Rw), P));
    cb.ell = cb.smith.rank;
    const size_t expected = static_cast<size_t>(P.volume_x2() + 1);
    if (cb.dimension() != expected)
        fail(ErrorKind::DimensionMismatch, "cohomology has dimension " + std::to_string(cb.dimension()) +
                                               ", expected " + std::to_string(expected));
    cb.N2 = cb.smith.N2.convert(RN);
    const size_t k = cb.points.size();
    cb.basis = cb.smith.N2inv.block(cb.ell, 0, k - cb.ell, k).convert(RN);
    return cb;
}

}  // namespace npz
