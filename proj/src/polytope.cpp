#include "npzeta/polytope.hpp"

#include "npzeta/errors.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <tuple>

namespace npz {

namespace {

long floordiv(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long ceildiv(long a, long b)
{
    return -floordiv(-a, b);
}

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b)
{
    return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

long ext_gcd(long a, long b, long& x, long& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

long ceil_rational(const boost::rational<long>& r)
{
    return ceildiv(r.numerator(), r.denominator());
}

long floor_rational(const boost::rational<long>& r)
{
    return floordiv(r.numerator(), r.denominator());
}

}  // namespace

std::string to_string(const LatticePoint& q)
{
    return "(" + std::to_string(q.i) + "," + std::to_string(q.j) + ")";
}

NewtonPolytope NewtonPolytope::from_support(std::vector<LatticePoint> pts)
{
    if (pts.empty())
        fail(ErrorKind::DimensionTooLow, "empty support");
    std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Andrew's monotone chain, counter-clockwise, collinear points dropped.
    std::vector<LatticePoint> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0)
            --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    if (hull.size() < 3)
        fail(ErrorKind::DimensionTooLow, "Newton polytope is a point or a segment");

    std::reverse(hull.begin(), hull.end());
    auto start = std::min_element(hull.begin(), hull.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return a.j != b.j ? a.j > b.j : a.i < b.i;
    });
    std::rotate(hull.begin(), start, hull.end());

    NewtonPolytope P;
    P.vertices_ = hull;
    const size_t nv = hull.size();
    long area2 = 0;
    for (size_t e = 0; e < nv; ++e) {
        const LatticePoint& a = hull[e];
        const LatticePoint& b = hull[(e + 1) % nv];
        long dx = b.i - a.i, dy = b.j - a.j;
        long g = std::gcd(std::abs(dx), std::abs(dy));
        Edge ed;
        ed.from = a;
        ed.to = b;
        ed.a = dy / g;
        ed.b = -dx / g;
        ed.N = ed.a * a.i + ed.b * a.j;
        ed.length = g;
        P.edges_.push_back(ed);
        P.boundary_ += g;
        area2 += a.i * b.j - b.i * a.j;
    }
    P.vol2_ = std::abs(area2);

    long ylo = P.d_b(), yhi = P.d_t();
    for (long j = ylo; j <= yhi; ++j) {
        auto [lo, hi] = P.row_range(j, 1);
        for (long i = lo; i <= hi; ++i) {
            LatticePoint q{i, j};
            P.points_.push_back(q);
            if (P.contains_interior(q))
                P.interior_.push_back(q);
        }
    }
    return P;
}

bool NewtonPolytope::contains(const LatticePoint& q) const
{
    return in_dilate(q, 1);
}

bool NewtonPolytope::contains_interior(const LatticePoint& q) const
{
    for (const auto& e : edges_)
        if (e.eval(q) <= e.N)
            return false;
    return true;
}

bool NewtonPolytope::in_dilate(const LatticePoint& q, long m) const
{
    for (const auto& e : edges_)
        if (e.eval(q) < m * e.N)
            return false;
    return true;
}

std::pair<long, long> NewtonPolytope::row_range(long j, long m) const
{
    long lo = LONG_MIN / 4, hi = LONG_MAX / 4;
    for (const auto& e : edges_) {
        long rhs = m * e.N - e.b * j;  // need a*x >= rhs
        if (e.a > 0)
            lo = std::max(lo, ceildiv(rhs, e.a));
        else if (e.a < 0)
            hi = std::min(hi, floordiv(rhs, e.a));
        else if (0 < rhs)
            return {1, 0};
    }
    return {lo, hi};
}

std::vector<LatticePoint> NewtonPolytope::dilate_points(long m) const
{
    std::vector<LatticePoint> out;
    long ylo = std::min(m * d_b(), m * d_t());
    long yhi = std::max(m * d_b(), m * d_t());
    for (long j = ylo; j <= yhi; ++j) {
        auto [lo, hi] = row_range(j, m);
        for (long i = lo; i <= hi; ++i)
            out.push_back({i, j});
    }
    return out;
}

boost::rational<long> NewtonPolytope::level(const LatticePoint& q) const
{
    boost::rational<long> best(0);
    for (const auto& e : edges_) {
        if (e.N >= 0)
            fail(ErrorKind::InvalidArgument, "level requires the origin in the interior");
        boost::rational<long> r(e.eval(q), e.N);
        if (r > best)
            best = r;
    }
    return best;
}

bool NewtonPolytope::unique_top() const
{
    long t = vertices_.front().j;
    return std::count_if(vertices_.begin(), vertices_.end(), [&](const LatticePoint& v) { return v.j == t; }) == 1;
}

bool NewtonPolytope::unique_bottom() const
{
    long b = bottom().j;
    return std::count_if(vertices_.begin(), vertices_.end(), [&](const LatticePoint& v) { return v.j == b; }) == 1;
}

LatticePoint NewtonPolytope::top() const
{
    return vertices_.front();
}

LatticePoint NewtonPolytope::bottom() const
{
    return *std::min_element(vertices_.begin(), vertices_.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return a.j != b.j ? a.j < b.j : a.i < b.i;
    });
}

long NewtonPolytope::min_x() const
{
    long r = LONG_MAX;
    for (const auto& v : vertices_)
        r = std::min(r, v.i);
    return r;
}

long NewtonPolytope::max_x() const
{
    long r = LONG_MIN;
    for (const auto& v : vertices_)
        r = std::max(r, v.i);
    return r;
}

long NewtonPolytope::width() const
{
    return max_x() - min_x();
}

NewtonPolytope transform(const NewtonPolytope& P, const UnimodularMap& U)
{
    std::vector<LatticePoint> pts;
    for (const auto& v : P.vertices())
        pts.push_back(U.apply(v));
    return NewtonPolytope::from_support(pts);
}

bool is_normalized(const NewtonPolytope& P)
{
    return P.unique_top() && P.unique_bottom() && P.origin_interior();
}

namespace {

// Largest and smallest x-exponent that strip reduction of the monomials of m*Gamma can
// produce, propagating supports through top and bottom eliminations.
std::pair<long, long> strip_extent(const NewtonPolytope& P, long m)
{
    const LatticePoint T = P.top(), B = P.bottom();
    const long dt = T.j, db = B.j;
    const long ylo = m * db, yhi = m * dt;
    const long rows = yhi - ylo + 1;
    std::vector<long> lo(rows, LONG_MAX), hi(rows, LONG_MIN);
    for (long j = ylo; j <= yhi; ++j) {
        auto [a, b] = P.row_range(j, m);
        if (a <= b) {
            lo[j - ylo] = a;
            hi[j - ylo] = b;
        }
    }
    const auto& pts = P.lattice_points();
    for (long j = yhi; j >= dt; --j) {
        long r = j - ylo;
        if (lo[r] > hi[r])
            continue;
        for (const auto& q : pts) {
            if (q == T)
                continue;
            long t = j - dt + q.j - ylo;
            lo[t] = std::min(lo[t], lo[r] - T.i + q.i);
            hi[t] = std::max(hi[t], hi[r] - T.i + q.i);
        }
    }
    for (long j = ylo; j < db; ++j) {
        long r = j - ylo;
        if (lo[r] > hi[r])
            continue;
        for (const auto& q : pts) {
            if (q == B)
                continue;
            long t = j - db + q.j - ylo;
            lo[t] = std::min(lo[t], lo[r] - B.i + q.i);
            hi[t] = std::max(hi[t], hi[r] - B.i + q.i);
        }
    }
    long xmin = LONG_MAX, xmax = LONG_MIN;
    for (long j = db; j < dt; ++j) {
        long r = j - ylo;
        if (lo[r] > hi[r])
            continue;
        xmin = std::min(xmin, lo[r]);
        xmax = std::max(xmax, hi[r]);
    }
    return {xmin, xmax};
}

// x-coordinate where the line through v and w meets y = 0 (w.j != v.j).
boost::rational<long> axis_crossing(const LatticePoint& v, const LatticePoint& w)
{
    return boost::rational<long>(v.i) + boost::rational<long>((w.i - v.i) * (-v.j), w.j - v.j);
}

}  // namespace

PolytopeConstants constants(const NewtonPolytope& P)
{
    if (!is_normalized(P))
        fail(ErrorKind::InvalidArgument, "constants require a normalized polytope");
    PolytopeConstants c;
    const auto& V = P.vertices();
    const size_t nv = V.size();
    const LatticePoint T = P.top(), B = P.bottom();
    size_t ib = std::find(V.begin(), V.end(), B) - V.begin();
    const long dt = T.j, db = B.j;

    // Asymptotic slopes: the edges leaving the top and bottom vertices bound the strip
    // representatives of large dilates.
    boost::rational<long> right = std::max(axis_crossing(T, V[1]), axis_crossing(B, V[ib - 1]));
    boost::rational<long> left = std::min(axis_crossing(T, V[nv - 1]), axis_crossing(B, V[(ib + 1) % nv]));
    c.chi2 = std::max(0L, ceil_rational(right));
    c.chi1 = std::min(0L, floor_rational(left));

    const long m0 = 4 * (P.height() + P.width()) + 8;
    for (long m = 1; m <= m0; ++m) {
        auto [xmin, xmax] = strip_extent(P, m);
        if (xmax != LONG_MIN)
            c.chi2 = std::max(c.chi2, ceildiv(xmax, m));
        if (xmin != LONG_MAX)
            c.chi1 = std::min(c.chi1, floordiv(xmin, m));
    }

    c.lambda_kappa = 1;
    for (const auto& e : P.edges()) {
        long ck = -e.N + (-db) * std::max(e.b, 0L) + (dt - 1) * std::max(-e.b, 0L) + std::abs(e.a);
        c.lambda_kappa = std::max(c.lambda_kappa, ceildiv(ck, -e.N));
        c.M = std::max(c.M, std::abs(e.a));
        c.Delta = std::max({c.Delta, -(dt - 1) * e.b, -db * e.b});
    }
    c.kappa1 = c.lambda_kappa * c.chi1;
    c.kappa2 = c.lambda_kappa * c.chi2;
    return c;
}

namespace {

struct Candidate {
    UnimodularMap map;
    long cost = 0;
    long width = 0;
    long shear = 0;
};

long candidate_cost(const NewtonPolytope& Q)
{
    PolytopeConstants c = constants(Q);
    long h = Q.height();
    return h * (c.chi2 - c.chi1) + h * (c.kappa2 - c.kappa1);
}

// Best translation of an already linearly-normalized polygon.
bool best_translation(const NewtonPolytope& L, const UnimodularMap& lin, long shear, Candidate& best, bool& have)
{
    bool any = false;
    for (const auto& t : L.interior_points()) {
        UnimodularMap U = lin;
        U.shift = {lin.shift.i - t.i, lin.shift.j - t.j};
        UnimodularMap shift_only;
        shift_only.shift = {-t.i, -t.j};
        NewtonPolytope Q = transform(L, shift_only);
        Candidate cand{U, candidate_cost(Q), Q.width(), std::abs(shear)};
        any = true;
        if (!have || std::tie(cand.cost, cand.width, cand.shear) < std::tie(best.cost, best.width, best.shear)) {
            best = cand;
            have = true;
        }
    }
    return any;
}

}  // namespace

UnimodularMap normalize(const NewtonPolytope& P)
{
    if (P.genus() == 0)
        fail(ErrorKind::GenusZero, "Newton polytope has no interior lattice point");
    if (P.unique_top() && P.unique_bottom()) {
        if (P.origin_interior())
            return UnimodularMap::identity();
        Candidate best;
        bool have = false;
        best_translation(P, UnimodularMap::identity(), 0, best, have);
        return best.map;
    }

    // Primitive functionals with a unique maximizing and minimizing vertex; the new
    // y-coordinate is the one of minimal spread.
    const auto& V = P.vertices();
    const long bound = P.width() + P.height() + 2;
    long best_h = LONG_MAX;
    std::vector<std::pair<long, long>> phis;
    for (long v = 0; v <= bound; ++v) {
        for (long u = -bound; u <= bound; ++u) {
            if (v == 0 && u <= 0)
                continue;
            if (std::gcd(std::abs(u), v) != 1)
                continue;
            long mx = LONG_MIN, mn = LONG_MAX;
            int cmx = 0, cmn = 0;
            for (const auto& q : V) {
                long val = u * q.i + v * q.j;
                if (val > mx) {
                    mx = val;
                    cmx = 1;
                } else if (val == mx) {
                    ++cmx;
                }
                if (val < mn) {
                    mn = val;
                    cmn = 1;
                } else if (val == mn) {
                    ++cmn;
                }
            }
            if (cmx != 1 || cmn != 1)
                continue;
            long h = mx - mn;
            if (h < best_h) {
                best_h = h;
                phis.clear();
            }
            if (h == best_h)
                phis.emplace_back(u, v);
        }
    }
    if (phis.empty())
        fail(ErrorKind::Internal, "no separating functional found");
    std::sort(phis.begin(), phis.end(), [](const auto& a, const auto& b) {
        long na = std::abs(a.first) + std::abs(a.second), nb = std::abs(b.first) + std::abs(b.second);
        return na != nb ? na < nb : a < b;
    });

    Candidate best;
    bool have = false;
    const long K = P.width() + P.height();
    for (const auto& [u, v] : phis) {
        long s, t;
        ext_gcd(v, u, s, t);  // s*v + t*u = 1
        long alpha = s, beta = -t;
        for (long k = 0; k <= K; ++k) {
            for (long sgn : {1L, -1L}) {
                if (k == 0 && sgn < 0)
                    continue;
                long sh = sgn * k;
                UnimodularMap lin;
                lin.m = {{{alpha + sh * u, beta + sh * v}, {u, v}}};
                NewtonPolytope L = transform(P, lin);
                best_translation(L, lin, sh, best, have);
            }
        }
    }
    return best.map;
}

}  // namespace npz
