#include "property_suites.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/frobenius.hpp"
#include "npzeta/nondegen.hpp"
#include "npzeta/nullstellensatz.hpp"
#include "npzeta/polytope.hpp"
#include "npzeta/reduction.hpp"

#include <boost/rational.hpp>

#include <algorithm>

namespace npz::props {

namespace {

using Poly = std::vector<ZqRing::Elem>;

long uniform(std::mt19937_64& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

ZqRing::Elem random_elem(const ZqRing& R, std::mt19937_64& rng)
{
    ZqRing::Elem a = R.zero();
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(static_cast<unsigned long>(rng()));
    for (auto& c : a)
        c = gr.get_z_range(R.modulus());
    return a;
}

Poly poly_mul(const ZqRing& R, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, R.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            R.addmul(r[i + j], a[i], b[j]);
    return r;
}

void poly_add(const ZqRing& R, Poly& acc, const Poly& b, bool negate)
{
    if (acc.size() < b.size())
        acc.resize(b.size(), R.zero());
    for (size_t i = 0; i < b.size(); ++i)
        acc[i] = negate ? R.sub(acc[i], b[i]) : R.add(acc[i], b[i]);
}

Poly det_expand(const ZqRing& R, const std::vector<std::vector<Poly>>& m)
{
    const size_t n = m.size();
    if (n == 1)
        return m[0][0];
    Poly det;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Poly>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        poly_add(R, det, poly_mul(R, m[0][c], det_expand(R, minor)), c % 2 == 1);
    }
    return det;
}

// Lattice point counts of the polygon with the given vertices, independent of the class.
void count_points(const std::vector<LatticePoint>& v, long& interior, long& boundary)
{
    long xmin = v[0].i, xmax = v[0].i, ymin = v[0].j, ymax = v[0].j;
    for (const auto& q : v) {
        xmin = std::min(xmin, q.i);
        xmax = std::max(xmax, q.i);
        ymin = std::min(ymin, q.j);
        ymax = std::max(ymax, q.j);
    }
    long orient = 0;
    for (size_t k = 0; k < v.size(); ++k) {
        const auto& a = v[k];
        const auto& b = v[(k + 1) % v.size()];
        orient += a.i * b.j - a.j * b.i;
    }
    const long s = orient > 0 ? 1 : -1;
    interior = boundary = 0;
    for (long x = xmin; x <= xmax; ++x)
        for (long y = ymin; y <= ymax; ++y) {
            bool inside = true, on_edge = false;
            for (size_t k = 0; k < v.size(); ++k) {
                const auto& a = v[k];
                const auto& b = v[(k + 1) % v.size()];
                const long cr = s * ((b.i - a.i) * (y - a.j) - (b.j - a.j) * (x - a.i));
                if (cr < 0)
                    inside = false;
                else if (cr == 0)
                    on_edge = true;
            }
            if (!inside)
                continue;
            if (on_edge)
                ++boundary;
            else
                ++interior;
        }
}

struct TestCurve {
    std::shared_ptr<const Fq> field;
    ValidatedInput v;
};

TestCurve test_curve(bool genus2)
{
    TestCurve c;
    auto F = std::make_shared<Fq>(make_field(genus2 ? 5 : 7, 1));
    c.field = F;
    Laurent<Fq> f(*F);
    if (genus2) {
        f.set({0, 2}, F->one());
        f.set({5, 0}, F->neg(F->one()));
        f.set({1, 0}, F->neg(F->one()));
        f.set({0, 0}, F->neg(F->one()));
    } else {
        for (auto e : {LatticePoint{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}})
            f.set(e, F->one());
    }
    c.v = validate_input(f);
    return c;
}

}  // namespace

void SuiteResult::check(bool good, const std::string& what)
{
    ++cases;
    if (!good) {
        if (failures == 0)
            first_failure = what;
        ++failures;
    }
}

ZqMatrix random_matrix(const ZqRing& R, size_t rows, size_t cols, std::mt19937_64& rng)
{
    ZqMatrix A(R, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            A.at(i, j) = random_elem(R, rng);
    return A;
}

std::vector<ZqRing::Elem> cofactor_charpoly(const ZqMatrix& A)
{
    const ZqRing& R = A.ring();
    const size_t n = A.rows();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            m[i][j] = {R.neg(A.at(i, j))};
            if (i == j)
                m[i][j].push_back(R.one());
        }
    Poly d = det_expand(R, m);
    d.resize(n + 1, R.zero());
    return d;
}

RandomCurve random_nondegenerate(std::mt19937_64& rng, const std::vector<u64>& primes, long box)
{
    for (;;) {
        const u64 p = primes[static_cast<size_t>(uniform(rng, 0, static_cast<long>(primes.size()) - 1))];
        auto F = std::make_shared<Fq>(make_field(p, 1));
        Laurent<Fq> f(*F);
        const long terms = uniform(rng, 4, 7);
        for (long t = 0; t < terms; ++t)
            f.set({uniform(rng, -box, box), uniform(rng, -box, box)},
                  F->from_int(uniform(rng, 1, static_cast<long>(p) - 1)));
        NewtonPolytope P0;
        try {
            P0 = NewtonPolytope::from_support(f.support());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DimensionTooLow)
                throw;
            continue;
        }
        if (P0.genus() < 1)
            continue;
        try {
            if (!is_nondegenerate(f, 1).nondegenerate)
                continue;
        } catch (const Error&) {
            continue;
        }
        RandomCurve c;
        c.field = F;
        c.original = f;
        c.normalized = f.apply_unimodular(normalize(P0));
        return c;
    }
}

SuiteResult pick_identity(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Pick identity Vol = g + R/2 - 1";
    std::mt19937_64 rng(seed);
    while (res.cases < cases) {
        std::vector<LatticePoint> pts;
        const long k = uniform(rng, 3, 7);
        for (long t = 0; t < k; ++t)
            pts.push_back({uniform(rng, -6, 6), uniform(rng, -6, 6)});
        NewtonPolytope P;
        try {
            P = NewtonPolytope::from_support(pts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DimensionTooLow)
                throw;
            continue;
        }
        const auto& v = P.vertices();
        long area2 = 0;
        for (size_t t = 0; t < v.size(); ++t)
            area2 += v[t].i * v[(t + 1) % v.size()].j - v[t].j * v[(t + 1) % v.size()].i;
        const boost::rational<long> vol(std::abs(area2), 2);
        long g = 0, R = 0;
        count_points(v, g, R);
        const bool good = vol == boost::rational<long>(g) + boost::rational<long>(R, 2) - 1 &&
                          g == P.genus() && R == P.boundary_count() && vol == P.volume();
        res.check(good, "polygon with " + std::to_string(v.size()) + " vertices starting at " + to_string(v[0]));
    }
    return res;
}

SuiteResult nullstellensatz_residual(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Nullstellensatz residual";
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (res.cases < cases && attempts++ < 20 * cases) {
        const RandomCurve c = random_nondegenerate(rng, {2, 3, 5, 7, 11, 13}, 2);
        const int N = static_cast<int>(uniform(rng, 1, 8));
        const ZqRing R(c.field->spec(), N);
        const Laurent<ZqRing> fz = lift_laurent(c.normalized, R);
        const NewtonPolytope P = NewtonPolytope::from_support(fz.support());
        NssCertificate cert;
        try {
            cert = solve_nss(fz, P);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NoUnitPivot)
                continue;
            res.check(false, std::string("solve failed: ") + e.what());
            continue;
        }
        res.check(nss_residual(cert, fz) == Laurent<ZqRing>::constant(R, R.one()),
                  c.original.to_string() + " at N = " + std::to_string(N));
    }
    return res;
}

SuiteResult frobenius_residual(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Frobenius lift residual and inverses";
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (res.cases < cases && attempts++ < 20 * cases) {
        const RandomCurve c = random_nondegenerate(rng, {3, 5, 7}, 1);
        const int N = static_cast<int>(uniform(rng, 2, 5));
        const ZqRing R(c.field->spec(), N);
        const Laurent<ZqRing> fz = lift_laurent(c.normalized, R);
        const NewtonPolytope P = NewtonPolytope::from_support(fz.support());
        try {
            const NssCertificate cert = solve_nss(fz, P);
            const FrobeniusLift L = lift_frobenius(fz, constants(P), cert);
            const StripAlgebra& A = *L.alg;
            const bool good = A.is_zero(npz::frobenius_residual(L, fz)) && A.is_one(A.mul(L.Zx, L.Zx_inv)) &&
                              A.is_one(A.mul(L.Zy, L.Zy_inv));
            res.check(good, c.original.to_string() + " at N = " + std::to_string(N));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NoUnitPivot)
                continue;
            res.check(false, c.original.to_string() + ": " + e.what());
        }
    }
    return res;
}

SuiteResult truncation_soundness(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Frobenius lift truncation soundness";
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (res.cases < cases && attempts++ < 20 * cases) {
        const RandomCurve c = random_nondegenerate(rng, {3, 5, 7}, 1);
        const int N = static_cast<int>(uniform(rng, 2, 5));
        const ZqRing R(c.field->spec(), N);
        const Laurent<ZqRing> fz = lift_laurent(c.normalized, R);
        const NewtonPolytope P = NewtonPolytope::from_support(fz.support());
        try {
            const NssCertificate cert = solve_nss(fz, P);
            const PolytopeConstants K = constants(P);
            const long p = static_cast<long>(c.field->p());
            const FrobeniusLift small = lift_frobenius(fz, K, cert);
            const FrobeniusLift large = lift_frobenius(fz, K, cert, uniform(rng, 1, 4) * p);
            const long lo = small.alg->window_lo(), hi = small.alg->window_hi();
            auto clipped = [&](const DenseLaurent& a) {
                Laurent<ZqRing> s = large.alg->to_sparse(a);
                s.retain([&](const LatticePoint& e) { return e.i >= lo && e.i <= hi; });
                return s;
            };
            const bool good = clipped(large.Zx) == small.alg->to_sparse(small.Zx) &&
                              clipped(large.Zy) == small.alg->to_sparse(small.Zy);
            res.check(good, c.original.to_string() + " at N = " + std::to_string(N));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NoUnitPivot)
                continue;
            res.check(false, c.original.to_string() + ": " + e.what());
        }
    }
    return res;
}

SuiteResult reduction_recombination(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Reduction recombination";
    std::mt19937_64 rng(seed);
    const TestCurve curves[2] = {test_curve(false), test_curve(true)};
    while (res.cases < cases) {
        const TestCurve& tc = curves[res.cases % 2];
        const NewtonPolytope& P = tc.v.polytope;
        const int N = static_cast<int>(uniform(rng, 1, 12));
        const ZqRing R(tc.field->spec(), N);
        const Laurent<ZqRing> fz = lift_laurent(tc.v.f, R);
        Laurent<ZqRing> h(R);
        const long terms = uniform(rng, 1, 20);
        for (long t = 0; t < terms; ++t)
            h.set({uniform(rng, -8, 8), uniform(rng, P.d_b(), P.d_t() - 1)}, random_elem(R, rng));
        const std::string label = h.to_string() + " at N = " + std::to_string(N);
        CohomologyReduction cr;
        try {
            cr = reduce_cohomology({h}, fz, P, constants(P), true);
        } catch (const Error& e) {
            res.check(false, label + ": " + e.what());
            continue;
        }
        const ZqRing& Rc = *cr.ring;
        const Laurent<ZqRing> fc = change_precision(fz, Rc);
        Laurent<ZqRing> diff = change_precision(h, Rc).scaled(Rc.mul_pow(Rc.one(), cr.plan.eps));
        diff = diff - D_operator(cr.out.g[0], fc);
        const auto pts = P.dilate_points(2);
        for (size_t s = 0; s < pts.size(); ++s)
            diff.sub_term(pts[s], cr.out.r[0][s]);
        Laurent<ZqRing> q(Rc);
        const Laurent<ZqRing> rem = reduce_to_strip(diff, fc, &q);
        res.check(rem.is_zero() && (diff - q * fc).is_zero(), label);
    }
    return res;
}

SuiteResult charpoly_cofactor(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Characteristic polynomial against cofactor expansion";
    std::mt19937_64 rng(seed);
    const ZqRing R(make_field(7, 1), 4);
    while (res.cases < cases) {
        const size_t n = static_cast<size_t>(uniform(rng, 1, 5));
        ZqMatrix A = random_matrix(R, n, n, rng);
        // Some entries divisible by 7 so that pivoting is exercised.
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (uniform(rng, 0, 2) == 0)
                    A.at(i, j) = R.mul_pow(A.at(i, j), static_cast<int>(uniform(rng, 1, 4)));
        const auto a = charpoly(A), b = cofactor_charpoly(A);
        bool good = a.size() == b.size();
        for (size_t i = 0; good && i < a.size(); ++i)
            good = R.equal(a[i], b[i]);
        res.check(good, A.to_string());
    }
    return res;
}

SuiteResult smith_reconstruction(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Smith form reconstruction";
    std::mt19937_64 rng(seed);
    const u64 primes[] = {2, 3, 5, 7};
    while (res.cases < cases) {
        const u64 p = primes[uniform(rng, 0, 3)];
        const int n = static_cast<int>(uniform(rng, 1, 2));
        const ZqRing R(make_field(p, n), static_cast<int>(uniform(rng, 1, 8)));
        const size_t rows = static_cast<size_t>(uniform(rng, 1, 7)), cols = static_cast<size_t>(uniform(rng, 1, 7));
        // Product of two random factors through a narrow middle gives low rank.
        const size_t mid = static_cast<size_t>(uniform(rng, 1, 7));
        ZqMatrix B = random_matrix(R, rows, mid, rng), C = random_matrix(R, mid, cols, rng);
        for (size_t i = 0; i < mid; ++i)
            for (size_t j = 0; j < cols; ++j)
                C.at(i, j) = R.mul_pow(C.at(i, j), static_cast<int>(uniform(rng, 0, 3)));
        const ZqMatrix A = B * C;
        const SmithData S = smith_diagonalize(A);
        ZqMatrix D(R, rows, cols);
        for (size_t k = 0; k < S.diag.size(); ++k)
            D.at(k, k) = S.diag[k];
        const bool good = (S.N1inv * D * S.N2inv).equal(A) && (S.N1 * A * S.N2).equal(D) &&
                          (S.N1 * S.N1inv).equal(ZqMatrix::identity(R, rows)) &&
                          (S.N2 * S.N2inv).equal(ZqMatrix::identity(R, cols));
        res.check(good, A.to_string());
    }
    return res;
}

SuiteResult basis_dimension(int cases, std::uint64_t seed)
{
    SuiteResult res;
    res.name = "Cohomology basis dimension";
    std::mt19937_64 rng(seed);
    const TestCurve curves[2] = {test_curve(false), test_curve(true)};
    while (res.cases < cases) {
        const TestCurve& tc = curves[res.cases % 2];
        const NewtonPolytope& P = tc.v.polytope;
        const int N = static_cast<int>(uniform(rng, 1, 60));
        const ZqRing R(tc.field->spec(), N);
        const CohomologyBasis cb = cohomology_basis(lift_laurent(tc.v.f, R), P, N);
        const size_t expected = static_cast<size_t>(2 * P.genus() + P.boundary_count() - 1);
        res.check(cb.dimension() == expected && cb.dimension() == static_cast<size_t>(P.volume_x2() + 1) &&
                      cb.basis.rows() == expected,
                  "N = " + std::to_string(N));
    }
    return res;
}

std::vector<SuiteResult> all_suites()
{
    return {pick_identity(),          nullstellensatz_residual(), frobenius_residual(),
            reduction_recombination(), charpoly_cofactor(),        smith_reconstruction(),
            basis_dimension(),         truncation_soundness()};
}

}  // namespace npz::props
