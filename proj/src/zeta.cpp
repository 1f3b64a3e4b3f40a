#include "npzeta/zeta.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/nullstellensatz.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

namespace npz {

namespace {

mpz_class binomial(long n, long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class power(const mpz_class& b, long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Exponent g + R - 1 of q in chi(0).
long weight_exponent(const NewtonPolytope& P)
{
    return P.genus() + P.boundary_count() - 1;
}

}  // namespace

long precision_requirement(const NewtonPolytope& P, const PolytopeConstants& K, u64 p, int n, int N)
{
    const long d = P.volume_x2() + 1;
    const mpz_class q = power(mpz_class(static_cast<unsigned long>(p)), n);
    const int first = ceil_log(p, 2 * binomial(d, d / 2) * power(q, weight_exponent(P)));
    const long spread = std::max(std::abs(K.chi1), K.chi2);
    const long h = P.height(), w = P.width();
    const mpz_class arg = (mpz_class(9) * static_cast<unsigned long>(p) * N + 5 * static_cast<unsigned long>(p)) *
                              spread * h +
                          h * w;
    return first + static_cast<long>(n) * d * ceil_log(p, arg);
}

PrecisionPlan determine_precision(const NewtonPolytope& P, const PolytopeConstants& K, u64 p, int n)
{
    PrecisionPlan plan;
    plan.dimension = static_cast<int>(P.volume_x2() + 1);
    const mpz_class q = power(mpz_class(static_cast<unsigned long>(p)), n);
    plan.first_term = ceil_log(p, 2 * binomial(plan.dimension, plan.dimension / 2) * power(q, weight_exponent(P)));
    long N = plan.first_term;
    for (int round = 0; round < 64; ++round) {
        const long need = precision_requirement(P, K, p, n, static_cast<int>(N));
        if (N >= need) {
            // The requirement is nondecreasing in N, so walk down to the least solution.
            while (N > plan.first_term && N - 1 >= precision_requirement(P, K, p, n, static_cast<int>(N - 1)))
                --N;
            plan.N = static_cast<int>(N);
            plan.eps_bound = static_cast<int>((precision_requirement(P, K, p, n, plan.N) - plan.first_term) /
                                              (static_cast<long>(n) * plan.dimension));
            return plan;
        }
        N = need;
    }
    fail(ErrorKind::Internal, "precision iteration does not settle");
}

FrobeniusMatrix frobenius_matrix(const Laurent<ZqRing>& f, const NewtonPolytope& P, const PolytopeConstants& K,
                                 const FrobeniusLift& L, const FrobeniusAction& act, const FrobeniusKernel& E,
                                 const CohomologyBasis& basis, int threads)
{
    const StripAlgebra& A = *L.alg;
    const ZqRing& R = f.ring();
    const std::vector<LatticePoint>& pts = basis.points;
    const size_t K2 = pts.size();

    std::vector<Laurent<ZqRing>> W(K2);
    long m = 0;
    for (size_t s = 0; s < K2; ++s) {
        W[s] = A.to_sparse(A.mul(act.monomial(pts[s]), E.E));
        W[s] = change_precision(W[s], R);
        for (const auto& [e, c] : W[s].terms())
            m = std::max(m, std::abs(e.i));
    }

    const size_t T = std::clamp<size_t>(static_cast<size_t>(std::max(threads, 1)), 1, K2);
    std::vector<CohomologyReduction> parts(T);
    std::vector<std::exception_ptr> errors(T);
    auto work = [&](size_t t) {
        try {
            std::vector<Laurent<ZqRing>> batch;
            for (size_t s = t; s < K2; s += T)
                batch.push_back(W[s]);
            parts[t] = reduce_cohomology(batch, f, P, K, false, m);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < T; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    FrobeniusMatrix FM;
    FM.eps = parts.front().plan.eps;
    FM.N = R.precision();
    ZqMatrix Rmat(R, K2, K2);
    for (size_t t = 0; t < T; ++t) {
        const ZqRing& Rr = *parts[t].ring;
        size_t row = 0;
        for (size_t s = t; s < K2; s += T, ++row)
            for (size_t c = 0; c < K2; ++c)
                Rmat.at(s, c) = R.convert(parts[t].out.r[row][c], Rr);
    }
    const size_t dim = basis.dimension();
    const ZqMatrix tail = basis.N2.convert(R).block(0, basis.ell, K2, dim);
    FM.M = basis.basis.convert(R).sigma(1) * Rmat * tail;
    return FM;
}

ZqMatrix norm_matrix(const ZqMatrix& M, int n)
{
    if (n < 1)
        fail(ErrorKind::InvalidArgument, "norm of a Frobenius matrix needs n >= 1");
    int top = 0;
    while ((n >> (top + 1)) != 0)
        ++top;
    // cur = M_k with M_{a+b} = sigma^b(M_a) M_b.
    ZqMatrix cur = M;
    int k = 1;
    for (int bit = top - 1; bit >= 0; --bit) {
        cur = cur.sigma(k) * cur;
        k *= 2;
        if ((n >> bit) & 1) {
            cur = M.sigma(k) * cur;
            k += 1;
        }
    }
    return cur;
}

ZqMatrix norm_matrix_direct(const ZqMatrix& M, int n)
{
    if (n < 1)
        fail(ErrorKind::InvalidArgument, "norm of a Frobenius matrix needs n >= 1");
    ZqMatrix cur = M;
    for (int i = 1; i < n; ++i)
        cur = M.sigma(i) * cur;
    return cur;
}

std::vector<mpz_class> counts_from_numerator(const std::vector<mpz_class>& P, const mpz_class& q, int kmax)
{
    auto coeff = [&](long i) { return i < static_cast<long>(P.size()) ? P[static_cast<size_t>(i)] : mpz_class(0); };
    std::vector<mpz_class> s(static_cast<size_t>(kmax) + 1), out;
    mpz_class qk = 1;
    for (long k = 1; k <= kmax; ++k) {
        mpz_class v = -k * coeff(k);
        for (long i = 1; i < k; ++i)
            v -= coeff(i) * s[static_cast<size_t>(k - i)];
        s[static_cast<size_t>(k)] = v;
        qk *= q;
        out.push_back(qk - v);
    }
    return out;
}

std::vector<mpz_class> ZetaResult::counts(int kmax) const
{
    return counts_from_numerator(P, q, kmax);
}

ZetaResult assemble_zeta(const std::vector<ZqRing::Elem>& charpoly, int eps, int N, const NewtonPolytope& P,
                         const FieldSpec& field)
{
    const ZqRing R(field, N);
    const long d = static_cast<long>(charpoly.size()) - 1;
    if (d != P.volume_x2() + 1)
        fail(ErrorKind::DimensionMismatch, "characteristic polynomial has the wrong degree");
    const int n = field.n;
    const mpz_class q = field.q_mpz();
    const long R1 = P.boundary_count() - 1, g = P.genus();
    const mpz_class qw = power(q, weight_exponent(P));

    std::vector<mpz_class> a(static_cast<size_t>(d) + 1);
    for (long i = 0; i <= d; ++i) {
        const ZqRing::Elem& c = charpoly[static_cast<size_t>(i)];
        for (int t = 1; t < n; ++t)
            if (c[t] != 0)
                fail(ErrorKind::Internal, "characteristic polynomial leaves Z_p");
        const long shift = static_cast<long>(n) * eps * (d - i);
        const long keep = N - shift;
        // |a_i| <= C(d, i) times the product of the d - i largest eigenvalue sizes, where
        // R - 1 eigenvalues have size q and 2g have size sqrt(q); compared squared.
        const long k = d - i;
        const long full = std::min(k, R1), half = std::max(0L, k - R1);
        const mpz_class bound_sq = binomial(d, i) * binomial(d, i) * power(q, 2 * full + std::min(half, 2 * g));
        if (keep <= 0 || power(mpz_class(static_cast<unsigned long>(field.p)), 2 * keep) <= 4 * bound_sq)
            fail(ErrorKind::PrecisionExhausted,
                 "coefficient " + std::to_string(i) + " of the characteristic polynomial is not determined");
        mpz_class v = c[0];
        const mpz_class pshift = power(mpz_class(static_cast<unsigned long>(field.p)), shift);
        if (v % pshift != 0)
            fail(ErrorKind::PrecisionExhausted,
                 "coefficient " + std::to_string(i) + " is not divisible by the Frobenius scale");
        v /= pshift;
        const mpz_class mod = power(mpz_class(static_cast<unsigned long>(field.p)), keep);
        v %= mod;
        if (v < 0)
            v += mod;
        if (2 * v > mod)
            v -= mod;
        a[static_cast<size_t>(i)] = v;
    }
    if (a[static_cast<size_t>(d)] != 1)
        fail(ErrorKind::Internal, "characteristic polynomial is not monic");
    if (abs(a[0]) != qw)
        fail(ErrorKind::WeilViolation, "constant term is not +-q^(g+R-1)");

    ZetaResult Z;
    Z.field = field;
    Z.q = q;
    Z.genus = g;
    Z.boundary_points = P.boundary_count();
    Z.volume_x2 = P.volume_x2();
    Z.N = N;
    Z.eps = eps;
    const int sign = sgn(a[0]);
    mpz_class qi = 1;
    for (long i = 0; i <= d; ++i) {
        const mpz_class chi = sign * a[static_cast<size_t>(i)];
        Z.chi.push_back(chi);
        const mpz_class num = chi * qi;
        if (num % qw != 0)
            fail(ErrorKind::WeilViolation, "chi(qt) is not divisible by q^(g+R-1)");
        Z.P.push_back(num / qw);
        qi *= q;
    }
    auto problems = hygiene_problems(Z);
    if (!problems.empty())
        fail(ErrorKind::WeilViolation, problems.front());
    return Z;
}

std::vector<std::string> hygiene_problems(const ZetaResult& Z)
{
    std::vector<std::string> out;
    const long d = static_cast<long>(Z.chi.size()) - 1;
    const mpz_class qw = power(Z.q, Z.genus + Z.boundary_points - 1);
    const mpz_class window = power(mpz_class(2), d) * qw;
    for (long i = 0; i <= d; ++i)
        if (abs(Z.chi[static_cast<size_t>(i)]) > window)
            out.push_back("coefficient " + std::to_string(i) + " of chi is outside the Weil window");
    mpz_class qi = 1;
    for (long i = 0; i <= d; ++i) {
        if ((Z.chi[static_cast<size_t>(i)] * qi) % qw != 0 ||
            Z.chi[static_cast<size_t>(i)] * qi / qw != Z.P[static_cast<size_t>(i)])
            out.push_back("coefficient " + std::to_string(i) + " of P is not chi(qt)/q^(g+R-1)");
        qi *= Z.q;
    }
    const auto Nk = Z.counts(6);
    mpz_class qk = 1;
    for (size_t k = 0; k < Nk.size(); ++k) {
        qk *= Z.q;
        if (Nk[k] < 0 || Nk[k] > (qk - 1) * (qk - 1))
            out.push_back("N_" + std::to_string(k + 1) + " = " + Nk[k].get_str() + " is outside [0, (q^k-1)^2]");
    }
    return out;
}

ZetaResult compute_zeta(const Laurent<Fq>& f, const ZetaOptions& opt)
{
    std::map<std::string, double> timings;
    auto stage = [&](const char* name, auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto r = fn();
            timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return r;
        } catch (const Error& e) {
            if (!e.stage().empty())
                throw;
            throw e.with_stage(name);
        }
    };

    const FieldSpec& spec = f.ring().spec();
    const ValidatedInput v = stage("nondegen", [&] { return validate_input(f); });
    const NewtonPolytope& P = v.polytope;
    const PolytopeConstants K = stage("polytope", [&] { return constants(P); });
    const int N = stage("precision", [&] {
        if (opt.precision_override > 0)
            return opt.precision_override;
        return determine_precision(P, K, spec.p, spec.n).N;
    });
    const ZqRing R(spec, N);
    const Laurent<ZqRing> fz = lift_laurent(v.f, R);
    const NssCertificate cert = stage("nullstellensatz", [&] { return solve_nss(fz, P); });
    const FrobeniusLift L = stage("frobenius", [&] { return lift_frobenius(fz, K, cert); });
    const std::vector<LatticePoint> pts = P.dilate_points(2);
    long xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& s : pts) {
        xlo = std::min(xlo, s.i);
        xhi = std::max(xhi, s.i);
        ylo = std::min(ylo, s.j);
        yhi = std::max(yhi, s.j);
    }
    const FrobeniusAction act = stage("action", [&] { return FrobeniusAction(L, xlo, xhi, ylo, yhi); });
    const FrobeniusKernel E = stage("kernel", [&] { return precompute_E(L, act, cert, fz, K); });
    const CohomologyBasis basis = stage("basis", [&] { return cohomology_basis(fz, P, N); });
    const FrobeniusMatrix FM =
        stage("matrix", [&] { return frobenius_matrix(fz, P, K, L, act, E, basis, opt.threads); });
    const ZqMatrix Mn = stage("norm", [&] { return norm_matrix(FM.M, spec.n); });
    const std::vector<ZqRing::Elem> cp = stage("charpoly", [&] { return charpoly(Mn); });
    ZetaResult Z = stage("zeta", [&] { return assemble_zeta(cp, FM.eps, N, P, spec); });
    Z.timings_ms = std::move(timings);
    return Z;
}

}  // namespace npz
