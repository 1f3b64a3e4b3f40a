#include "npzeta/frobenius.hpp"

#include "npzeta/errors.hpp"

#include <algorithm>

namespace npz {

namespace {

// Lift of the p-th power of the reduction of h: sum frob(c) x^{pi} y^{pj}.
Laurent<ZqRing> lift_pth_power(const Laurent<ZqRing>& h)
{
    const ZqRing& R = h.ring();
    const Fq F(R.spec());
    const long p = static_cast<long>(R.p());
    Laurent<ZqRing> r(R);
    for (const auto& [e, c] : h.terms()) {
        Fq::Elem cb = F.frob(R.reduce(c));
        if (!F.is_zero(cb))
            r.set({p * e.i, p * e.j}, R.lift(cb));
    }
    return r;
}

// Precisions k_0 = 1 < k_1 < ... < k_m = N with k_{i+1} <= 2 k_i.
std::vector<int> doubling_schedule(int N)
{
    std::vector<int> s;
    for (int k = N; k > 1; k = (k + 1) / 2)
        s.push_back(k);
    s.push_back(1);
    std::reverse(s.begin(), s.end());
    return s;
}

struct NewtonSystem {
    struct Term {
        long eu, ev;  // exponents of U and V
        LatticePoint e;
        ZqRing::Elem c;
    };
    std::vector<Term> terms;
    long max_u = 0, max_v = 0;
};

NewtonSystem newton_system(const Laurent<ZqRing>& f)
{
    const ZqRing& R = f.ring();
    long a = 0, b = 0;
    for (const auto& [e, c] : f.terms()) {
        a = std::max(a, -e.i);
        b = std::max(b, -e.j);
    }
    NewtonSystem S;
    for (const auto& [e, c] : f.terms()) {
        S.terms.push_back({e.i + a, e.j + b, e, R.sigma(c)});
        S.max_u = std::max(S.max_u, e.i + a);
        S.max_v = std::max(S.max_v, e.j + b);
    }
    return S;
}

std::vector<DenseLaurent> powers(const StripAlgebra& A, const DenseLaurent& x, long n)
{
    std::vector<DenseLaurent> p{A.one()};
    for (long i = 1; i <= n; ++i)
        p.push_back(i == 1 ? x : A.mul(p.back(), x));
    return p;
}

// G(Z) and, when wanted, G'(Z) in the algebra A.
void evaluate_G(const StripAlgebra& A, const NewtonSystem& S, const DenseLaurent& Z, const DenseLaurent& dx,
                const DenseLaurent& dy, DenseLaurent* G, DenseLaurent* Gp)
{
    const ZqRing& R = A.ring();
    const long p = static_cast<long>(R.p());
    const DenseLaurent U = A.add(A.one(), A.mul(dx, Z));
    const DenseLaurent V = A.add(A.one(), A.mul(dy, Z));
    auto Up = powers(A, U, S.max_u);
    auto Vp = powers(A, V, S.max_v);
    DenseLaurent g = A.zero(), su = A.zero(), sv = A.zero();
    for (const auto& t : S.terms) {
        const DenseLaurent X = A.monomial(p * t.e.i, p * t.e.j, t.c);
        if (G)
            g = A.add(g, A.mul(X, A.mul(Up[t.eu], Vp[t.ev])));
        if (Gp) {
            if (t.eu > 0)
                su = A.add(su, A.mul_int(A.mul(X, A.mul(Up[t.eu - 1], Vp[t.ev])), t.eu));
            if (t.ev > 0)
                sv = A.add(sv, A.mul_int(A.mul(X, A.mul(Up[t.eu], Vp[t.ev - 1])), t.ev));
        }
    }
    if (G)
        *G = std::move(g);
    if (Gp)
        *Gp = A.add(A.mul(dx, su), A.mul(dy, sv));
}

// Newton inverse of a unit congruent to 1 mod p, with precision doubling.
DenseLaurent inverse_doubling(const StripAlgebra& top, const Laurent<ZqRing>& f, const DenseLaurent& a)
{
    const ZqRing& R = top.ring();
    DenseLaurent u = top.one();
    for (int k : doubling_schedule(R.precision())) {
        if (k == 1)
            continue;
        StripAlgebra A(R.at_precision(k), f, top.window_lo(), top.window_hi());
        DenseLaurent ak = A.convert(a);
        u = A.convert(u);
        u = A.add(u, A.mul(u, A.sub(A.one(), A.mul(ak, u))));
    }
    return top.inverse(a, u, 8);
}

}  // namespace

FrobeniusLift lift_frobenius(const Laurent<ZqRing>& f, const PolytopeConstants& K, const NssCertificate& cert,
                             long extra_budget)
{
    const ZqRing& R = f.ring();
    const int N = R.precision();
    const long p = static_cast<long>(R.p());
    FrobeniusLift L;
    L.N = N;
    L.budget = 9 * p * N + 5 * p + extra_budget;
    auto top = std::make_shared<StripAlgebra>(R, f, L.budget * K.chi1, L.budget * K.chi2);
    L.alg = top;
    L.delta = lift_pth_power(change_precision(cert.gamma, R));
    L.delta_x = lift_pth_power(change_precision(cert.alpha, R));
    L.delta_y = lift_pth_power(change_precision(cert.beta, R));
    const DenseLaurent dx = top->from_sparse(L.delta_x), dy = top->from_sparse(L.delta_y);

    const NewtonSystem S = newton_system(f);
    DenseLaurent Z = top->zero(), u = top->one();
    const auto sched = doubling_schedule(N);
    for (size_t i = 1; i < sched.size(); ++i) {
        const int k = sched[i], kh = sched[i - 1];
        // u only has to invert G'(Z) modulo p^kh for the step to double the precision.
        StripAlgebra Ah(R.at_precision(kh), f, top->window_lo(), top->window_hi());
        DenseLaurent Gp;
        evaluate_G(Ah, S, Ah.convert(Z), Ah.convert(dx), Ah.convert(dy), nullptr, &Gp);
        if (kh == 1 && !Ah.is_one(Gp))
            fail(ErrorKind::NonUnitDerivative, "derivative of the Frobenius equation is not 1 mod p");
        u = Ah.convert(u);
        u = Ah.add(u, Ah.mul(u, Ah.sub(Ah.one(), Ah.mul(Gp, u))));

        StripAlgebra Ak(R.at_precision(k), f, top->window_lo(), top->window_hi());
        DenseLaurent Zk = Ak.convert(Z), G;
        evaluate_G(Ak, S, Zk, Ak.convert(dx), Ak.convert(dy), &G, nullptr);
        Z = Ak.sub(Zk, Ak.mul(G, Ak.convert(u)));
    }
    // Window truncation can leave a residue; keep iterating at full precision.
    const int max_rounds = 8;
    for (;;) {
        DenseLaurent G, Gp;
        evaluate_G(*top, S, Z, dx, dy, &G, &Gp);
        if (top->is_zero(G))
            break;
        if (++L.newton_rounds > max_rounds)
            fail(ErrorKind::Internal, "Frobenius lift iteration did not converge");
        u = top->convert(u);
        u = top->add(u, top->mul(u, top->sub(top->one(), top->mul(Gp, u))));
        Z = top->sub(Z, top->mul(G, u));
    }
    L.Z = Z;
    L.Zx = top->add(top->one(), top->mul(dx, Z));
    L.Zy = top->add(top->one(), top->mul(dy, Z));
    L.Zx_inv = inverse_doubling(*top, f, L.Zx);
    L.Zy_inv = inverse_doubling(*top, f, L.Zy);
    return L;
}

FrobeniusAction::FrobeniusAction(const FrobeniusLift& L, long xlo, long xhi, long ylo, long yhi) : L_(&L)
{
    const StripAlgebra& A = *L.alg;
    const long p = static_cast<long>(A.ring().p());
    zx_[0] = A.one();
    for (long i = 1; i <= xhi; ++i)
        zx_[i] = i == 1 ? L.Zx : A.mul(zx_[i - 1], L.Zx);
    for (long i = -1; i >= xlo; --i)
        zx_[i] = i == -1 ? L.Zx_inv : A.mul(zx_[i + 1], L.Zx_inv);
    std::map<long, DenseLaurent> zy;
    zy[0] = A.one();
    for (long j = 1; j <= yhi; ++j)
        zy[j] = j == 1 ? L.Zy : A.mul(zy[j - 1], L.Zy);
    for (long j = -1; j >= ylo; --j)
        zy[j] = j == -1 ? L.Zy_inv : A.mul(zy[j + 1], L.Zy_inv);
    for (long j = std::min(ylo, 0L); j <= std::max(yhi, 0L); ++j)
        yf_[j] = A.mul(A.monomial(0, p * j, A.ring().one()), zy[j]);
}

const DenseLaurent& FrobeniusAction::zx_pow(long i) const
{
    auto it = zx_.find(i);
    if (it == zx_.end())
        fail(ErrorKind::InvalidArgument, "power of Z_x outside the cached range");
    return it->second;
}

const DenseLaurent& FrobeniusAction::y_factor(long j) const
{
    auto it = yf_.find(j);
    if (it == yf_.end())
        fail(ErrorKind::InvalidArgument, "power of Z_y outside the cached range");
    return it->second;
}

DenseLaurent FrobeniusAction::monomial(const LatticePoint& s) const
{
    const StripAlgebra& A = *L_->alg;
    const long p = static_cast<long>(A.ring().p());
    return A.mul(A.shift(zx_pow(s.i), p * s.i, 0), y_factor(s.j));
}

DenseLaurent FrobeniusAction::apply(const Laurent<ZqRing>& h) const
{
    const StripAlgebra& A = *L_->alg;
    const ZqRing& R = A.ring();
    const long p = static_cast<long>(R.p());
    std::map<long, DenseLaurent> rows;
    for (const auto& [e, c] : h.terms()) {
        DenseLaurent t = A.scale(A.shift(zx_pow(e.i), p * e.i, 0), R.sigma(R.convert(c, h.ring())));
        auto it = rows.find(e.j);
        if (it == rows.end())
            rows.emplace(e.j, std::move(t));
        else
            it->second = A.add(it->second, t);
    }
    DenseLaurent out = A.zero();
    for (const auto& [j, r] : rows)
        out = A.add(out, A.mul(r, y_factor(j)));
    return out;
}

FrobeniusKernel precompute_E(const FrobeniusLift& L, const FrobeniusAction& act, const NssCertificate& cert,
                             const Laurent<ZqRing>& f, const PolytopeConstants& K)
{
    const StripAlgebra& A = *L.alg;
    const ZqRing& R = A.ring();
    const long p = static_cast<long>(R.p());
    const DenseLaurent Fa = act.apply(cert.alpha), Fb = act.apply(cert.beta);
    const DenseLaurent P = A.constant(R.from_int(p));
    // Logarithmic derivatives of x^p Z_x and y^p Z_y, minus the p from the monomial.
    const DenseLaurent lxx = A.mul(A.x_dx(L.Zx), L.Zx_inv);
    const DenseLaurent lyx = A.mul(A.y_dy(L.Zx), L.Zx_inv);
    const DenseLaurent lxy = A.mul(A.x_dx(L.Zy), L.Zy_inv);
    const DenseLaurent lyy = A.mul(A.y_dy(L.Zy), L.Zy_inv);
    const DenseLaurent t1 = A.sub(A.mul(Fb, A.add(P, lxx)), A.mul(Fa, lxy));
    const DenseLaurent t2 = A.sub(A.mul(Fb, lyx), A.mul(Fa, A.add(P, lyy)));
    const DenseLaurent yfy = A.from_sparse(f.y_dy()), xfx = A.from_sparse(f.x_dx());
    DenseLaurent E = A.sub(A.mul(yfy, t1), A.mul(xfx, t2));

    FrobeniusKernel k;
    k.budget = 9 * p * L.N + 3 * p + (L.budget - (9 * p * L.N + 5 * p));
    StripAlgebra AE(R, f, k.budget * K.chi1, k.budget * K.chi2);
    k.E = AE.convert(E);
    return k;
}

DenseLaurent frobenius_residual(const FrobeniusLift& L, const Laurent<ZqRing>& f)
{
    long xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& [e, c] : f.terms()) {
        xlo = std::min(xlo, e.i);
        xhi = std::max(xhi, e.i);
        ylo = std::min(ylo, e.j);
        yhi = std::max(yhi, e.j);
    }
    FrobeniusAction act(L, xlo, xhi, ylo, yhi);
    return act.apply(f);
}

}  // namespace npz
