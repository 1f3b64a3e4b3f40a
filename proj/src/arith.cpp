#include "npzeta/arith.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/fqpoly.hpp"

#include <algorithm>
#include <sstream>

namespace npz {

bool is_prime(u64 p)
{
    if (p < 2)
        return false;
    for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (p % d == 0)
            return p == d;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    u64 d = p - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, p);
        if (x == 1 || x == p - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, p);
            if (x == p - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m)
{
    a %= m;
    if (a == 0)
        fail(ErrorKind::NonUnit, "zero has no inverse mod " + std::to_string(m));
    return powmod(a, m - 2, m);
}

u64 FieldSpec::q() const
{
    u64 r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > UINT64_MAX / p)
            fail(ErrorKind::TooLarge, "field size exceeds 64 bits");
        r *= p;
    }
    return r;
}

mpz_class FieldSpec::q_mpz() const
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(n));
    return r;
}

bool is_irreducible(u64 p, const std::vector<u64>& poly)
{
    int n = static_cast<int>(poly.size()) - 1;
    if (n < 1 || poly.back() % p == 0)
        return false;
    if (n == 1)
        return true;
    Fq Fp(FieldSpec{p, 1, {0, 1}});
    FqPoly r;
    for (u64 c : poly)
        r.push_back(Fq::Elem{c % p});
    r = fqpoly::monic(Fp, r);
    FqPoly x = fqpoly::monomial(Fp, Fp.one(), 1);
    FqPoly xp = x;
    for (int i = 1; i <= n / 2; ++i) {
        xp = fqpoly::powmod(Fp, xp, mpz_class(static_cast<unsigned long>(p)), r);
        FqPoly g = fqpoly::gcd(Fp, r, fqpoly::sub(Fp, xp, x));
        if (fqpoly::deg(g) != 0)
            return false;
    }
    return true;
}

std::vector<u64> find_irreducible(u64 p, int n)
{
    if (!is_prime(p))
        fail(ErrorKind::InvalidArgument, "p is not prime");
    if (n < 1)
        fail(ErrorKind::InvalidArgument, "extension degree must be positive");
    if (n == 1)
        return {0, 1};
    // Odometer over (c0, ..., c_{n-1}) with c0 most significant.
    std::vector<u64> c(n + 1, 0);
    c[n] = 1;
    while (true) {
        if (c[0] != 0 && is_irreducible(p, c))
            return c;
        int pos = n - 1;
        while (pos >= 0) {
            if (++c[pos] < p)
                break;
            c[pos] = 0;
            --pos;
        }
        if (pos < 0)
            fail(ErrorKind::Internal, "no irreducible polynomial found");
    }
}

FieldSpec make_field(u64 p, int n)
{
    return FieldSpec{p, n, find_irreducible(p, n)};
}

// ---------------------------------------------------------------------------
// Fq

Fq::Fq(FieldSpec spec) : spec_(std::move(spec))
{
    if (static_cast<int>(spec_.rbar.size()) != spec_.n + 1 || spec_.rbar.back() != 1)
        fail(ErrorKind::InvalidArgument, "field modulus must be monic of degree n");
}

Fq::Elem Fq::one() const
{
    Elem e(spec_.n, 0);
    e[0] = 1 % spec_.p;
    return e;
}

Fq::Elem Fq::from_int(long v) const
{
    Elem e(spec_.n, 0);
    long m = static_cast<long>(spec_.p);
    long r = v % m;
    if (r < 0)
        r += m;
    e[0] = static_cast<u64>(r);
    return e;
}

Fq::Elem Fq::gen() const
{
    Elem e(spec_.n, 0);
    if (spec_.n == 1)
        e[0] = (spec_.p - spec_.rbar[0]) % spec_.p;
    else
        e[1] = 1;
    return e;
}

bool Fq::is_zero(const Elem& a) const
{
    for (u64 c : a)
        if (c)
            return false;
    return true;
}

Fq::Elem Fq::add(const Elem& a, const Elem& b) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i) {
        u64 s = a[i] + b[i];
        r[i] = s >= spec_.p ? s - spec_.p : s;
    }
    return r;
}

Fq::Elem Fq::sub(const Elem& a, const Elem& b) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + spec_.p - b[i];
    return r;
}

Fq::Elem Fq::neg(const Elem& a) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = a[i] ? spec_.p - a[i] : 0;
    return r;
}

Fq::Elem Fq::scale(const Elem& a, u64 c) const
{
    Elem r(spec_.n);
    c %= spec_.p;
    for (int i = 0; i < spec_.n; ++i)
        r[i] = mulmod(a[i], c, spec_.p);
    return r;
}

Fq::Elem Fq::mul(const Elem& a, const Elem& b) const
{
    const int n = spec_.n;
    const u64 p = spec_.p;
    if (n == 1)
        return Elem{mulmod(a[0], b[0], p)};
    std::vector<u64> t(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i])
            continue;
        for (int j = 0; j < n; ++j)
            t[i + j] = (t[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    for (int d = 2 * n - 2; d >= n; --d) {
        u64 c = t[d];
        if (!c)
            continue;
        t[d] = 0;
        for (int k = 0; k < n; ++k) {
            u64 s = mulmod(c, spec_.rbar[k], p);
            t[d - n + k] = (t[d - n + k] + p - s) % p;
        }
    }
    t.resize(n);
    return t;
}

Fq::Elem Fq::inv(const Elem& a) const
{
    if (is_zero(a))
        fail(ErrorKind::NonUnit, "inverse of zero in F_q");
    if (spec_.n == 1)
        return Elem{invmod(a[0], spec_.p)};
    // Extended Euclid over F_p between a and rbar.
    Fq Fp(FieldSpec{spec_.p, 1, {0, 1}});
    FqPoly r0, r1, s0, s1;
    for (u64 c : spec_.rbar)
        r0.push_back(Elem{c});
    for (u64 c : a)
        r1.push_back(Elem{c});
    fqpoly::trim(Fp, r1);
    s0 = {};
    s1 = fqpoly::constant(Fp, Fp.one());
    while (fqpoly::deg(r1) > 0) {
        FqPoly qq, rr;
        fqpoly::divmod(Fp, r0, r1, qq, rr);
        FqPoly s2 = fqpoly::sub(Fp, s0, fqpoly::mul(Fp, qq, s1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    u64 c = invmod(r1[0][0], spec_.p);
    Elem out(spec_.n, 0);
    for (size_t i = 0; i < s1.size() && i < out.size(); ++i)
        out[i] = mulmod(s1[i][0], c, spec_.p);
    return out;
}

Fq::Elem Fq::pow(const Elem& a, const mpz_class& e) const
{
    Elem r = one();
    Elem b = a;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0)
        return r;
    for (size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mul(r, b);
    }
    return r;
}

Fq::Elem Fq::frob(const Elem& a, int i) const
{
    Elem r = a;
    for (int k = 0; k < i; ++k)
        r = pow(r, mpz_class(static_cast<unsigned long>(spec_.p)));
    return r;
}

u64 Fq::index_of(const Elem& a) const
{
    u64 idx = 0;
    for (int i = spec_.n - 1; i >= 0; --i)
        idx = idx * spec_.p + a[i];
    return idx;
}

Fq::Elem Fq::elem_at(u64 idx) const
{
    Elem e(spec_.n);
    for (int i = 0; i < spec_.n; ++i) {
        e[i] = idx % spec_.p;
        idx /= spec_.p;
    }
    return e;
}

std::string Fq::to_string(const Elem& a) const
{
    if (spec_.n == 1)
        return std::to_string(a[0]);
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < spec_.n; ++i)
        os << (i ? " " : "") << a[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// ZqRing

ZqRing::ZqRing(FieldSpec spec, int N) : spec_(std::move(spec)), N_(N)
{
    if (N_ < 1)
        fail(ErrorKind::InvalidArgument, "precision must be positive");
    ppow_.resize(N_ + 1);
    ppow_[0] = 1;
    for (int k = 1; k <= N_; ++k)
        ppow_[k] = ppow_[k - 1] * static_cast<unsigned long>(spec_.p);
    pN_ = ppow_[N_];
    r_.resize(spec_.n + 1);
    for (int i = 0; i <= spec_.n; ++i)
        r_[i] = static_cast<unsigned long>(spec_.rbar[i]);

    const int n = spec_.n;
    sigma_pow_.assign(n, {});
    if (n == 1) {
        sigma_pow_[0] = {one()};
        return;
    }
    // sigma^i([X]) is the root of r congruent to X^(p^i) mod p; refine by Newton.
    Fq F(spec_);
    std::vector<mpz_class> dr(n);
    for (int k = 1; k <= n; ++k)
        dr[k - 1] = r_[k] * k;
    auto eval_poly = [&](const std::vector<mpz_class>& c, const Elem& x) {
        Elem acc = zero();
        for (size_t k = c.size(); k-- > 0;) {
            acc = mul(acc, x);
            acc[0] += c[k];
            normalize(acc);
        }
        return acc;
    };
    for (int i = 0; i < n; ++i) {
        Fq::Elem xb = F.frob(F.gen(), i);
        Elem x = lift(xb);
        Elem u = lift(F.inv(reduce(eval_poly(dr, x))));
        // Newton with a simultaneously refined inverse of r'(x).
        int prec = 1;
        while (prec < N_) {
            prec = std::min(2 * prec, N_);
            Elem rx = eval_poly(r_, x);
            Elem drx = eval_poly(dr, x);
            // u <- u (2 - drx u)
            Elem t = sub(from_int(2), mul(drx, u));
            u = mul(u, t);
            x = sub(x, mul(rx, u));
        }
        // Final refinement pass to be safe at full precision.
        for (int pass = 0; pass < 2; ++pass) {
            Elem rx = eval_poly(r_, x);
            if (is_zero(rx))
                break;
            Elem drx = eval_poly(dr, x);
            Elem t = sub(from_int(2), mul(drx, u));
            u = mul(u, t);
            x = sub(x, mul(rx, u));
        }
        std::vector<Elem> pw(n);
        pw[0] = one();
        for (int k = 1; k < n; ++k)
            pw[k] = mul(pw[k - 1], x);
        sigma_pow_[i] = std::move(pw);
    }
}

const mpz_class& ZqRing::p_power(int k) const
{
    if (k < 0 || k > N_)
        fail(ErrorKind::Internal, "p_power out of range");
    return ppow_[k];
}

ZqRing::Elem ZqRing::one() const
{
    Elem e(spec_.n);
    e[0] = 1;
    normalize(e);
    return e;
}

ZqRing::Elem ZqRing::from_int(long v) const
{
    Elem e(spec_.n);
    e[0] = v;
    normalize(e);
    return e;
}

ZqRing::Elem ZqRing::from_mpz(const mpz_class& v) const
{
    Elem e(spec_.n);
    e[0] = v;
    normalize(e);
    return e;
}

ZqRing::Elem ZqRing::lift(const Fq::Elem& a) const
{
    Elem e(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        e[i] = static_cast<unsigned long>(a[i]);
    normalize(e);
    return e;
}

Fq::Elem ZqRing::reduce(const Elem& a) const
{
    Fq::Elem e(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        e[i] = mpz_fdiv_ui(a[i].get_mpz_t(), spec_.p);
    return e;
}

bool ZqRing::is_zero(const Elem& a) const
{
    for (const auto& c : a)
        if (sgn(c) != 0)
            return false;
    return true;
}

bool ZqRing::is_unit(const Elem& a) const
{
    for (const auto& c : a)
        if (mpz_fdiv_ui(c.get_mpz_t(), spec_.p) != 0)
            return true;
    return false;
}

bool ZqRing::equal(const Elem& a, const Elem& b) const
{
    for (int i = 0; i < spec_.n; ++i) {
        mpz_class d = a[i] - b[i];
        if (!mpz_divisible_p(d.get_mpz_t(), pN_.get_mpz_t()))
            return false;
    }
    return true;
}

void ZqRing::normalize(Elem& a) const
{
    for (auto& c : a)
        if (sgn(c) < 0 || c >= pN_)
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pN_.get_mpz_t());
}

ZqRing::Elem ZqRing::add(const Elem& a, const Elem& b) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i) {
        r[i] = a[i] + b[i];
        if (r[i] >= pN_)
            r[i] -= pN_;
    }
    return r;
}

ZqRing::Elem ZqRing::sub(const Elem& a, const Elem& b) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i) {
        r[i] = a[i] - b[i];
        if (sgn(r[i]) < 0)
            r[i] += pN_;
    }
    return r;
}

ZqRing::Elem ZqRing::neg(const Elem& a) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = sgn(a[i]) ? pN_ - a[i] : mpz_class(0);
    return r;
}

void ZqRing::reduce_poly(std::vector<mpz_class>& t) const
{
    const int n = spec_.n;
    for (int d = static_cast<int>(t.size()) - 1; d >= n; --d) {
        if (sgn(t[d]) == 0)
            continue;
        mpz_fdiv_r(t[d].get_mpz_t(), t[d].get_mpz_t(), pN_.get_mpz_t());
        for (int k = 0; k < n; ++k)
            if (sgn(r_[k]))
                mpz_submul(t[d - n + k].get_mpz_t(), t[d].get_mpz_t(), r_[k].get_mpz_t());
        t[d] = 0;
    }
    t.resize(n);
    for (auto& c : t)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pN_.get_mpz_t());
}

ZqRing::Elem ZqRing::mul(const Elem& a, const Elem& b) const
{
    const int n = spec_.n;
    if (n == 1) {
        Elem r(1);
        mpz_mul(r[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
        mpz_fdiv_r(r[0].get_mpz_t(), r[0].get_mpz_t(), pN_.get_mpz_t());
        return r;
    }
    std::vector<mpz_class> t(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (int j = 0; j < n; ++j)
            mpz_addmul(t[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    reduce_poly(t);
    return t;
}

ZqRing::Elem ZqRing::mul_int(const Elem& a, long c) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = a[i] * c;
    normalize(r);
    return r;
}

ZqRing::Elem ZqRing::mul_mpz(const Elem& a, const mpz_class& c) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = a[i] * c;
    normalize(r);
    return r;
}

void ZqRing::add_to(Elem& acc, const Elem& a) const
{
    for (int i = 0; i < spec_.n; ++i) {
        acc[i] += a[i];
        if (acc[i] >= pN_)
            acc[i] -= pN_;
    }
}

void ZqRing::addmul(Elem& acc, const Elem& a, const Elem& b) const
{
    if (spec_.n == 1) {
        mpz_addmul(acc[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
        mpz_fdiv_r(acc[0].get_mpz_t(), acc[0].get_mpz_t(), pN_.get_mpz_t());
        return;
    }
    Elem t = mul(a, b);
    add_to(acc, t);
}

void ZqRing::submul(Elem& acc, const Elem& a, const Elem& b) const
{
    if (spec_.n == 1) {
        mpz_submul(acc[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
        mpz_fdiv_r(acc[0].get_mpz_t(), acc[0].get_mpz_t(), pN_.get_mpz_t());
        return;
    }
    Elem t = mul(a, b);
    acc = sub(acc, t);
}

ZqRing::Elem ZqRing::inv(const Elem& a) const
{
    if (!is_unit(a))
        fail(ErrorKind::NonUnit, "element " + to_string(a) + " is not a unit");
    if (spec_.n == 1) {
        Elem r(1);
        mpz_invert(r[0].get_mpz_t(), a[0].get_mpz_t(), pN_.get_mpz_t());
        return r;
    }
    Fq F(spec_);
    Elem x = lift(F.inv(reduce(a)));
    Elem two = from_int(2);
    // Each step doubles the number of correct p-adic digits.
    for (int prec = 1; prec < N_; prec *= 2)
        x = mul(x, sub(two, mul(a, x)));
    return x;
}

int ZqRing::valuation(const Elem& a) const
{
    int v = N_;
    for (const auto& c : a) {
        if (sgn(c) == 0)
            continue;
        int w = 0;
        mpz_class t = c;
        while (w < v && mpz_divisible_ui_p(t.get_mpz_t(), spec_.p)) {
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), spec_.p);
            ++w;
        }
        v = std::min(v, w);
    }
    return v;
}

ZqRing::Elem ZqRing::div_pow(const Elem& a, int v) const
{
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), ppow_[v].get_mpz_t());
    return r;
}

ZqRing::Elem ZqRing::mul_pow(const Elem& a, int v) const
{
    if (v >= N_)
        return zero();
    Elem r(spec_.n);
    for (int i = 0; i < spec_.n; ++i)
        r[i] = a[i] * ppow_[v];
    normalize(r);
    return r;
}

ZqRing::Elem ZqRing::convert(const Elem& a, const ZqRing&) const
{
    Elem r = a;
    normalize(r);
    return r;
}

ZqRing::Elem ZqRing::sigma(const Elem& a, int i) const
{
    const int n = spec_.n;
    if (n == 1)
        return a;
    i %= n;
    if (i < 0)
        i += n;
    if (i == 0)
        return a;
    std::vector<mpz_class> acc(n);
    const auto& pw = sigma_pow_[i];
    for (int k = 0; k < n; ++k) {
        if (sgn(a[k]) == 0)
            continue;
        for (int j = 0; j < n; ++j)
            mpz_addmul(acc[j].get_mpz_t(), a[k].get_mpz_t(), pw[k][j].get_mpz_t());
    }
    for (auto& c : acc)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pN_.get_mpz_t());
    return acc;
}

mpz_class ZqRing::symmetric(const Elem& a) const
{
    mpz_class v = a[0];
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), pN_.get_mpz_t());
    mpz_class half = pN_ / 2;
    if (v > half)
        v -= pN_;
    return v;
}

std::string ZqRing::to_string(const Elem& a) const
{
    if (spec_.n == 1)
        return a[0].get_str();
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < spec_.n; ++i)
        os << (i ? " " : "") << a[i].get_str();
    os << "]";
    return os.str();
}

}  // namespace npz
