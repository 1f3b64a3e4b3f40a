#include "npzeta/fqpoly.hpp"

#include "npzeta/errors.hpp"

#include <algorithm>
#include <random>

namespace npz::fqpoly {

void trim(const Fq& F, FqPoly& a)
{
    while (!a.empty() && F.is_zero(a.back()))
        a.pop_back();
}

int deg(const FqPoly& a)
{
    return static_cast<int>(a.size()) - 1;
}

FqPoly constant(const Fq& F, const Fq::Elem& c)
{
    if (F.is_zero(c))
        return {};
    return {c};
}

FqPoly monomial(const Fq& F, const Fq::Elem& c, int d)
{
    if (F.is_zero(c))
        return {};
    FqPoly r(d + 1, F.zero());
    r[d] = c;
    return r;
}

FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] = F.add(r[i], b[i]);
    trim(F, r);
    return r;
}

FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] = F.sub(r[i], b[i]);
    trim(F, r);
    return r;
}

FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    FqPoly r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i]))
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(F, r);
    return r;
}

FqPoly scale(const Fq& F, const FqPoly& a, const Fq::Elem& c)
{
    FqPoly r;
    r.reserve(a.size());
    for (const auto& x : a)
        r.push_back(F.mul(x, c));
    trim(F, r);
    return r;
}

void divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem)
{
    if (b.empty())
        fail(ErrorKind::Internal, "polynomial division by zero");
    rem = a;
    trim(F, rem);
    int db = deg(b);
    if (deg(rem) < db) {
        quo.clear();
        return;
    }
    quo.assign(deg(rem) - db + 1, F.zero());
    Fq::Elem lead_inv = F.inv(b.back());
    for (int d = deg(rem); d >= db; --d) {
        if (F.is_zero(rem[d]))
            continue;
        Fq::Elem c = F.mul(rem[d], lead_inv);
        quo[d - db] = c;
        for (int k = 0; k <= db; ++k)
            rem[d - db + k] = F.sub(rem[d - db + k], F.mul(c, b[k]));
    }
    trim(F, rem);
    trim(F, quo);
}

FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly q, r;
    divmod(F, a, b, q, r);
    return r;
}

FqPoly monic(const Fq& F, const FqPoly& a)
{
    if (a.empty())
        return a;
    return scale(F, a, F.inv(a.back()));
}

FqPoly gcd(const Fq& F, FqPoly a, FqPoly b)
{
    trim(F, a);
    trim(F, b);
    while (!b.empty()) {
        FqPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

FqPoly mulmod(const Fq& F, const FqPoly& a, const FqPoly& b, const FqPoly& m)
{
    return mod(F, mul(F, a, b), m);
}

FqPoly powmod(const Fq& F, const FqPoly& base, const mpz_class& e, const FqPoly& m)
{
    FqPoly r = mod(F, constant(F, F.one()), m);
    FqPoly b = mod(F, base, m);
    if (sgn(e) == 0)
        return r;
    for (size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
        r = mulmod(F, r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(F, r, b, m);
    }
    return r;
}

FqPoly deriv(const Fq& F, const FqPoly& a)
{
    if (a.size() <= 1)
        return {};
    FqPoly r(a.size() - 1, F.zero());
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.scale(a[i], i % F.p());
    trim(F, r);
    return r;
}

Fq::Elem eval(const Fq& F, const FqPoly& a, const Fq::Elem& x)
{
    Fq::Elem acc = F.zero();
    for (size_t i = a.size(); i-- > 0;)
        acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

bool is_one(const Fq& F, const FqPoly& a)
{
    return a.size() == 1 && F.equal(a[0], F.one());
}

FqPoly x_pow_qk(const Fq& F, int k, const FqPoly& m)
{
    FqPoly x = mod(F, monomial(F, F.one(), 1), m);
    mpz_class q = F.spec().q_mpz();
    for (int i = 0; i < k; ++i)
        x = powmod(F, x, q, m);
    return x;
}

namespace {

// Split a monic squarefree product of distinct linear factors into its roots.
void split_linear(const Fq& F, const FqPoly& g, std::mt19937_64& rng, std::vector<Fq::Elem>& out)
{
    int d = deg(g);
    if (d <= 0)
        return;
    if (d == 1) {
        out.push_back(F.neg(g[0]));
        return;
    }
    const u64 p = F.p();
    const int n = F.n();
    mpz_class q = F.spec().q_mpz();
    std::uniform_int_distribution<u64> dist(0, p - 1);
    while (true) {
        FqPoly u(2, F.zero());
        // Random c x + a: with c fixed to 1 the trace map cannot separate roots of equal trace.
        for (int i = 0; i < n; ++i) {
            u[0][i] = dist(rng);
            u[1][i] = dist(rng);
        }
        if (F.is_zero(u[1]))
            continue;
        FqPoly w;
        if (p == 2) {
            // Absolute trace map u + u^2 + ... + u^(2^(n-1)).
            FqPoly t = mod(F, u, g);
            w = t;
            for (int i = 1; i < n; ++i) {
                t = mulmod(F, t, t, g);
                w = add(F, w, t);
            }
        } else {
            w = powmod(F, u, (q - 1) / 2, g);
            w = sub(F, w, constant(F, F.one()));
        }
        FqPoly h = gcd(F, g, w);
        int dh = deg(h);
        if (dh > 0 && dh < d) {
            FqPoly quo, rem;
            divmod(F, g, h, quo, rem);
            split_linear(F, h, rng, out);
            split_linear(F, monic(F, quo), rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Fq::Elem> roots(const Fq& F, const FqPoly& a, std::uint64_t seed)
{
    FqPoly m = a;
    trim(F, m);
    if (deg(m) <= 0)
        return {};
    m = monic(F, m);
    FqPoly xq = x_pow_qk(F, 1, m);
    FqPoly g = gcd(F, m, sub(F, xq, monomial(F, F.one(), 1)));
    std::vector<Fq::Elem> out;
    std::mt19937_64 rng(seed);
    split_linear(F, g, rng, out);
    std::sort(out.begin(), out.end(),
              [&](const Fq::Elem& x, const Fq::Elem& y) { return F.index_of(x) < F.index_of(y); });
    return out;
}

std::vector<std::pair<int, FqPoly>> distinct_degree(const Fq& F, const FqPoly& a)
{
    std::vector<std::pair<int, FqPoly>> out;
    FqPoly f = monic(F, a);
    FqPoly x = monomial(F, F.one(), 1);
    FqPoly xq = mod(F, x, f);
    mpz_class q = F.spec().q_mpz();
    for (int d = 1; 2 * d <= deg(f); ++d) {
        xq = powmod(F, xq, q, f);
        FqPoly g = gcd(F, f, sub(F, xq, x));
        if (deg(g) > 0) {
            out.emplace_back(d, g);
            FqPoly quo, rem;
            divmod(F, f, g, quo, rem);
            f = monic(F, quo);
            xq = mod(F, xq, f);
        }
    }
    if (deg(f) > 0)
        out.emplace_back(deg(f), f);
    return out;
}

int strip_t(const Fq& F, FqPoly& a)
{
    trim(F, a);
    int k = 0;
    while (!a.empty() && F.is_zero(a[0])) {
        a.erase(a.begin());
        ++k;
    }
    return k;
}

}  // namespace npz::fqpoly

namespace npz {

FqExtension::FqExtension(const Fq& base, int k)
    : base_(&base), k_(k), big_(make_field(base.p(), base.n() * k))
{
    const int n = base.n();
    if (n == 1) {
        gen_image_ = big_.zero();
    } else {
        FqPoly r;
        for (u64 c : base.spec().rbar) {
            Fq::Elem e = big_.zero();
            e[0] = c;
            r.push_back(e);
        }
        auto rts = fqpoly::roots(big_, r);
        if (rts.empty())
            fail(ErrorKind::Internal, "base modulus has no root in the extension");
        gen_image_ = rts.front();
    }
    gen_pows_.resize(n);
    gen_pows_[0] = big_.one();
    for (int i = 1; i < n; ++i)
        gen_pows_[i] = big_.mul(gen_pows_[i - 1], gen_image_);
}

Fq::Elem FqExtension::embed(const Fq::Elem& a) const
{
    Fq::Elem acc = big_.zero();
    for (int i = 0; i < base_->n(); ++i)
        if (a[i])
            acc = big_.add(acc, big_.scale(gen_pows_[i], a[i]));
    return acc;
}

FqPoly FqExtension::embed(const FqPoly& a) const
{
    FqPoly r;
    r.reserve(a.size());
    for (const auto& c : a)
        r.push_back(embed(c));
    return r;
}

}  // namespace npz
