#include "npzeta/oracle.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/fqpoly.hpp"

#include <algorithm>
#include <climits>

namespace npz {

namespace {

u64 extension_size(const Fq& F, int k)
{
    if (k < 1)
        fail(ErrorKind::InvalidArgument, "extension degree must be positive");
    mpz_class Q;
    const mpz_class q = F.spec().q_mpz();
    mpz_pow_ui(Q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
    const mpz_class torus = (Q - 1) * (Q - 1);
    if (torus > 100000000)
        fail(ErrorKind::TooLarge, "torus over F_" + Q.get_str() + " has more than 10^8 points");
    return Q.get_ui();
}

Laurent<Fq> embed_laurent(const Laurent<Fq>& f, const FqExtension& ext)
{
    Laurent<Fq> r(ext.big());
    for (const auto& [e, c] : f.terms())
        r.set(e, ext.embed(c));
    return r;
}

Fq::Elem torus_pow(const Fq& G, const Fq::Elem& x, long e, u64 size)
{
    long r = e % static_cast<long>(size - 1);
    if (r < 0)
        r += static_cast<long>(size - 1);
    return G.pow(x, mpz_class(r));
}

}  // namespace

mpz_class brute_force_count(const Laurent<Fq>& f, int k, std::uint64_t seed)
{
    const u64 size = extension_size(f.ring(), k);
    if (f.is_zero())
        return mpz_class(size - 1) * (size - 1);
    const FqExtension ext(f.ring(), k);
    const Fq& G = ext.big();
    const Laurent<Fq> fe = embed_laurent(f, ext);
    long jmin = LONG_MAX, jmax = LONG_MIN;
    for (const auto& [e, c] : fe.terms()) {
        jmin = std::min(jmin, e.j);
        jmax = std::max(jmax, e.j);
    }
    mpz_class count = 0;
    for (u64 idx = 1; idx < size; ++idx) {
        const Fq::Elem x = G.elem_at(idx);
        FqPoly g(static_cast<size_t>(jmax - jmin + 1), G.zero());
        for (const auto& [e, c] : fe.terms())
            g[static_cast<size_t>(e.j - jmin)] = G.add(g[static_cast<size_t>(e.j - jmin)],
                                                       G.mul(c, torus_pow(G, x, e.i, size)));
        fqpoly::trim(G, g);
        if (g.empty()) {
            count += size - 1;
            continue;
        }
        for (const auto& y : fqpoly::roots(G, g, seed))
            if (!G.is_zero(y))
                ++count;
    }
    return count;
}

mpz_class brute_force_count_naive(const Laurent<Fq>& f, int k)
{
    const u64 size = extension_size(f.ring(), k);
    const FqExtension ext(f.ring(), k);
    const Fq& G = ext.big();
    const Laurent<Fq> fe = embed_laurent(f, ext);
    mpz_class count = 0;
    for (u64 a = 1; a < size; ++a) {
        const Fq::Elem x = G.elem_at(a);
        for (u64 b = 1; b < size; ++b)
            if (G.is_zero(eval_laurent(fe, x, G.elem_at(b))))
                ++count;
    }
    return count;
}

std::vector<mpz_class> counts_from_zeta(const ZetaResult& Z, int kmax)
{
    if (kmax < 1)
        fail(ErrorKind::InvalidArgument, "kmax must be at least 1");
    return Z.counts(kmax);
}

bool CountReport::all_match() const
{
    for (const auto& r : rows)
        if (!r.match)
            return false;
    return !rows.empty();
}

CountReport verify(const Laurent<Fq>& f, int kmax, const ZetaOptions& opt, std::uint64_t seed)
{
    CountReport rep;
    rep.zeta = compute_zeta(f, opt);
    const auto nz = counts_from_zeta(rep.zeta, kmax);
    for (int k = 1; k <= kmax; ++k) {
        CountRow row;
        row.k = k;
        row.zeta = nz[static_cast<size_t>(k - 1)];
        try {
            row.oracle = brute_force_count(f, k, seed);
        } catch (const Error& e) {
            throw e.with_stage("oracle");
        }
        row.match = row.oracle == row.zeta;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace npz
