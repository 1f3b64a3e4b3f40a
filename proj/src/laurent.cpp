#include "npzeta/laurent.hpp"

namespace npz {

Laurent<Fq> reduce_mod_p(const Laurent<ZqRing>& h, const Fq& F)
{
    Laurent<Fq> r(F);
    for (const auto& [q, c] : h.terms())
        r.set(q, h.ring().reduce(c));
    return r;
}

Laurent<ZqRing> lift_laurent(const Laurent<Fq>& h, const ZqRing& R)
{
    Laurent<ZqRing> r(R);
    for (const auto& [q, c] : h.terms())
        r.set(q, R.lift(c));
    return r;
}

Laurent<ZqRing> sigma_laurent(const Laurent<ZqRing>& h, int i)
{
    const ZqRing& R = h.ring();
    Laurent<ZqRing> r(R);
    for (const auto& [q, c] : h.terms())
        r.set(q, R.sigma(c, i));
    return r;
}

Laurent<ZqRing> change_precision(const Laurent<ZqRing>& h, const ZqRing& R)
{
    Laurent<ZqRing> r(R);
    for (const auto& [q, c] : h.terms())
        r.set(q, R.convert(c, h.ring()));
    return r;
}

Fq::Elem eval_laurent(const Laurent<Fq>& h, const Fq::Elem& x, const Fq::Elem& y)
{
    const Fq& F = h.ring();
    const mpz_class qm1 = F.spec().q_mpz() - 1;
    Fq::Elem acc = F.zero();
    for (const auto& [e, c] : h.terms()) {
        // Negative exponents via x^(q-1) = 1 on the torus.
        mpz_class ei = e.i, ej = e.j;
        mpz_fdiv_r(ei.get_mpz_t(), ei.get_mpz_t(), qm1.get_mpz_t());
        mpz_fdiv_r(ej.get_mpz_t(), ej.get_mpz_t(), qm1.get_mpz_t());
        acc = F.add(acc, F.mul(c, F.mul(F.pow(x, ei), F.pow(y, ej))));
    }
    return acc;
}

}  // namespace npz
