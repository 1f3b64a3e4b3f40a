#include "npzeta/nondegen.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/fqpoly.hpp"
#include "npzeta/nullstellensatz.hpp"

#include <algorithm>
#include <numeric>

namespace npz {

namespace {

// x^e for any integer e on the torus of F.
Fq::Elem torus_pow(const Fq& F, const Fq::Elem& x, long e)
{
    mpz_class qm1 = F.spec().q_mpz() - 1;
    mpz_class ee = e;
    mpz_fdiv_r(ee.get_mpz_t(), ee.get_mpz_t(), qm1.get_mpz_t());
    return F.pow(x, ee);
}

Laurent<Fq> embed_laurent(const Laurent<Fq>& f, const FqExtension& ext)
{
    Laurent<Fq> r(ext.big());
    for (const auto& [e, c] : f.terms())
        r.set(e, ext.embed(c));
    return r;
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

std::optional<DegeneracyWitness> edge_witness(const Laurent<Fq>& f, const Edge& E, int index)
{
    const Fq& F = f.ring();
    const long l = E.length;
    const LatticePoint d{(E.to.i - E.from.i) / l, (E.to.j - E.from.j) / l};
    FqPoly g;
    for (long k = 0; k <= l; ++k)
        g.push_back(f.coeff({E.from.i + k * d.i, E.from.j + k * d.j}));
    fqpoly::trim(F, g);
    FqPoly h = fqpoly::gcd(F, g, fqpoly::deriv(F, g));
    if (fqpoly::deg(h) <= 0)
        return std::nullopt;

    long a, b;
    ext_gcd(d.i, d.j, a, b);  // a d.i + b d.j = 1
    for (int k = 1; k <= fqpoly::deg(h); ++k) {
        FqExtension ext(F, k);
        auto rts = fqpoly::roots(ext.big(), ext.embed(h));
        if (rts.empty())
            continue;
        const Fq& G = ext.big();
        DegeneracyWitness w;
        w.edge = index;
        w.degree = k;
        w.field = G.spec();
        w.x = torus_pow(G, rts.front(), a);
        w.y = torus_pow(G, rts.front(), b);
        return w;
    }
    fail(ErrorKind::Internal, "repeated edge root not found in any extension");
}

std::optional<DegeneracyWitness> interior_witness(const Laurent<Fq>& f, int bound)
{
    const Fq& F = f.ring();
    const Laurent<Fq> fx = f.x_dx(), fy = f.y_dy();
    long imin = LONG_MAX, jmin = LONG_MAX, jmax = LONG_MIN;
    for (const auto& [e, c] : f.terms()) {
        imin = std::min(imin, e.i);
        jmin = std::min(jmin, e.j);
        jmax = std::max(jmax, e.j);
    }
    const mpz_class q = F.spec().q_mpz();
    for (int k = 1; k <= bound; ++k) {
        mpz_class Q;
        mpz_pow_ui(Q.get_mpz_t(), q.get_mpz_t(), k);
        if (Q > (1 << 16))
            fail(ErrorKind::ExceedsSearchBound,
                 "degenerate polygon face, but no witness over fields of size below 2^16");
        FqExtension ext(F, k);
        const Fq& G = ext.big();
        Laurent<Fq> fe = embed_laurent(f, ext), fxe = embed_laurent(fx, ext), fye = embed_laurent(fy, ext);
        const u64 size = Q.get_ui();
        for (u64 idx = 1; idx < size; ++idx) {
            Fq::Elem x = G.elem_at(idx);
            FqPoly g(static_cast<size_t>(jmax - jmin + 1), G.zero());
            for (const auto& [e, c] : fe.terms())
                g[e.j - jmin] = G.add(g[e.j - jmin], G.mul(c, torus_pow(G, x, e.i - imin)));
            fqpoly::trim(G, g);
            if (g.empty())
                continue;
            for (const auto& y : fqpoly::roots(G, g)) {
                if (G.is_zero(y))
                    continue;
                if (G.is_zero(eval_laurent(fxe, x, y)) && G.is_zero(eval_laurent(fye, x, y))) {
                    DegeneracyWitness w;
                    w.edge = -1;
                    w.degree = k;
                    w.field = G.spec();
                    w.x = x;
                    w.y = y;
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

// 1 in the span of {f, x f_x, y f_y} times monomials of 2P, modulo p.
bool one_in_span_mod_p(const Laurent<Fq>& f, const NewtonPolytope& P)
{
    const ZqRing R(f.ring().spec(), 1);
    NssSystem S = nss_system(lift_laurent(f, R), P);
    ZqMatrix b(R, S.rows.size(), 1);
    for (size_t i = 0; i < S.rows.size(); ++i)
        if (S.rows[i] == LatticePoint{0, 0})
            b.at(i, 0) = R.one();
    try {
        solve_elimination(S.A, b, 1);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Inconsistent)
            return false;
        throw;
    }
    return true;
}

}  // namespace

std::string DegeneracyWitness::describe() const
{
    Fq G(field);
    std::string face = edge < 0 ? "polygon" : "edge " + std::to_string(edge);
    return face + ", point (" + G.to_string(x) + ", " + G.to_string(y) + "), degree " + std::to_string(degree);
}

Laurent<Fq> face_polynomial(const Laurent<Fq>& f, const NewtonPolytope& P, int edge)
{
    if (edge < 0)
        return f;
    const Edge& E = P.edges().at(static_cast<size_t>(edge));
    Laurent<Fq> r(f.ring());
    for (const auto& [e, c] : f.terms())
        if (E.eval(e) == E.N)
            r.set(e, c);
    return r;
}

bool witness_holds(const Laurent<Fq>& f, const DegeneracyWitness& w)
{
    const Fq& F = f.ring();
    NewtonPolytope P = NewtonPolytope::from_support(f.support());
    const int k = static_cast<int>(w.field.n / F.n());
    FqExtension ext(F, k);
    if (!(ext.big().spec() == w.field))
        return false;
    Laurent<Fq> face = embed_laurent(face_polynomial(f, P, w.edge), ext);
    const Fq& G = ext.big();
    if (G.is_zero(w.x) || G.is_zero(w.y))
        return false;
    return G.is_zero(eval_laurent(face, w.x, w.y)) && G.is_zero(eval_laurent(face.x_dx(), w.x, w.y)) &&
           G.is_zero(eval_laurent(face.y_dy(), w.x, w.y));
}

NondegeneracyReport is_nondegenerate(const Laurent<Fq>& f, int search_bound)
{
    NewtonPolytope P = NewtonPolytope::from_support(f.support());
    NondegeneracyReport rep;
    for (const auto& v : P.vertices())
        rep.faces.push_back({"vertex " + to_string(v), true});
    for (size_t k = 0; k < P.edges().size(); ++k) {
        auto w = edge_witness(f, P.edges()[k], static_cast<int>(k));
        rep.faces.push_back({"edge " + std::to_string(k), !w.has_value()});
        if (w && !rep.witness) {
            rep.nondegenerate = false;
            rep.witness = w;
        }
    }
    if (!rep.nondegenerate) {
        rep.faces.push_back({"interior", one_in_span_mod_p(f, P)});
        return rep;
    }
    if (one_in_span_mod_p(f, P)) {
        rep.faces.push_back({"interior", true});
        return rep;
    }
    rep.nondegenerate = false;
    rep.faces.push_back({"interior", false});
    const int bound = static_cast<int>(std::min<long>(2 * P.width() * P.height(), search_bound));
    auto w = interior_witness(f, bound);
    if (!w)
        fail(ErrorKind::ExceedsSearchBound,
             "degenerate polygon face, but no witness up to degree " + std::to_string(bound));
    rep.witness = w;
    return rep;
}

ValidatedInput validate_input(const Laurent<Fq>& f)
{
    if (f.is_zero())
        fail(ErrorKind::InvalidArgument, "zero polynomial");
    NewtonPolytope P0 = NewtonPolytope::from_support(f.support());
    ValidatedInput v;
    v.map = normalize(P0);
    v.f = f.apply_unimodular(v.map);
    v.polytope = NewtonPolytope::from_support(v.f.support());
    if (!is_normalized(v.polytope))
        fail(ErrorKind::Internal, "normalizing map failed");
    if (v.polytope.genus() < 1)
        fail(ErrorKind::GenusZero, "Newton polygon has no interior lattice point");
    // Checked in the input coordinates so a witness refers to the polynomial as given.
    v.report = is_nondegenerate(f);
    if (!v.report.nondegenerate) {
        std::string where = v.report.witness ? v.report.witness->describe() : "no witness";
        fail(ErrorKind::Degenerate, "f is degenerate with respect to its Newton polygon: " + where);
    }
    return v;
}

}  // namespace npz
