#include "npzeta/errors.hpp"
#include "npzeta/nondegen.hpp"

#include <doctest.h>

using namespace npz;

namespace {

Laurent<Fq> from_terms(const Fq& F, std::initializer_list<std::pair<LatticePoint, long>> terms)
{
    Laurent<Fq> f(F);
    for (const auto& [e, c] : terms)
        f.add_term(e, F.from_int(c));
    return f;
}

Laurent<Fq> diamond(const Fq& F)
{
    return from_terms(F, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}, {{0, 0}, 1}});
}

// Common torus zeros of f, x f_x, y f_y over F_q by enumeration.
bool has_torus_singularity(const Laurent<Fq>& f)
{
    const Fq& F = f.ring();
    const Laurent<Fq> fx = f.x_dx(), fy = f.y_dy();
    const u64 q = F.spec().q();
    for (u64 i = 1; i < q; ++i)
        for (u64 j = 1; j < q; ++j) {
            const auto x = F.elem_at(i), y = F.elem_at(j);
            if (F.is_zero(eval_laurent(f, x, y)) && F.is_zero(eval_laurent(fx, x, y)) &&
                F.is_zero(eval_laurent(fy, x, y)))
                return true;
        }
    return false;
}

}  // namespace

TEST_CASE("diamond over F_7 is nondegenerate")
{
    const Fq F(make_field(7, 1));
    const NondegeneracyReport r = is_nondegenerate(diamond(F));
    CHECK(r.nondegenerate);
    CHECK_FALSE(r.witness.has_value());
    CHECK_FALSE(has_torus_singularity(diamond(F)));
}

TEST_CASE("diamond over F_5 is degenerate at (1,1)")
{
    const Fq F(make_field(5, 1));
    const Laurent<Fq> f = diamond(F);
    const NondegeneracyReport r = is_nondegenerate(f);
    CHECK_FALSE(r.nondegenerate);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->edge == -1);
    CHECK(r.witness->degree == 1);
    CHECK(F.equal(r.witness->x, F.one()));
    CHECK(F.equal(r.witness->y, F.one()));
    CHECK(witness_holds(f, *r.witness));
    CHECK(has_torus_singularity(f));
}

TEST_CASE("a line is nondegenerate over every prime field")
{
    for (u64 p : {2, 3, 5, 7, 11, 13}) {
        const Fq F(make_field(p, 1));
        CHECK(is_nondegenerate(from_terms(F, {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}})).nondegenerate);
    }
}

TEST_CASE("an edge with a repeated root is degenerate")
{
    // The bottom edge y^0 carries (x - 1)^2 = x^2 - 2x + 1.
    const Fq F(make_field(7, 1));
    const Laurent<Fq> f = from_terms(F, {{{0, 0}, 1}, {{1, 0}, -2}, {{2, 0}, 1}, {{1, 2}, 1}});
    const NondegeneracyReport r = is_nondegenerate(f);
    CHECK_FALSE(r.nondegenerate);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->edge >= 0);
    CHECK(witness_holds(f, *r.witness));
}

TEST_CASE("an inseparable edge is degenerate")
{
    // Over F_3 the edge polynomial 1 + x^3 = (1 + x)^3 has g' == 0.
    const Fq F(make_field(3, 1));
    const Laurent<Fq> f = from_terms(F, {{{0, 0}, 1}, {{3, 0}, 1}, {{1, 2}, 1}});
    const NondegeneracyReport r = is_nondegenerate(f);
    CHECK_FALSE(r.nondegenerate);
    REQUIRE(r.witness.has_value());
    CHECK(witness_holds(f, *r.witness));
}

TEST_CASE("edge witnesses in extensions")
{
    // x^2 + x + 1 squared has its repeated roots in F_4 only.
    const Fq F(make_field(2, 1));
    const Laurent<Fq> f =
        from_terms(F, {{{0, 0}, 1}, {{2, 0}, 1}, {{4, 0}, 1}, {{1, 2}, 1}, {{2, 2}, 1}, {{3, 2}, 1}});
    const NondegeneracyReport r = is_nondegenerate(f);
    CHECK_FALSE(r.nondegenerate);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->degree == 2);
    CHECK(witness_holds(f, *r.witness));
}

TEST_CASE("input validation")
{
    const Fq F7(make_field(7, 1));
    const ValidatedInput v = validate_input(diamond(F7));
    CHECK(v.map.is_identity());
    CHECK(v.f == diamond(F7));

    const Fq F5(make_field(5, 1));
    const Laurent<Fq> g2 = from_terms(F5, {{{0, 2}, 1}, {{5, 0}, -1}, {{1, 0}, -1}, {{0, 0}, -1}});
    const ValidatedInput w = validate_input(g2);
    CHECK(w.polytope.unique_top());
    CHECK(w.polytope.unique_bottom());
    CHECK(w.polytope.origin_interior());
    CHECK(w.polytope.genus() == 2);

    try {
        validate_input(from_terms(F7, {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}}));
        FAIL("expected GenusZero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GenusZero);
    }
    try {
        validate_input(diamond(F5));
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
}

TEST_CASE("certificate and enumeration agree on small random curves")
{
    int compared = 0;
    for (u64 p : {3, 5, 7}) {
        const Fq F(make_field(p, 1));
        for (long a = 1; a < static_cast<long>(p); ++a)
            for (long b = 0; b < static_cast<long>(p); ++b) {
                const Laurent<Fq> f =
                    from_terms(F, {{{1, 0}, 1}, {{-1, 0}, a}, {{0, 1}, 1}, {{0, -1}, 1}, {{0, 0}, b}});
                try {
                    const NondegeneracyReport r = is_nondegenerate(f);
                    if (r.nondegenerate)
                        CHECK_FALSE(has_torus_singularity(f));
                    else if (r.witness && r.witness->edge == -1)
                        CHECK(witness_holds(f, *r.witness));
                    ++compared;
                } catch (const Error& e) {
                    CHECK(e.kind() == ErrorKind::ExceedsSearchBound);
                }
            }
    }
    CHECK(compared > 30);
}
