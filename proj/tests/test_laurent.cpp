#include "npzeta/dense.hpp"
#include "npzeta/errors.hpp"
#include "npzeta/laurent.hpp"

#include <doctest.h>

#include <random>

using namespace npz;

namespace {

using LZ = Laurent<ZqRing>;

LZ poly(const ZqRing& R, std::initializer_list<std::pair<LatticePoint, long>> terms)
{
    LZ h(R);
    for (const auto& [e, c] : terms)
        h.add_term(e, R.from_int(c));
    return h;
}

LZ diamond(const ZqRing& R)
{
    return poly(R, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}, {{0, 0}, 1}});
}

}  // namespace

TEST_CASE("scaled partial derivatives")
{
    const ZqRing R(make_field(7, 1), 4);
    CHECK(poly(R, {{{2, -1}, 1}}).x_dx() == poly(R, {{{2, -1}, 2}}));
    CHECK(poly(R, {{{0, 0}, 5}}).y_dy().is_zero());
}

TEST_CASE("multiplication")
{
    const ZqRing R(make_field(7, 1), 4);
    const LZ a = poly(R, {{{1, 0}, 1}, {{0, 1}, 1}});
    const LZ b = poly(R, {{{1, 0}, 1}, {{0, 1}, -1}});
    CHECK(a * b == poly(R, {{{2, 0}, 1}, {{0, 2}, -1}}));
}

TEST_CASE("zero coefficients are never stored")
{
    const ZqRing R(make_field(5, 1), 2);
    LZ h = poly(R, {{{1, 1}, 3}});
    h.add_term({1, 1}, R.from_int(22));
    CHECK(h.is_zero());
    CHECK(h.size() == 0);
}

TEST_CASE("unimodular substitution")
{
    const ZqRing R(make_field(7, 1), 3);
    const LZ f = poly(R, {{{1, 0}, 1}, {{0, 1}, 2}});
    CHECK(f.apply_unimodular(UnimodularMap::swap()) == poly(R, {{{0, 1}, 1}, {{1, 0}, 2}}));
    CHECK(f.apply_unimodular(UnimodularMap::identity()) == f);

    // The Newton polygon of the image is the image of the Newton polygon.
    std::mt19937_64 rng(3);
    const UnimodularMap U{{{{2, 1}, {1, 1}}}, {1, -2}};
    for (int t = 0; t < 20; ++t) {
        LZ h(R);
        for (int k = 0; k < 6; ++k)
            h.add_term({static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3},
                       R.from_int(static_cast<long>(rng() % 6) + 1));
        NewtonPolytope P;
        try {
            P = NewtonPolytope::from_support(h.support());
        } catch (const Error&) {
            continue;
        }
        const NewtonPolytope Q = NewtonPolytope::from_support(h.apply_unimodular(U).support());
        const NewtonPolytope PU = transform(P, U);
        CHECK(Q.vertices() == PU.vertices());
    }
}

TEST_CASE("reduction to the strip")
{
    const ZqRing R(make_field(7, 1), 5);
    const LZ f = diamond(R);
    CHECK(reduce_to_strip(poly(R, {{{0, 1}, 1}}), f) ==
          poly(R, {{{1, 0}, -1}, {{-1, 0}, -1}, {{0, -1}, -1}, {{0, 0}, -1}}));
    CHECK(reduce_to_strip(poly(R, {{{0, -2}, 1}}), f) ==
          poly(R, {{{1, -1}, -1}, {{-1, -1}, -1}, {{0, -1}, -1}, {{0, 0}, -1}}));
    const LZ inside = poly(R, {{{3, 0}, 2}, {{-5, -1}, 4}});
    CHECK(reduce_to_strip(inside, f) == inside);

    // h = r + q f on random inputs, with r in the strip.
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        LZ h(R);
        for (int k = 0; k < 8; ++k)
            h.add_term({static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 13) - 6},
                       R.from_int(static_cast<long>(rng() % 1000)));
        LZ q(R);
        const LZ r = reduce_to_strip(h, f, &q);
        for (const auto& [e, c] : r.terms()) {
            CHECK(e.j >= -1);
            CHECK(e.j < 1);
        }
        CHECK((r + q * f) == h);
    }
}

TEST_CASE("the operator D")
{
    const ZqRing R(make_field(7, 1), 5);
    CHECK(D_operator(poly(R, {{{0, 0}, 1}}), diamond(R)).is_zero());
    const LZ line = poly(R, {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}});
    CHECK(D_operator(poly(R, {{{1, 0}, 1}}), line) == poly(R, {{{1, 1}, 1}}));
    CHECK(D_operator(poly(R, {{{1, 0}, 1}}), diamond(R)) == poly(R, {{{1, 1}, 1}, {{1, -1}, -1}}));
}

TEST_CASE("dense strip algebra agrees with sparse arithmetic")
{
    const ZqRing R(make_field(5, 2), 6);
    LZ f = diamond(R);
    f.set({0, 0}, R.add(R.one(), R.lift(Fq(R.spec()).gen())));
    const StripAlgebra A(R, f);
    std::mt19937_64 rng(13);
    auto random_poly = [&](int terms) {
        LZ h(R);
        for (int k = 0; k < terms; ++k) {
            ZqRing::Elem c = R.zero();
            c[0] = static_cast<unsigned long>(rng() % 15625);
            c[1] = static_cast<unsigned long>(rng() % 15625);
            h.add_term({static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 5) - 2}, c);
        }
        return h;
    };
    for (int t = 0; t < 30; ++t) {
        const LZ a = random_poly(6), b = random_poly(6);
        const LZ ab = reduce_to_strip(a * b, f);
        CHECK(A.to_sparse(A.mul(A.from_sparse(a), A.from_sparse(b))) == ab);
        CHECK(A.to_sparse(A.add(A.from_sparse(a), A.from_sparse(b))) == reduce_to_strip(a + b, f));
        CHECK(A.to_sparse(A.from_sparse(a)) == reduce_to_strip(a, f));
    }
}

TEST_CASE("dense inverse")
{
    const ZqRing R(make_field(7, 1), 8);
    const LZ f = diamond(R);
    const StripAlgebra A(R, f, -40, 40);
    const DenseLaurent u = A.from_sparse(poly(R, {{{0, 0}, 1}, {{1, 0}, 7}, {{-1, -1}, 14}}));
    const DenseLaurent v = A.inverse(u, A.one());
    CHECK(A.is_one(A.mul(u, v)));
}
