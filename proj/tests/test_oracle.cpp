#include "npzeta/curve_file.hpp"
#include "npzeta/errors.hpp"
#include "npzeta/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace npz;

namespace {

Curve load(const std::string& name)
{
    return parse_curve_file(std::string(NPZ_SOURCE_DIR) + "/tests/data/" + name);
}

}  // namespace

TEST_CASE("small brute-force counts")
{
    const Curve d = load("diamond_7.curve");
    CHECK(brute_force_count(d.f, 1) == 4);
    // (6,5) and (6,3) are among the solutions.
    const Fq& F = *d.field;
    for (auto [x, y] : {std::pair<long, long>{6, 5}, {6, 3}})
        CHECK(F.is_zero(eval_laurent(d.f, F.from_int(x), F.from_int(y))));

    const Curve line = parse_curve_string("p 2\nterm 1 0 1\nterm 0 1 1\nterm 0 0 1\n");
    CHECK(brute_force_count(line.f, 1) == 0);
    CHECK(brute_force_count(line.f, 2) == 2);
}

TEST_CASE("root counting agrees with the double loop")
{
    for (const char* name : {"diamond_7.curve", "diamond_2.curve", "genus2_5.curve", "diamond_49.curve"}) {
        const Curve c = load(name);
        const int kmax = c.field->n() > 1 ? 1 : 2;
        for (int k = 1; k <= kmax; ++k)
            CHECK(brute_force_count(c.f, k) == brute_force_count_naive(c.f, k));
    }
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        const u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
        const Fq F(make_field(p, 1));
        Laurent<Fq> f(F);
        for (int k = 0; k < 5; ++k)
            f.add_term({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2},
                       F.from_int(static_cast<long>(rng() % p)));
        if (f.is_zero())
            continue;
        for (int k = 1; k <= 2; ++k)
            CHECK(brute_force_count(f, k, t) == brute_force_count_naive(f, k));
    }
}

TEST_CASE("counts are invariant under unimodular substitution")
{
    const Curve g = load("genus2_5.curve");
    for (const UnimodularMap& U : {UnimodularMap::swap(), UnimodularMap{{{{1, 1}, {0, 1}}}, {2, -1}},
                                   UnimodularMap{{{{2, 1}, {1, 1}}}, {0, 0}}}) {
        const Laurent<Fq> h = g.f.apply_unimodular(U);
        for (int k = 1; k <= 2; ++k)
            CHECK(brute_force_count(h, k) == brute_force_count(g.f, k));
    }
}

TEST_CASE("counts from a zeta function")
{
    ZetaResult Z;
    Z.q = 2;
    Z.P = {1, -1};
    CHECK(counts_from_zeta(Z, 3) == std::vector<mpz_class>{1, 3, 7});
    Z.P = {1};
    CHECK(counts_from_zeta(Z, 3) == std::vector<mpz_class>{2, 4, 8});
    CHECK_THROWS_AS(counts_from_zeta(Z, 0), Error);
}

TEST_CASE("verification of the test curves")
{
    const CountReport d7 = verify(load("diamond_7.curve").f, 4);
    CHECK(d7.all_match());
    CHECK(d7.rows.size() == 4);
    CHECK(d7.rows[0].oracle == 4);

    const CountReport d2 = verify(load("diamond_2.curve").f, 6);
    CHECK(d2.all_match());
    std::vector<mpz_class> got;
    for (const auto& r : d2.rows)
        got.push_back(r.oracle);
    CHECK(got == std::vector<mpz_class>{0, 4, 0, 12, 40, 52});

    const CountReport g = verify(load("genus2_5.curve").f, 3);
    CHECK(g.all_match());

    const CountReport d49 = verify(load("diamond_49.curve").f, 2);
    CHECK(d49.all_match());
    CHECK(d49.rows[0].zeta == 60);
}

TEST_CASE("verification stops at pipeline errors")
{
    try {
        verify(load("diamond_5.curve").f, 2);
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
}

TEST_CASE("the enumeration guard")
{
    const Curve d = load("diamond_7.curve");
    CHECK_THROWS_AS(brute_force_count(d.f, 6), Error);
}
