#include "property_suites.hpp"

#include "npzeta/curve_file.hpp"
#include "npzeta/errors.hpp"
#include "npzeta/zeta.hpp"

#include <doctest.h>

using namespace npz;

namespace {

Curve load(const std::string& name)
{
    return parse_curve_file(std::string(NPZ_SOURCE_DIR) + "/tests/data/" + name);
}

std::vector<mpz_class> ints(std::initializer_list<long> v)
{
    std::vector<mpz_class> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("precision plan")
{
    for (const auto& [file, want] : {std::pair<const char*, int>{"diamond_7.curve", 31}, {"diamond_2.curve", 69}}) {
        const Curve c = load(file);
        const ValidatedInput v = validate_input(c.f);
        const PolytopeConstants K = constants(v.polytope);
        const FieldSpec& s = c.field->spec();
        const PrecisionPlan plan = determine_precision(v.polytope, K, s.p, s.n);
        CHECK(plan.N == want);
        CHECK(plan.dimension == 5);
        CHECK(precision_requirement(v.polytope, K, s.p, s.n, plan.N) <= plan.N);
        CHECK(precision_requirement(v.polytope, K, s.p, s.n, plan.N - 1) > plan.N - 1);
    }
    const Curve d7 = load("diamond_7.curve");
    const ValidatedInput v = validate_input(d7.f);
    CHECK(determine_precision(v.polytope, constants(v.polytope), 7, 1).first_term == 6);
    const Curve d2 = load("diamond_2.curve");
    const ValidatedInput w = validate_input(d2.f);
    CHECK(determine_precision(w.polytope, constants(w.polytope), 2, 1).first_term == 9);
}

TEST_CASE("counts from a numerator")
{
    const auto k1 = counts_from_numerator(ints({1}), 5, 4);
    CHECK(k1 == ints({5, 25, 125, 625}));
    const auto k2 = counts_from_numerator(ints({1, -1}), 2, 5);
    CHECK(k2 == ints({1, 3, 7, 15, 31}));
}

TEST_CASE("norm by binary splitting equals the direct product")
{
    const ZqRing R(make_field(3, 6), 5);
    std::mt19937_64 rng(31);
    const ZqMatrix M = props::random_matrix(R, 3, 3, rng);
    CHECK(norm_matrix(M, 1).equal(M));
    CHECK(norm_matrix(M, 2).equal(M.sigma(1) * M));
    for (int n = 1; n <= 6; ++n)
        CHECK(norm_matrix(M, n).equal(norm_matrix_direct(M, n)));
    CHECK_THROWS_AS(norm_matrix(M, 0), Error);
}

TEST_CASE("diamond over F_7")
{
    const ZetaResult Z = compute_zeta(load("diamond_7.curve").f);
    CHECK(Z.N == 31);
    CHECK(Z.genus == 1);
    CHECK(Z.boundary_points == 4);
    CHECK(Z.volume_x2 == 4);
    CHECK(Z.chi == ints({2401, -1029, 490, -154, 21, -1}));
    CHECK(Z.P.front() == 1);
    CHECK(Z.P.size() == 6);
    const auto n = Z.counts(4);
    CHECK(n[0] == 4);
    CHECK(n == ints({4, 60, 340, 2300}));
    CHECK(hygiene_problems(Z).empty());
    for (const char* stage : {"nondegen", "precision", "nullstellensatz", "frobenius", "matrix", "charpoly"})
        CHECK(Z.timings_ms.count(stage) == 1);
}

TEST_CASE("Frobenius matrix shapes")
{
    const ZetaResult Z = compute_zeta(load("diamond_7.curve").f, {0, 2});
    CHECK(Z.chi.size() == 6);
    const ZetaResult G = compute_zeta(load("genus2_5.curve").f);
    CHECK(G.chi.size() == 12);
    CHECK(G.counts(3) == ints({2, 38, 122}));
    CHECK(hygiene_problems(G).empty());
}

TEST_CASE("assembly rejects a polynomial outside the Weil window")
{
    const Curve c = load("diamond_7.curve");
    const ValidatedInput v = validate_input(c.f);
    const ZqRing R(c.field->spec(), 31);
    // t^5 + 7^20 t^4: leading coefficients fine, the constant term is zero.
    std::vector<ZqRing::Elem> cp(6, R.zero());
    cp[5] = R.one();
    cp[4] = R.mul_pow(R.one(), 20);
    try {
        assemble_zeta(cp, 4, 31, v.polytope, c.field->spec());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::WeilViolation || e.kind() == ErrorKind::PrecisionExhausted));
    }
}

TEST_CASE("pipeline errors carry their stage")
{
    try {
        compute_zeta(load("diamond_5.curve").f);
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
        CHECK(e.stage() == "nondegen");
    }
    const Curve c = parse_curve_string("p 7\nterm 1 0 1\nterm 0 1 1\nterm 0 0 1\n");
    try {
        compute_zeta(c.f);
        FAIL("expected GenusZero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GenusZero);
    }
}
