#include "property_suites.hpp"

#include "npzeta/errors.hpp"
#include "npzeta/matrix.hpp"

#include <doctest.h>

using namespace npz;

namespace {

ZqMatrix from_rows(const ZqRing& R, std::initializer_list<std::initializer_list<long>> rows)
{
    const size_t m = rows.size(), n = rows.begin()->size();
    ZqMatrix A(R, m, n);
    size_t i = 0;
    for (const auto& r : rows) {
        size_t j = 0;
        for (long v : r)
            A.at(i, j++) = R.from_int(v);
        ++i;
    }
    return A;
}

std::vector<long> poly_ints(const ZqRing& R, const std::vector<ZqRing::Elem>& c)
{
    std::vector<long> out;
    for (const auto& a : c)
        out.push_back(R.symmetric(a).get_si());
    return out;
}

}  // namespace

TEST_CASE("Smith invariants")
{
    const ZqRing R(make_field(7, 1), 4);
    const SmithData a = smith_diagonalize(from_rows(R, {{1, 0}, {0, 7}}));
    CHECK(a.valuations == std::vector<int>{0, 1});
    const SmithData b = smith_diagonalize(from_rows(R, {{0, 7}, {1, 0}}));
    CHECK(b.valuations == std::vector<int>{0, 1});
    const SmithData z = smith_diagonalize(ZqMatrix(R, 3, 2));
    CHECK(z.valuations == std::vector<int>{4, 4});
    CHECK(z.rank == 0);
}

TEST_CASE("solving through the Smith form")
{
    const ZqRing R(make_field(7, 1), 6);
    const ZqMatrix I = ZqMatrix::identity(R, 3);
    const std::vector<ZqRing::Elem> b{R.from_int(5), R.from_int(-2), R.from_int(100)};
    const auto x = solve_zq(I, b, 6, 0);
    for (size_t i = 0; i < 3; ++i)
        CHECK(R.equal(x[i], b[i]));

    const ZqRing R5(make_field(5, 1), 3);
    try {
        solve_zq(from_rows(R5, {{5}}), {R5.one()}, 3, 1);
        FAIL("expected Inconsistent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inconsistent);
    }
}

TEST_CASE("planted solutions are recovered")
{
    const ZqRing R(make_field(7, 1), 6);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        const ZqMatrix A = props::random_matrix(R, 4, 6, rng);
        const ZqMatrix x0 = props::random_matrix(R, 6, 1, rng);
        const ZqMatrix b = A * x0;
        std::vector<ZqRing::Elem> bv;
        for (size_t i = 0; i < 4; ++i)
            bv.push_back(b.at(i, 0));
        const auto x = solve_zq(A, bv, 6, 0);
        ZqMatrix X(R, 6, 1);
        for (size_t i = 0; i < 6; ++i)
            X.at(i, 0) = x[i];
        CHECK((A * X).equal(b));

        const ZqMatrix Y = solve_elimination(A, b, 6);
        CHECK((A * Y).equal(b));
    }
}

TEST_CASE("elimination with non-unit pivots")
{
    // A = diag(7, 49) * U; the system is solvable modulo 7^check with check = 4.
    const ZqRing R(make_field(7, 1), 8);
    const ZqMatrix A = from_rows(R, {{7, 14}, {0, 49}});
    const ZqMatrix x0 = from_rows(R, {{3}, {-5}});
    const ZqMatrix b = A * x0;
    const ZqMatrix x = solve_elimination(A, b, 4);
    const ZqRing R4 = R.at_precision(4);
    CHECK((A * x).convert(R4).equal(b.convert(R4)));

    const ZqMatrix bad = from_rows(R, {{1}, {0}});
    CHECK_THROWS_AS(solve_elimination(A, bad, 4), Error);
}

TEST_CASE("characteristic polynomial examples")
{
    const ZqRing R(make_field(7, 1), 4);
    CHECK(poly_ints(R, charpoly(ZqMatrix::identity(R, 2))) == std::vector<long>{1, -2, 1});
    CHECK(poly_ints(R, charpoly(from_rows(R, {{0, 1}, {1, 0}}))) == std::vector<long>{-1, 0, 1});

    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const ZqMatrix A = props::random_matrix(R, 3, 3, rng);
        const auto c = charpoly(A);
        const auto d = props::cofactor_charpoly(A);
        REQUIRE(c.size() == d.size());
        for (size_t i = 0; i < c.size(); ++i)
            CHECK(R.equal(c[i], d[i]));
    }
}

TEST_CASE("characteristic polynomial over an unramified extension")
{
    const ZqRing R(make_field(3, 2), 5);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        const ZqMatrix A = props::random_matrix(R, 4, 4, rng);
        const auto c = charpoly(A);
        const auto d = props::cofactor_charpoly(A);
        for (size_t i = 0; i < c.size(); ++i)
            CHECK(R.equal(c[i], d[i]));
    }
}

TEST_CASE("property: characteristic polynomial against cofactor expansion")
{
    const props::SuiteResult r = props::charpoly_cofactor(props::kCases, props::kSeed);
    INFO(r.first_failure);
    CHECK(r.cases == props::kCases);
    CHECK(r.failures == 0);
}

TEST_CASE("property: Smith reconstruction")
{
    const props::SuiteResult r = props::smith_reconstruction(props::kCases, props::kSeed);
    INFO(r.first_failure);
    CHECK(r.cases == props::kCases);
    CHECK(r.failures == 0);
}
