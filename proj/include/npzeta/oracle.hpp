#pragma once

#include "npzeta/laurent.hpp"
#include "npzeta/zeta.hpp"

#include <cstdint>
#include <vector>

namespace npz {

// Number of (x, y) in (F_{q^k}^*)^2 with f(x, y) = 0. For each x the roots in y are found
// by factoring (seed drives the randomized splitting); requires (q^k - 1)^2 <= 10^8.
mpz_class brute_force_count(const Laurent<Fq>& f, int k, std::uint64_t seed = 1);
// The same count by evaluating f at every point of the torus.
mpz_class brute_force_count_naive(const Laurent<Fq>& f, int k);

std::vector<mpz_class> counts_from_zeta(const ZetaResult& Z, int kmax);

struct CountRow {
    int k = 0;
    mpz_class oracle;
    mpz_class zeta;
    bool match = false;
};

struct CountReport {
    ZetaResult zeta;
    std::vector<CountRow> rows;
    bool all_match() const;
};

// Runs the pipeline and compares its counts with brute force for k = 1..kmax.
CountReport verify(const Laurent<Fq>& f, int kmax, const ZetaOptions& opt = {}, std::uint64_t seed = 1);

}  // namespace npz
