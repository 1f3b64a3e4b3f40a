#pragma once

#include "npzeta/arith.hpp"
#include "npzeta/laurent.hpp"

#include <climits>
#include <vector>

namespace npz {

// Dense rectangular block of a Laurent polynomial over Z_q/p^k. Cell (x, y) holds n
// coefficients starting at ((y - y0) * W + (x - x0)) * n. W == 0 means zero.
struct DenseLaurent {
    long x0 = 0;
    long y0 = 0;
    long W = 0;
    long H = 0;
    int n = 1;
    std::vector<mpz_class> c;

    bool empty() const { return W == 0 || H == 0; }
    long x1() const { return x0 + W - 1; }
    long y1() const { return y0 + H - 1; }
    bool has(long x, long y) const { return x >= x0 && x < x0 + W && y >= y0 && y < y0 + H; }
    size_t index(long x, long y) const { return static_cast<size_t>(((y - y0) * W + (x - x0)) * n); }
    mpz_class* at(long x, long y) { return &c[index(x, y)]; }
    const mpz_class* at(long x, long y) const { return &c[index(x, y)]; }
    bool cell_zero(long x, long y) const;
    size_t nonzero_cells() const;
};

// Arithmetic in Z_q[x^+-1, y^+-1]/(f) on strip representatives, at a fixed precision and
// with an optional x-window outside of which reduced results are discarded.
class StripAlgebra {
public:
    StripAlgebra(const ZqRing& R, const Laurent<ZqRing>& f, long xlo = LONG_MIN, long xhi = LONG_MAX);

    const ZqRing& ring() const { return R_; }
    long d_b() const { return d_b_; }
    long d_t() const { return d_t_; }
    long window_lo() const { return xlo_; }
    long window_hi() const { return xhi_; }
    void set_window(long xlo, long xhi)
    {
        xlo_ = xlo;
        xhi_ = xhi;
    }

    DenseLaurent zero() const;
    DenseLaurent constant(const ZqRing::Elem& a) const;
    DenseLaurent one() const { return constant(R_.one()); }
    // Strip reduction of an arbitrary Laurent polynomial.
    DenseLaurent from_sparse(const Laurent<ZqRing>& h) const;
    Laurent<ZqRing> to_sparse(const DenseLaurent& a) const;
    DenseLaurent monomial(long i, long j, const ZqRing::Elem& c) const;

    // Raw product, no reduction; pads extra zero columns on both sides.
    DenseLaurent mul_raw(const DenseLaurent& a, const DenseLaurent& b, long padl = 0, long padr = 0) const;
    // Reduce rows outside [d_b, d_t) and clip to the window. Consumes its argument.
    DenseLaurent reduce(DenseLaurent a) const;
    DenseLaurent mul(const DenseLaurent& a, const DenseLaurent& b) const;
    DenseLaurent square(const DenseLaurent& a) const { return mul(a, a); }
    DenseLaurent pow(const DenseLaurent& a, long e) const;

    DenseLaurent add(const DenseLaurent& a, const DenseLaurent& b) const;
    DenseLaurent sub(const DenseLaurent& a, const DenseLaurent& b) const;
    DenseLaurent neg(const DenseLaurent& a) const;
    DenseLaurent scale(const DenseLaurent& a, const ZqRing::Elem& s) const;
    DenseLaurent mul_int(const DenseLaurent& a, long s) const;
    DenseLaurent mul_pow_p(const DenseLaurent& a, int v) const;
    DenseLaurent x_dx(const DenseLaurent& a) const;
    DenseLaurent y_dy(const DenseLaurent& a) const;
    DenseLaurent sigma(const DenseLaurent& a, int i = 1) const;
    // Multiply by x^dx y^dy and reduce.
    DenseLaurent shift(const DenseLaurent& a, long dx, long dy) const;
    // Re-read coefficients at this algebra's precision (reduction or embedding).
    DenseLaurent convert(const DenseLaurent& a) const;

    // Inverse by Newton iteration u <- u (2 - a u), seeded with a mod p when that is an
    // element of Z_q; stops once a*u == 1 or after max_iter rounds.
    DenseLaurent inverse(const DenseLaurent& a, const DenseLaurent& seed, int max_iter = 64) const;

    bool is_zero(const DenseLaurent& a) const;
    bool equal(const DenseLaurent& a, const DenseLaurent& b) const;
    bool is_one(const DenseLaurent& a) const;
    // Drop zero border columns and rows.
    void trim(DenseLaurent& a) const;
    // Largest |x| of a nonzero term, or -1 for zero.
    long x_extent(const DenseLaurent& a) const;

    ZqRing::Elem coeff(const DenseLaurent& a, long x, long y) const;

private:
    void normalize_cell(mpz_class* cell) const;
    void clip(DenseLaurent& a) const;
    DenseLaurent combine(const DenseLaurent& a, const DenseLaurent& b, bool subtract) const;

    ZqRing R_;
    struct Term {
        LatticePoint e;
        ZqRing::Elem c;
        bool small = false;
        unsigned long cs = 0;
    };
    std::vector<Term> f_;
    LatticePoint T_, B_;
    ZqRing::Elem inv_t_, inv_b_;
    long d_t_ = 0, d_b_ = 0;
    long fx_min_ = 0, fx_max_ = 0;
    long xlo_, xhi_;
};

}  // namespace npz
