#include "npzeta/dense.hpp"

#include "npzeta/errors.hpp"

#include <algorithm>
#include <cstring>

namespace npz {

bool DenseLaurent::cell_zero(long x, long y) const
{
    const mpz_class* p = at(x, y);
    for (int d = 0; d < n; ++d)
        if (sgn(p[d]) != 0)
            return false;
    return true;
}

size_t DenseLaurent::nonzero_cells() const
{
    size_t k = 0;
    for (long y = y0; y <= y1(); ++y)
        for (long x = x0; x <= x1(); ++x)
            if (!cell_zero(x, y))
                ++k;
    return k;
}

namespace {

size_t bit_length(size_t v)
{
    size_t b = 0;
    while (v) {
        ++b;
        v >>= 1;
    }
    return b;
}

DenseLaurent make_block(long x0, long y0, long W, long H, int n)
{
    DenseLaurent d;
    d.x0 = x0;
    d.y0 = y0;
    d.W = W;
    d.H = H;
    d.n = n;
    d.c.resize(static_cast<size_t>(W * H * n));
    return d;
}

// Move the overlapping cells of src into a fresh block with the given layout.
DenseLaurent relayout(DenseLaurent& src, long x0, long y0, long W, long H)
{
    DenseLaurent d = make_block(x0, y0, W, H, src.n);
    long ya = std::max(src.y0, y0), yb = std::min(src.y1(), d.y1());
    long xa = std::max(src.x0, x0), xb = std::min(src.x1(), d.x1());
    for (long y = ya; y <= yb; ++y)
        for (long x = xa; x <= xb; ++x) {
            mpz_class* s = src.at(x, y);
            mpz_class* t = d.at(x, y);
            for (int k = 0; k < src.n; ++k)
                mpz_swap(s[k].get_mpz_t(), t[k].get_mpz_t());
        }
    return d;
}

}  // namespace

StripAlgebra::StripAlgebra(const ZqRing& R, const Laurent<ZqRing>& f, long xlo, long xhi)
    : R_(R), xlo_(xlo), xhi_(xhi)
{
    NewtonPolytope P = NewtonPolytope::from_support(f.support());
    if (!P.unique_top() || !P.unique_bottom())
        fail(ErrorKind::InvalidArgument, "strip algebra needs unique top and bottom vertices");
    T_ = P.top();
    B_ = P.bottom();
    d_t_ = T_.j;
    d_b_ = B_.j;
    fx_min_ = P.min_x();
    fx_max_ = P.max_x();
    for (const auto& [e, c] : f.terms()) {
        Term t;
        t.e = e;
        t.c = R_.convert(c, f.ring());
        if (R_.is_zero(t.c))
            continue;
        if (R_.n() == 1 && mpz_fits_ulong_p(t.c[0].get_mpz_t())) {
            t.small = true;
            t.cs = mpz_get_ui(t.c[0].get_mpz_t());
        }
        f_.push_back(std::move(t));
    }
    auto coeff_at = [&](const LatticePoint& q) {
        for (const auto& t : f_)
            if (t.e == q)
                return t.c;
        return R_.zero();
    };
    ZqRing::Elem ct = coeff_at(T_), cb = coeff_at(B_);
    if (!R_.is_unit(ct) || !R_.is_unit(cb))
        fail(ErrorKind::NonUnitVertex, "vertex coefficient of f is not a unit");
    inv_t_ = R_.inv(ct);
    inv_b_ = R_.inv(cb);
}

DenseLaurent StripAlgebra::zero() const
{
    DenseLaurent d;
    d.n = R_.n();
    d.y0 = d_b_;
    return d;
}

DenseLaurent StripAlgebra::constant(const ZqRing::Elem& a) const
{
    return monomial(0, 0, a);
}

DenseLaurent StripAlgebra::monomial(long i, long j, const ZqRing::Elem& c) const
{
    DenseLaurent d = make_block(i, j, 1, 1, R_.n());
    for (int k = 0; k < R_.n(); ++k)
        d.c[k] = c[k];
    normalize_cell(d.c.data());
    return reduce(std::move(d));
}

DenseLaurent StripAlgebra::from_sparse(const Laurent<ZqRing>& h) const
{
    if (h.is_zero())
        return zero();
    long xa = LONG_MAX, xb = LONG_MIN, ya = LONG_MAX, yb = LONG_MIN;
    for (const auto& [e, c] : h.terms()) {
        xa = std::min(xa, e.i);
        xb = std::max(xb, e.i);
        ya = std::min(ya, e.j);
        yb = std::max(yb, e.j);
    }
    DenseLaurent d = make_block(xa, ya, xb - xa + 1, yb - ya + 1, R_.n());
    for (const auto& [e, c] : h.terms()) {
        ZqRing::Elem v = R_.convert(c, h.ring());
        mpz_class* cell = d.at(e.i, e.j);
        for (int k = 0; k < R_.n(); ++k)
            cell[k] = v[k];
    }
    return reduce(std::move(d));
}

Laurent<ZqRing> StripAlgebra::to_sparse(const DenseLaurent& a) const
{
    Laurent<ZqRing> h(R_);
    if (a.empty())
        return h;
    for (long y = a.y0; y <= a.y1(); ++y)
        for (long x = a.x0; x <= a.x1(); ++x) {
            if (a.cell_zero(x, y))
                continue;
            const mpz_class* p = a.at(x, y);
            h.set({x, y}, ZqRing::Elem(p, p + a.n));
        }
    return h;
}

ZqRing::Elem StripAlgebra::coeff(const DenseLaurent& a, long x, long y) const
{
    if (a.empty() || !a.has(x, y))
        return R_.zero();
    const mpz_class* p = a.at(x, y);
    return ZqRing::Elem(p, p + a.n);
}

void StripAlgebra::normalize_cell(mpz_class* cell) const
{
    const mpz_class& pk = R_.modulus();
    for (int k = 0; k < R_.n(); ++k)
        if (sgn(cell[k]) < 0 || cell[k] >= pk)
            mpz_fdiv_r(cell[k].get_mpz_t(), cell[k].get_mpz_t(), pk.get_mpz_t());
}

DenseLaurent StripAlgebra::mul_raw(const DenseLaurent& a, const DenseLaurent& b, long padl, long padr) const
{
    if (a.empty() || b.empty())
        return zero();
    const int n = R_.n();
    const long n2 = 2 * n - 1;
    const long W = a.W + b.W - 1;
    const long H = a.H + b.H - 1;
    const mpz_class& pk = R_.modulus();

    // Kronecker substitution: one slot per (row, column, power of the generator), each
    // wide enough to hold a full convolution sum without carries.
    const size_t cbits = mpz_sizeinbase(pk.get_mpz_t(), 2);
    const size_t terms = static_cast<size_t>(std::min(a.W * a.H, b.W * b.H) * n);
    const size_t slot_bits = 2 * cbits + bit_length(terms) + 1;
    const size_t L = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    auto pack = [&](const DenseLaurent& d, std::vector<mp_limb_t>& buf) {
        size_t slots = static_cast<size_t>(((d.H - 1) * W + d.W) * n2);
        buf.assign(slots * L, 0);
        for (long r = 0; r < d.H; ++r)
            for (long col = 0; col < d.W; ++col) {
                const mpz_class* cell = &d.c[static_cast<size_t>((r * d.W + col) * n)];
                for (int k = 0; k < n; ++k) {
                    size_t sz = mpz_size(cell[k].get_mpz_t());
                    if (sz == 0)
                        continue;
                    size_t s = static_cast<size_t>((r * W + col) * n2 + k) * L;
                    std::memcpy(&buf[s], mpz_limbs_read(cell[k].get_mpz_t()), sz * sizeof(mp_limb_t));
                }
            }
    };

    std::vector<mp_limb_t> ba, bb;
    pack(a, ba);
    mpz_t A, B;
    mpz_srcptr pa = mpz_roinit_n(A, ba.data(), static_cast<mp_size_t>(ba.size()));
    mpz_srcptr pb = pa;
    if (&a != &b) {
        pack(b, bb);
        pb = mpz_roinit_n(B, bb.data(), static_cast<mp_size_t>(bb.size()));
    }
    mpz_class P;
    mpz_mul(P.get_mpz_t(), pa, pb);
    ba.clear();
    ba.shrink_to_fit();
    bb.clear();
    bb.shrink_to_fit();

    DenseLaurent out = make_block(a.x0 + b.x0 - padl, a.y0 + b.y0, W + padl + padr, H, n);
    const mp_limb_t* pp = mpz_limbs_read(P.get_mpz_t());
    const size_t psz = mpz_size(P.get_mpz_t());
    const auto& rmod = R_.poly_modulus();
    std::vector<mpz_class> t(static_cast<size_t>(n2));
    mpz_t slot;
    for (long r = 0; r < H; ++r)
        for (long col = 0; col < W; ++col) {
            mpz_class* cell = out.at(out.x0 + padl + col, out.y0 + r);
            size_t base = static_cast<size_t>((r * W + col) * n2) * L;
            if (base >= psz)
                continue;
            for (long k = 0; k < n2; ++k) {
                size_t off = base + static_cast<size_t>(k) * L;
                size_t len = off >= psz ? 0 : std::min(L, psz - off);
                mpz_srcptr v = mpz_roinit_n(slot, pp + off, static_cast<mp_size_t>(len));
                if (n == 1)
                    mpz_tdiv_r(cell[0].get_mpz_t(), v, pk.get_mpz_t());
                else
                    mpz_set(t[k].get_mpz_t(), v);
            }
            if (n > 1) {
                for (long d = n2 - 1; d >= n; --d) {
                    if (sgn(t[d]) == 0)
                        continue;
                    for (int i = 0; i < n; ++i)
                        mpz_submul(t[d - n + i].get_mpz_t(), t[d].get_mpz_t(), rmod[i].get_mpz_t());
                }
                for (int k = 0; k < n; ++k)
                    mpz_fdiv_r(cell[k].get_mpz_t(), t[k].get_mpz_t(), pk.get_mpz_t());
            }
        }
    return out;
}

DenseLaurent StripAlgebra::reduce(DenseLaurent a) const
{
    if (a.empty())
        return zero();
    const int n = R_.n();
    const long nt = std::max(0L, a.y1() - d_t_ + 1);
    const long nb = std::max(0L, d_b_ - a.y0);
    const long left = nt * std::max(0L, T_.i - fx_min_) + nb * std::max(0L, B_.i - fx_min_);
    const long right = nt * std::max(0L, fx_max_ - T_.i) + nb * std::max(0L, fx_max_ - B_.i);
    const long ya = std::min(a.y0, d_b_), yb = std::max(a.y1(), d_t_ - 1);
    if (left > 0 || right > 0 || ya != a.y0 || yb != a.y1())
        a = relayout(a, a.x0 - left, ya, a.W + left + right, yb - ya + 1);

    const mpz_class& pk = R_.modulus();
    mpz_class t, cp;
    auto eliminate = [&](long x, long y, const LatticePoint& V, const ZqRing::Elem& vinv) {
        mpz_class* cell = a.at(x, y);
        if (n == 1) {
            if (sgn(cell[0]) == 0)
                return;
            mpz_fdiv_r(t.get_mpz_t(), cell[0].get_mpz_t(), pk.get_mpz_t());
            cell[0] = 0;
            if (sgn(t) == 0)
                return;
            mpz_mul(cp.get_mpz_t(), t.get_mpz_t(), vinv[0].get_mpz_t());
            mpz_tdiv_r(cp.get_mpz_t(), cp.get_mpz_t(), pk.get_mpz_t());
            for (const auto& term : f_) {
                if (term.e == V)
                    continue;
                mpz_class* tc = a.at(x - V.i + term.e.i, y - V.j + term.e.j);
                if (term.small)
                    mpz_submul_ui(tc[0].get_mpz_t(), cp.get_mpz_t(), term.cs);
                else
                    mpz_submul(tc[0].get_mpz_t(), cp.get_mpz_t(), term.c[0].get_mpz_t());
            }
            return;
        }
        ZqRing::Elem v(cell, cell + n);
        R_.normalize(v);
        for (int k = 0; k < n; ++k)
            cell[k] = 0;
        if (R_.is_zero(v))
            return;
        ZqRing::Elem c = R_.mul(v, vinv);
        for (const auto& term : f_) {
            if (term.e == V)
                continue;
            ZqRing::Elem prod = R_.mul(c, term.c);
            mpz_class* tc = a.at(x - V.i + term.e.i, y - V.j + term.e.j);
            for (int k = 0; k < n; ++k)
                mpz_sub(tc[k].get_mpz_t(), tc[k].get_mpz_t(), prod[k].get_mpz_t());
        }
    };
    for (long y = a.y1(); y >= d_t_; --y)
        for (long x = a.x0; x <= a.x1(); ++x)
            eliminate(x, y, T_, inv_t_);
    for (long y = a.y0; y < d_b_; ++y)
        for (long x = a.x0; x <= a.x1(); ++x)
            eliminate(x, y, B_, inv_b_);

    DenseLaurent s = relayout(a, a.x0, d_b_, a.W, d_t_ - d_b_);
    for (auto& v : s.c)
        if (sgn(v) < 0 || v >= pk)
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), pk.get_mpz_t());
    clip(s);
    trim(s);
    return s;
}

void StripAlgebra::clip(DenseLaurent& a) const
{
    if (a.empty())
        return;
    long lo = std::max(a.x0, xlo_), hi = std::min(a.x1(), xhi_);
    if (lo > hi) {
        a = zero();
        return;
    }
    if (lo == a.x0 && hi == a.x1())
        return;
    a = relayout(a, lo, a.y0, hi - lo + 1, a.H);
}

void StripAlgebra::trim(DenseLaurent& a) const
{
    if (a.empty()) {
        a = zero();
        return;
    }
    auto col_zero = [&](long x) {
        for (long y = a.y0; y <= a.y1(); ++y)
            if (!a.cell_zero(x, y))
                return false;
        return true;
    };
    long lo = a.x0, hi = a.x1();
    while (lo <= hi && col_zero(lo))
        ++lo;
    while (hi >= lo && col_zero(hi))
        --hi;
    if (lo > hi) {
        a = zero();
        return;
    }
    if (lo != a.x0 || hi != a.x1())
        a = relayout(a, lo, a.y0, hi - lo + 1, a.H);
}

DenseLaurent StripAlgebra::mul(const DenseLaurent& a, const DenseLaurent& b) const
{
    if (a.empty() || b.empty())
        return zero();
    const long ytop = a.y1() + b.y1(), ybot = a.y0 + b.y0;
    const long nt = std::max(0L, ytop - d_t_ + 1);
    const long nb = std::max(0L, d_b_ - ybot);
    const long left = nt * std::max(0L, T_.i - fx_min_) + nb * std::max(0L, B_.i - fx_min_);
    const long right = nt * std::max(0L, fx_max_ - T_.i) + nb * std::max(0L, fx_max_ - B_.i);
    // reduce() will find the padding already in place and skip the relayout.
    return reduce(mul_raw(a, b, left, right));
}

DenseLaurent StripAlgebra::pow(const DenseLaurent& a, long e) const
{
    if (e < 0)
        fail(ErrorKind::InvalidArgument, "negative power of a strip element");
    DenseLaurent r = one();
    DenseLaurent b = a;
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            r = first ? b : mul(r, b);
            first = false;
        }
        e >>= 1;
        if (e)
            b = mul(b, b);
    }
    return r;
}

DenseLaurent StripAlgebra::combine(const DenseLaurent& a, const DenseLaurent& b, bool subtract) const
{
    if (b.empty())
        return a;
    if (a.empty())
        return subtract ? neg(b) : b;
    long x0 = std::min(a.x0, b.x0), x1 = std::max(a.x1(), b.x1());
    long y0 = std::min(a.y0, b.y0), y1 = std::max(a.y1(), b.y1());
    DenseLaurent r = make_block(x0, y0, x1 - x0 + 1, y1 - y0 + 1, R_.n());
    const int n = R_.n();
    for (long y = a.y0; y <= a.y1(); ++y)
        for (long x = a.x0; x <= a.x1(); ++x) {
            const mpz_class* s = a.at(x, y);
            mpz_class* t = r.at(x, y);
            for (int k = 0; k < n; ++k)
                t[k] = s[k];
        }
    for (long y = b.y0; y <= b.y1(); ++y)
        for (long x = b.x0; x <= b.x1(); ++x) {
            const mpz_class* s = b.at(x, y);
            mpz_class* t = r.at(x, y);
            for (int k = 0; k < n; ++k) {
                if (subtract)
                    mpz_sub(t[k].get_mpz_t(), t[k].get_mpz_t(), s[k].get_mpz_t());
                else
                    mpz_add(t[k].get_mpz_t(), t[k].get_mpz_t(), s[k].get_mpz_t());
            }
            normalize_cell(t);
        }
    trim(r);
    return r;
}

DenseLaurent StripAlgebra::add(const DenseLaurent& a, const DenseLaurent& b) const
{
    return combine(a, b, false);
}

DenseLaurent StripAlgebra::sub(const DenseLaurent& a, const DenseLaurent& b) const
{
    return combine(a, b, true);
}

DenseLaurent StripAlgebra::neg(const DenseLaurent& a) const
{
    DenseLaurent r = a;
    for (auto& v : r.c)
        if (sgn(v) != 0)
            v = R_.modulus() - v;
    return r;
}

DenseLaurent StripAlgebra::scale(const DenseLaurent& a, const ZqRing::Elem& s) const
{
    if (a.empty())
        return zero();
    DenseLaurent r = a;
    const int n = R_.n();
    const mpz_class& pk = R_.modulus();
    for (long y = r.y0; y <= r.y1(); ++y)
        for (long x = r.x0; x <= r.x1(); ++x) {
            mpz_class* cell = r.at(x, y);
            if (n == 1) {
                mpz_mul(cell[0].get_mpz_t(), cell[0].get_mpz_t(), s[0].get_mpz_t());
                mpz_fdiv_r(cell[0].get_mpz_t(), cell[0].get_mpz_t(), pk.get_mpz_t());
                continue;
            }
            ZqRing::Elem v = R_.mul(ZqRing::Elem(cell, cell + n), s);
            for (int k = 0; k < n; ++k)
                cell[k] = v[k];
        }
    trim(r);
    return r;
}

DenseLaurent StripAlgebra::mul_int(const DenseLaurent& a, long s) const
{
    return scale(a, R_.from_int(s));
}

DenseLaurent StripAlgebra::mul_pow_p(const DenseLaurent& a, int v) const
{
    if (v >= R_.precision())
        return zero();
    return scale(a, R_.from_mpz(R_.p_power(v)));
}

DenseLaurent StripAlgebra::x_dx(const DenseLaurent& a) const
{
    if (a.empty())
        return zero();
    DenseLaurent r = a;
    for (long y = r.y0; y <= r.y1(); ++y)
        for (long x = r.x0; x <= r.x1(); ++x) {
            mpz_class* cell = r.at(x, y);
            for (int k = 0; k < r.n; ++k)
                mpz_mul_si(cell[k].get_mpz_t(), cell[k].get_mpz_t(), x);
            normalize_cell(cell);
        }
    trim(r);
    return r;
}

DenseLaurent StripAlgebra::y_dy(const DenseLaurent& a) const
{
    if (a.empty())
        return zero();
    DenseLaurent r = a;
    for (long y = r.y0; y <= r.y1(); ++y)
        for (long x = r.x0; x <= r.x1(); ++x) {
            mpz_class* cell = r.at(x, y);
            for (int k = 0; k < r.n; ++k)
                mpz_mul_si(cell[k].get_mpz_t(), cell[k].get_mpz_t(), y);
            normalize_cell(cell);
        }
    trim(r);
    return r;
}

DenseLaurent StripAlgebra::sigma(const DenseLaurent& a, int i) const
{
    const int n = R_.n();
    if (n == 1 || a.empty())
        return a;
    DenseLaurent r = a;
    for (long y = r.y0; y <= r.y1(); ++y)
        for (long x = r.x0; x <= r.x1(); ++x) {
            mpz_class* cell = r.at(x, y);
            ZqRing::Elem v = R_.sigma(ZqRing::Elem(cell, cell + n), i);
            for (int k = 0; k < n; ++k)
                cell[k] = v[k];
        }
    return r;
}

DenseLaurent StripAlgebra::shift(const DenseLaurent& a, long dx, long dy) const
{
    if (a.empty())
        return zero();
    DenseLaurent r = a;
    r.x0 += dx;
    r.y0 += dy;
    return reduce(std::move(r));
}

DenseLaurent StripAlgebra::convert(const DenseLaurent& a) const
{
    DenseLaurent r = a;
    r.n = R_.n();
    for (auto& v : r.c)
        if (v >= R_.modulus())
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), R_.modulus().get_mpz_t());
    return reduce(std::move(r));
}

DenseLaurent StripAlgebra::inverse(const DenseLaurent& a, const DenseLaurent& seed, int max_iter) const
{
    DenseLaurent u = convert(seed);
    const DenseLaurent I = one();
    for (int it = 0; it < max_iter; ++it) {
        DenseLaurent e = sub(I, mul(a, u));
        if (is_zero(e))
            return u;
        u = add(u, mul(u, e));
    }
    fail(ErrorKind::NonUnitDerivative, "inverse iteration did not converge");
}

bool StripAlgebra::is_zero(const DenseLaurent& a) const
{
    for (const auto& v : a.c)
        if (sgn(v) != 0)
            return false;
    return true;
}

bool StripAlgebra::equal(const DenseLaurent& a, const DenseLaurent& b) const
{
    return is_zero(sub(a, b));
}

bool StripAlgebra::is_one(const DenseLaurent& a) const
{
    return equal(a, one());
}

long StripAlgebra::x_extent(const DenseLaurent& a) const
{
    if (a.empty())
        return -1;
    long e = -1;
    for (long y = a.y0; y <= a.y1(); ++y)
        for (long x = a.x0; x <= a.x1(); ++x)
            if (!a.cell_zero(x, y))
                e = std::max(e, std::abs(x));
    return e;
}

}  // namespace npz
