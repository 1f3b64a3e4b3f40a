#pragma once

#include "npzeta/arith.hpp"
#include "npzeta/errors.hpp"
#include "npzeta/polytope.hpp"

#include <climits>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace npz {

// Sparse Laurent polynomial in x, y over a coefficient ring (Fq or ZqRing). Terms are
// kept in y-major order and zero coefficients are never stored.
template <class Ring>
class Laurent {
public:
    using Elem = typename Ring::Elem;
    using Map = std::map<LatticePoint, Elem>;

    Laurent() = default;
    explicit Laurent(const Ring& R) : R_(&R) {}

    const Ring& ring() const { return *R_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    static Laurent monomial(const Ring& R, LatticePoint q, const Elem& c)
    {
        Laurent h(R);
        h.set(q, c);
        return h;
    }
    static Laurent constant(const Ring& R, const Elem& c) { return monomial(R, {0, 0}, c); }

    Elem coeff(const LatticePoint& q) const
    {
        auto it = terms_.find(q);
        return it == terms_.end() ? R_->zero() : it->second;
    }

    void set(const LatticePoint& q, Elem c)
    {
        if (R_->is_zero(c))
            terms_.erase(q);
        else
            terms_[q] = std::move(c);
    }

    void add_term(const LatticePoint& q, const Elem& c)
    {
        auto it = terms_.find(q);
        if (it == terms_.end()) {
            if (!R_->is_zero(c))
                terms_.emplace(q, c);
            return;
        }
        it->second = R_->add(it->second, c);
        if (R_->is_zero(it->second))
            terms_.erase(it);
    }

    void sub_term(const LatticePoint& q, const Elem& c) { add_term(q, R_->neg(c)); }

    std::vector<LatticePoint> support() const
    {
        std::vector<LatticePoint> s;
        s.reserve(terms_.size());
        for (const auto& [q, c] : terms_)
            s.push_back(q);
        return s;
    }

    Laurent operator+(const Laurent& o) const
    {
        Laurent r = *this;
        for (const auto& [q, c] : o.terms_)
            r.add_term(q, c);
        return r;
    }

    Laurent operator-(const Laurent& o) const
    {
        Laurent r = *this;
        for (const auto& [q, c] : o.terms_)
            r.sub_term(q, c);
        return r;
    }

    Laurent operator-() const
    {
        Laurent r(*R_);
        for (const auto& [q, c] : terms_)
            r.terms_.emplace(q, R_->neg(c));
        return r;
    }

    Laurent operator*(const Laurent& o) const
    {
        Laurent r(*R_);
        for (const auto& [qa, ca] : terms_)
            for (const auto& [qb, cb] : o.terms_)
                r.add_term(qa + qb, R_->mul(ca, cb));
        return r;
    }

    Laurent scaled(const Elem& c) const
    {
        Laurent r(*R_);
        for (const auto& [q, a] : terms_)
            r.set(q, R_->mul(a, c));
        return r;
    }

    Laurent shifted(const LatticePoint& s) const
    {
        Laurent r(*R_);
        for (const auto& [q, a] : terms_)
            r.terms_.emplace(q + s, a);
        return r;
    }

    Laurent x_dx() const
    {
        Laurent r(*R_);
        for (const auto& [q, a] : terms_)
            r.set(q, R_->mul(a, R_->from_int(q.i)));
        return r;
    }

    Laurent y_dy() const
    {
        Laurent r(*R_);
        for (const auto& [q, a] : terms_)
            r.set(q, R_->mul(a, R_->from_int(q.j)));
        return r;
    }

    Laurent apply_unimodular(const UnimodularMap& U) const
    {
        Laurent r(*R_);
        for (const auto& [q, a] : terms_)
            r.terms_.emplace(U.apply(q), a);
        return r;
    }

    bool operator==(const Laurent& o) const
    {
        if (terms_.size() != o.terms_.size())
            return false;
        auto it = o.terms_.begin();
        for (const auto& [q, a] : terms_) {
            if (!(q == it->first) || !R_->equal(a, it->second))
                return false;
            ++it;
        }
        return true;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [q, a] : terms_) {
            if (!s.empty())
                s += " + ";
            s += R_->to_string(a) + "*x^" + std::to_string(q.i) + "*y^" + std::to_string(q.j);
        }
        return s;
    }

    // Remove terms whose exponent fails the predicate.
    template <class Pred>
    void retain(Pred keep)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (!keep(it->first))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

private:
    const Ring* R_ = nullptr;
    Map terms_;
};

template <class Ring>
std::vector<LatticePoint> support_of(const Laurent<Ring>& h)
{
    return h.support();
}

// D(h) = xy (f_y h_x - f_x h_y) = (y f_y)(x h_x) - (x f_x)(y h_y).
template <class Ring>
Laurent<Ring> D_operator(const Laurent<Ring>& h, const Laurent<Ring>& f)
{
    return f.y_dy() * h.x_dx() - f.x_dx() * h.y_dy();
}

// Reduce h modulo f into the strip d_b <= j < d_t, where (c_t, d_t) and (c_b, d_b) are
// the unique top and bottom vertices of the Newton polygon of f. Rows above the strip
// are cleared from the top down, then rows below it from the bottom up; within a row
// the term of largest |x| goes first. If quotient is given, h = r + quotient * f.
template <class Ring>
Laurent<Ring> reduce_to_strip(const Laurent<Ring>& h, const Laurent<Ring>& f, Laurent<Ring>* quotient = nullptr)
{
    const Ring& R = h.ring();
    NewtonPolytope P = NewtonPolytope::from_support(f.support());
    if (!P.unique_top() || !P.unique_bottom())
        fail(ErrorKind::InvalidArgument, "strip reduction needs unique top and bottom vertices");
    const LatticePoint T = P.top(), B = P.bottom();
    const auto ct = f.coeff(T), cb = f.coeff(B);
    if (!R.is_unit(ct) || !R.is_unit(cb))
        fail(ErrorKind::NonUnitVertex, "vertex coefficient of f is not a unit");
    const auto it_inv = R.inv(ct), ib_inv = R.inv(cb);

    Laurent<Ring> r = h;
    if (quotient)
        *quotient = Laurent<Ring>(R);
    auto eliminate = [&](const LatticePoint& q, const LatticePoint& V, const typename Ring::Elem& vinv) {
        auto c = R.mul(r.coeff(q), vinv);
        LatticePoint s = q - V;
        for (const auto& [u, a] : f.terms())
            r.sub_term(u + s, R.mul(c, a));
        if (quotient)
            quotient->add_term(s, c);
    };
    auto pick_row = [&](long j) {
        // Largest |x| first, ties towards positive x.
        const auto& t = r.terms();
        auto lo = t.lower_bound({LONG_MIN, j});
        auto hi = t.lower_bound({LONG_MIN, j + 1});
        if (lo == hi)
            return std::optional<LatticePoint>{};
        LatticePoint a = lo->first;
        LatticePoint b = std::prev(hi)->first;
        return std::optional<LatticePoint>(std::abs(b.i) >= std::abs(a.i) ? b : a);
    };
    while (!r.is_zero() && r.terms().rbegin()->first.j >= T.j) {
        long j = r.terms().rbegin()->first.j;
        while (auto q = pick_row(j))
            eliminate(*q, T, it_inv);
    }
    while (!r.is_zero() && r.terms().begin()->first.j < B.j) {
        long j = r.terms().begin()->first.j;
        while (auto q = pick_row(j))
            eliminate(*q, B, ib_inv);
    }
    return r;
}

// Reduction mod p of a polynomial over Z_q, and the digit lift back.
Laurent<Fq> reduce_mod_p(const Laurent<ZqRing>& h, const Fq& F);
Laurent<ZqRing> lift_laurent(const Laurent<Fq>& h, const ZqRing& R);
Laurent<ZqRing> sigma_laurent(const Laurent<ZqRing>& h, int i = 1);
Laurent<ZqRing> change_precision(const Laurent<ZqRing>& h, const ZqRing& R);
Fq::Elem eval_laurent(const Laurent<Fq>& h, const Fq::Elem& x, const Fq::Elem& y);

}  // namespace npz
