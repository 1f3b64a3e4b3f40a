#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace npz {

using u64 = std::uint64_t;

bool is_prime(u64 p);

// F_q = F_p[X]/(rbar). rbar is stored ascending and monic, so rbar.size() == n + 1.
struct FieldSpec {
    u64 p = 2;
    int n = 1;
    std::vector<u64> rbar{0, 1};

    u64 q() const;  // throws TooLarge if p^n overflows 64 bits
    mpz_class q_mpz() const;
    bool operator==(const FieldSpec&) const = default;
};

bool is_irreducible(u64 p, const std::vector<u64>& poly);

// Lexicographically smallest monic irreducible of degree n, comparing (c0, c1, ...)
// with c0 most significant. For n == 1 this is X.
std::vector<u64> find_irreducible(u64 p, int n);

FieldSpec make_field(u64 p, int n);

inline u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // m prime, a nonzero

// Finite field F_q with elements as coefficient vectors of length n.
class Fq {
public:
    using Elem = std::vector<u64>;

    Fq() = default;
    explicit Fq(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    u64 p() const { return spec_.p; }
    int n() const { return spec_.n; }

    Elem zero() const { return Elem(spec_.n, 0); }
    Elem one() const;
    Elem from_int(long v) const;
    Elem gen() const;  // the class of X
    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const { return !is_zero(a); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, u64 c) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, const mpz_class& e) const;
    Elem frob(const Elem& a, int i = 1) const;  // a^(p^i)

    // Index in [0, q) from the base-p digits; inverse of elem_at.
    u64 index_of(const Elem& a) const;
    Elem elem_at(u64 idx) const;

    std::string to_string(const Elem& a) const;

private:
    FieldSpec spec_;
};

// Z_q / p^N = (Z/p^N)[X]/(r) where r is the digit lift of rbar.
class ZqRing {
public:
    using Elem = std::vector<mpz_class>;

    ZqRing() = default;
    ZqRing(FieldSpec spec, int N);

    const FieldSpec& spec() const { return spec_; }
    u64 p() const { return spec_.p; }
    int n() const { return spec_.n; }
    int precision() const { return N_; }
    const mpz_class& modulus() const { return pN_; }  // p^N
    const mpz_class& p_power(int k) const;             // p^k for 0 <= k <= N
    const std::vector<mpz_class>& poly_modulus() const { return r_; }
    ZqRing at_precision(int M) const { return ZqRing(spec_, M); }

    Elem zero() const { return Elem(spec_.n); }
    Elem one() const;
    Elem from_int(long v) const;
    Elem from_mpz(const mpz_class& v) const;
    Elem lift(const Fq::Elem& a) const;
    Fq::Elem reduce(const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_int(const Elem& a, long c) const;
    Elem mul_mpz(const Elem& a, const mpz_class& c) const;
    Elem inv(const Elem& a) const;

    void add_to(Elem& acc, const Elem& a) const;
    void addmul(Elem& acc, const Elem& a, const Elem& b) const;  // acc += a*b
    void submul(Elem& acc, const Elem& a, const Elem& b) const;  // acc -= a*b
    void normalize(Elem& a) const;                               // reduce coefficients mod p^N

    // p-adic valuation; returns N for anything that is zero at this precision.
    int valuation(const Elem& a) const;
    // a / p^v where p^v divides every coefficient (exact integer division).
    Elem div_pow(const Elem& a, int v) const;
    Elem mul_pow(const Elem& a, int v) const;
    // Reinterpret at another precision (reduce mod p^M, or embed if M > N).
    Elem convert(const Elem& a, const ZqRing& from) const;

    Elem sigma(const Elem& a, int i = 1) const;  // Frobenius substitution sigma^i

    // Symmetric representative of an n == 1 element in (-p^N/2, p^N/2].
    mpz_class symmetric(const Elem& a) const;

    std::string to_string(const Elem& a) const;

private:
    void reduce_poly(std::vector<mpz_class>& c) const;  // reduce degree < 2n-1 mod r and p^N

    FieldSpec spec_;
    int N_ = 0;
    mpz_class pN_;
    std::vector<mpz_class> ppow_;
    std::vector<mpz_class> r_;
    // sigma_pow_[i][k] = sigma^i([X]^k) for 0 <= i < n, 0 <= k < n.
    std::vector<std::vector<Elem>> sigma_pow_;
};

}  // namespace npz
