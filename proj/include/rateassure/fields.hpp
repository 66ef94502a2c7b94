#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>

#include "rateassure/bytes.hpp"
#include "rateassure/errors.hpp"

// Extension-field tower for a BN254-class pairing curve:
//   Fq2 = Fq[u]/(u^2 + 1)
//   Fq6 = Fq2[v]/(v^3 - xi),  xi = 9 + u
//   Fq12 = Fq6[w]/(w^2 - v)
namespace rateassure::bn {

// Curve family parameter. p and r are the standard BN polynomials in z.
inline const mpz_class& bn_z() {
    static const mpz_class z("4965661367192848881");
    return z;
}

inline const mpz_class& field_modulus() {
    static const mpz_class p = [] {
        const mpz_class& z = bn_z();
        mpz_class z2 = z * z, z3 = z2 * z, z4 = z3 * z;
        return mpz_class(36 * z4 + 36 * z3 + 24 * z2 + 6 * z + 1);
    }();
    return p;
}

inline const mpz_class& group_order() {
    static const mpz_class r = [] {
        const mpz_class& z = bn_z();
        mpz_class z2 = z * z, z3 = z2 * z, z4 = z3 * z;
        return mpz_class(36 * z4 + 36 * z3 + 18 * z2 + 6 * z + 1);
    }();
    return r;
}

inline void mpz_to_be(const mpz_class& v, std::span<uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    size_t count = 0;
    size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (bytes > out.size()) throw MalformedEncoding("integer too wide");
    mpz_export(out.data() + (out.size() - bytes), &count, 1, 1, 1, 0,
               v.get_mpz_t());
}

inline mpz_class mpz_from_be(std::span<const uint8_t> in) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), in.size(), 1, 1, 1, 0, in.data());
    return v;
}

class Fq {
  public:
    mpz_class v;

    Fq() : v(0) {}
    explicit Fq(long x) : v(x) { reduce(); }
    explicit Fq(mpz_class x) : v(std::move(x)) { reduce(); }

    static Fq zero() { return Fq(); }
    static Fq one() { return Fq(1); }

    bool is_zero() const { return v == 0; }
    bool operator==(const Fq&) const = default;

    Fq operator+(const Fq& o) const {
        Fq r;
        r.v = v + o.v;
        if (r.v >= field_modulus()) r.v -= field_modulus();
        return r;
    }
    Fq operator-(const Fq& o) const {
        Fq r;
        r.v = v - o.v;
        if (r.v < 0) r.v += field_modulus();
        return r;
    }
    Fq operator*(const Fq& o) const {
        Fq r;
        r.v = v * o.v;
        mpz_mod(r.v.get_mpz_t(), r.v.get_mpz_t(), field_modulus().get_mpz_t());
        return r;
    }
    Fq operator-() const {
        Fq r;
        if (v != 0) r.v = field_modulus() - v;
        return r;
    }
    Fq dbl() const { return *this + *this; }
    Fq square() const { return *this * *this; }

    Fq inverse() const {
        Fq r;
        if (mpz_invert(r.v.get_mpz_t(), v.get_mpz_t(),
                       field_modulus().get_mpz_t()) == 0)
            throw Error("inverse of zero in Fq");
        return r;
    }

    // p = 3 (mod 4), so sqrt is a single exponentiation. Returns false if
    // the element is a non-residue.
    bool sqrt(Fq& out) const {
        static const mpz_class e = (field_modulus() + 1) / 4;
        Fq c;
        mpz_powm(c.v.get_mpz_t(), v.get_mpz_t(), e.get_mpz_t(),
                 field_modulus().get_mpz_t());
        if (!(c * c == *this)) return false;
        out = c;
        return true;
    }

  private:
    void reduce() {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), field_modulus().get_mpz_t());
    }
};

class Fq2 {
  public:
    Fq a, b;  // a + b*u

    Fq2() = default;
    Fq2(Fq a_, Fq b_) : a(std::move(a_)), b(std::move(b_)) {}
    static Fq2 zero() { return {}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }
    static Fq2 xi() { return {Fq(9), Fq::one()}; }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const Fq2&) const = default;

    Fq2 operator+(const Fq2& o) const { return {a + o.a, b + o.b}; }
    Fq2 operator-(const Fq2& o) const { return {a - o.a, b - o.b}; }
    Fq2 operator-() const { return {-a, -b}; }

    Fq2 operator*(const Fq2& o) const {
        Fq t0 = a * o.a;
        Fq t1 = b * o.b;
        Fq t2 = (a + b) * (o.a + o.b);
        return {t0 - t1, t2 - t0 - t1};
    }
    Fq2 mul_fq(const Fq& s) const { return {a * s, b * s}; }
    Fq2 square() const {
        Fq t = a * b;
        return {(a + b) * (a - b), t + t};
    }
    Fq2 dbl() const { return {a + a, b + b}; }
    Fq2 conjugate() const { return {a, -b}; }

    Fq2 inverse() const {
        Fq n = a * a + b * b;
        Fq ni = n.inverse();
        return {a * ni, -(b * ni)};
    }

    // Tonelli-style sqrt for p = 3 (mod 4); returns false on non-residue.
    bool sqrt(Fq2& out) const {
        static const mpz_class e1 = (field_modulus() - 3) / 4;
        static const mpz_class e2 = (field_modulus() - 1) / 2;
        Fq2 a1 = pow(e1);
        Fq2 alpha = a1.square() * (*this);
        Fq2 x0 = a1 * (*this);
        if (alpha == Fq2(-Fq::one(), Fq::zero())) {
            out = Fq2(-x0.b, x0.a);
            return (out.square() == *this);
        }
        Fq2 b1 = (alpha + one()).pow(e2);
        out = b1 * x0;
        return (out.square() == *this);
    }

    Fq2 pow(const mpz_class& e) const {
        Fq2 r = one();
        size_t n = mpz_sizeinbase(e.get_mpz_t(), 2);
        if (e == 0) return r;
        for (size_t i = n; i-- > 0;) {
            r = r.square();
            if (mpz_tstbit(e.get_mpz_t(), i)) r = r * (*this);
        }
        return r;
    }
};

class Fq6 {
  public:
    Fq2 c0, c1, c2;  // c0 + c1*v + c2*v^2

    Fq6() = default;
    Fq6(Fq2 a, Fq2 b, Fq2 c)
        : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}
    static Fq6 zero() { return {}; }
    static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

    bool is_zero() const {
        return c0.is_zero() && c1.is_zero() && c2.is_zero();
    }
    bool operator==(const Fq6&) const = default;

    Fq6 operator+(const Fq6& o) const {
        return {c0 + o.c0, c1 + o.c1, c2 + o.c2};
    }
    Fq6 operator-(const Fq6& o) const {
        return {c0 - o.c0, c1 - o.c1, c2 - o.c2};
    }
    Fq6 operator-() const { return {-c0, -c1, -c2}; }

    Fq6 operator*(const Fq6& o) const {
        Fq2 t0 = c0 * o.c0;
        Fq2 t1 = c1 * o.c1;
        Fq2 t2 = c2 * o.c2;
        Fq2 xi = Fq2::xi();
        Fq2 r0 = t0 + xi * ((c1 + c2) * (o.c1 + o.c2) - t1 - t2);
        Fq2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + xi * t2;
        Fq2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
        return {r0, r1, r2};
    }
    Fq6 square() const { return *this * *this; }

    // multiplication by v (the Fq6 non-residue inside Fq12)
    Fq6 mul_by_v() const { return {Fq2::xi() * c2, c0, c1}; }

    Fq6 inverse() const {
        Fq2 xi = Fq2::xi();
        Fq2 A = c0.square() - xi * (c1 * c2);
        Fq2 B = xi * c2.square() - c0 * c1;
        Fq2 C = c1.square() - c0 * c2;
        Fq2 F = (c0 * A + xi * (c2 * B + c1 * C)).inverse();
        return {A * F, B * F, C * F};
    }
};

class Fq12 {
  public:
    Fq6 c0, c1;  // c0 + c1*w

    Fq12() = default;
    Fq12(Fq6 a, Fq6 b) : c0(std::move(a)), c1(std::move(b)) {}
    static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

    bool operator==(const Fq12&) const = default;
    bool is_one() const { return *this == one(); }

    Fq12 operator*(const Fq12& o) const {
        Fq6 t0 = c0 * o.c0;
        Fq6 t1 = c1 * o.c1;
        return {t0 + t1.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
    }
    Fq12 square() const {
        Fq6 t = c0 * c1;
        return {(c0 + c1) * (c0 + c1.mul_by_v()) - t - t.mul_by_v(), t + t};
    }
    Fq12 conjugate() const { return {c0, -c1}; }

    Fq12 inverse() const {
        Fq6 n = (c0.square() - c1.square().mul_by_v()).inverse();
        return {c0 * n, -(c1 * n)};
    }

    Fq12 pow(const mpz_class& e) const {
        Fq12 r = one();
        if (e == 0) return r;
        size_t n = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = n; i-- > 0;) {
            r = r.square();
            if (mpz_tstbit(e.get_mpz_t(), i)) r = r * (*this);
        }
        return r;
    }

    // x -> x^(p^n) for n in {1,2,3}, via per-coefficient conjugation and
    // the precomputed xi^(j*(p^n-1)/6) twist constants (w^6 = xi).
    Fq12 frobenius(unsigned n) const {
        static const auto gammas = [] {
            std::array<std::array<Fq2, 6>, 3> t;
            mpz_class pn = 1;
            for (int k = 1; k <= 3; ++k) {
                pn *= field_modulus();
                mpz_class e = (pn - 1) / 6;
                for (int j = 0; j < 6; ++j)
                    t[k - 1][j] = Fq2::xi().pow(e * j);
            }
            return t;
        }();
        const auto& g = gammas.at(n - 1);
        const bool conj = (n % 2) == 1;
        auto ap = [&](const Fq2& b, int j) {
            return (conj ? b.conjugate() : b) * g[j];
        };
        // coefficient order: c0 + c1 w with v = w^2
        Fq2 b0 = ap(c0.c0, 0), b1 = ap(c1.c0, 1), b2 = ap(c0.c1, 2);
        Fq2 b3 = ap(c1.c1, 3), b4 = ap(c0.c2, 4), b5 = ap(c1.c2, 5);
        return Fq12(Fq6(b0, b2, b4), Fq6(b1, b3, b5));
    }
};

}  // namespace rateassure::bn
