#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rateassure/fields.hpp"
#include "rateassure/rng.hpp"
#include "rateassure/sha256.hpp"

// G1/G2/GT over a BN254-class curve (y^2 = x^3 + 3, its sextic twist) with
// an ate pairing, hash-to-G1, and the fixed-width byte encodings every
// other module builds on.
namespace rateassure::bn {

inline constexpr size_t G1_LEN = 33;      // compressed: tag + x
inline constexpr size_t SCALAR_LEN = 32;  // big-endian
inline constexpr size_t G2_LEN = 129;     // tag + x.b,x.a,y.b,y.a

// Scalar in the prime-order group's scalar field (mod r).
class Scalar {
  public:
    mpz_class v;

    Scalar() : v(0) {}
    explicit Scalar(long x) : v(x) { reduce(); }
    explicit Scalar(mpz_class x) : v(std::move(x)) { reduce(); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }

    static Scalar random(RandomSource& rng) {
        Bytes wide = rng.bytes(64);
        return Scalar(mpz_from_be(wide));
    }
    static Scalar random_nonzero(RandomSource& rng) {
        for (;;) {
            Scalar s = random(rng);
            if (!s.is_zero()) return s;
        }
    }
    // Map a digest into the scalar field (Fiat-Shamir challenges).
    static Scalar from_digest(const Digest32& d) {
        return Scalar(mpz_from_be(d));
    }

    bool is_zero() const { return v == 0; }
    bool operator==(const Scalar&) const = default;

    Scalar operator+(const Scalar& o) const {
        Scalar r;
        r.v = v + o.v;
        if (r.v >= group_order()) r.v -= group_order();
        return r;
    }
    Scalar operator-(const Scalar& o) const {
        Scalar r;
        r.v = v - o.v;
        if (r.v < 0) r.v += group_order();
        return r;
    }
    Scalar operator*(const Scalar& o) const {
        Scalar r;
        r.v = v * o.v;
        mpz_mod(r.v.get_mpz_t(), r.v.get_mpz_t(), group_order().get_mpz_t());
        return r;
    }
    Scalar operator-() const {
        Scalar r;
        if (v != 0) r.v = group_order() - v;
        return r;
    }
    Scalar inverse() const {
        Scalar r;
        if (mpz_invert(r.v.get_mpz_t(), v.get_mpz_t(),
                       group_order().get_mpz_t()) == 0)
            throw Error("inverse of zero scalar");
        return r;
    }

    Bytes serialize() const {
        Bytes out(SCALAR_LEN);
        mpz_to_be(v, out);
        return out;
    }
    static Scalar deserialize(std::span<const uint8_t> in) {
        if (in.size() != SCALAR_LEN)
            throw MalformedEncoding("scalar must be 32 bytes");
        mpz_class x = mpz_from_be(in);
        if (x >= group_order())
            throw MalformedEncoding("scalar out of range");
        return Scalar(std::move(x));
    }

  private:
    void reduce() {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), group_order().get_mpz_t());
    }
};

// Short Weierstrass affine point over field F, y^2 = x^3 + b.
template <typename F>
struct AffinePoint {
    F x{}, y{};
    bool infinity = true;

    static AffinePoint identity() { return {}; }
    static AffinePoint make(F x, F y) {
        AffinePoint p;
        p.x = std::move(x);
        p.y = std::move(y);
        p.infinity = false;
        return p;
    }

    bool is_identity() const { return infinity; }
    bool operator==(const AffinePoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }

    AffinePoint operator-() const {
        if (infinity) return *this;
        return make(x, -y);
    }

    AffinePoint operator+(const AffinePoint& o) const {
        if (infinity) return o;
        if (o.infinity) return *this;
        if (x == o.x) {
            if (y == o.y) return dbl();
            return identity();
        }
        F lambda = (o.y - y) * (o.x - x).inverse();
        F x3 = lambda.square() - x - o.x;
        F y3 = lambda * (x - x3) - y;
        return make(x3, y3);
    }

    AffinePoint dbl() const {
        if (infinity || y.is_zero()) return identity();
        F three_x2 = x.square();
        three_x2 = three_x2 + three_x2 + three_x2;
        F lambda = three_x2 * y.dbl().inverse();
        F x3 = lambda.square() - x - x;
        F y3 = lambda * (x - x3) - y;
        return make(x3, y3);
    }

    AffinePoint scalar_mul(const mpz_class& k) const {
        AffinePoint r = identity();
        if (k == 0 || infinity) return r;
        size_t n = mpz_sizeinbase(k.get_mpz_t(), 2);
        for (size_t i = n; i-- > 0;) {
            r = r.dbl();
            if (mpz_tstbit(k.get_mpz_t(), i)) r = r + *this;
        }
        return r;
    }
};

using G1Affine = AffinePoint<Fq>;
using G2Affine = AffinePoint<Fq2>;

inline const Fq& g1_b() {
    static const Fq b(3);
    return b;
}
inline const Fq2& g2_b() {
    // b' = 3/xi for the D-type twist
    static const Fq2 b = Fq2(Fq(3), Fq::zero()) * Fq2::xi().inverse();
    return b;
}

inline const G1Affine& g1_generator() {
    static const G1Affine g = G1Affine::make(Fq(1), Fq(2));
    return g;
}

inline const G2Affine& g2_generator() {
    static const G2Affine g = G2Affine::make(
        Fq2(Fq(mpz_class("1085704699902305713594457076223282948137075635957851"
                         "8086990519993285655852781")),
            Fq(mpz_class("1155973203298638710799100402139228578392581286182119"
                         "2530917403151452391805634"))),
        Fq2(Fq(mpz_class("8495653923123431417604973247489272438418190587263600"
                         "148770280649306958101930")),
            Fq(mpz_class("4082367875863433681332203403145435568316851327593401"
                         "208105741076214120093531"))));
    return g;
}

inline bool on_curve_g1(const G1Affine& p) {
    if (p.infinity) return true;
    return p.y.square() == p.x.square() * p.x + g1_b();
}

inline bool on_curve_g2(const G2Affine& p) {
    if (p.infinity) return true;
    return p.y.square() == p.x.square() * p.x + g2_b();
}

// G1 has cofactor 1; on-curve implies in-subgroup. G2's twist does not,
// so subgroup membership is checked by order.
inline bool in_g2_subgroup(const G2Affine& p) {
    return on_curve_g2(p) && p.scalar_mul(group_order()).is_identity();
}

class G1Point {
  public:
    G1Affine p;

    G1Point() = default;
    explicit G1Point(G1Affine a) : p(std::move(a)) {}

    static G1Point identity() { return G1Point(G1Affine::identity()); }
    static G1Point generator() { return G1Point(g1_generator()); }

    bool is_identity() const { return p.is_identity(); }
    bool operator==(const G1Point&) const = default;

    G1Point operator+(const G1Point& o) const { return G1Point(p + o.p); }
    G1Point operator-() const { return G1Point(-p); }
    G1Point operator*(const Scalar& k) const {
        return G1Point(p.scalar_mul(k.v));
    }

    Bytes serialize() const {
        Bytes out(G1_LEN, 0);
        if (p.infinity) return out;
        out[0] = mpz_tstbit(p.y.v.get_mpz_t(), 0) ? 0x03 : 0x02;
        mpz_to_be(p.x.v, std::span(out).subspan(1));
        return out;
    }

    static G1Point deserialize(std::span<const uint8_t> in) {
        if (in.size() != G1_LEN)
            throw MalformedEncoding("G1 point must be 33 bytes");
        if (in[0] == 0x00) {
            for (size_t i = 1; i < G1_LEN; ++i)
                if (in[i] != 0) throw InvalidPoint("bad identity encoding");
            return identity();
        }
        if (in[0] != 0x02 && in[0] != 0x03)
            throw InvalidPoint("bad compression tag");
        mpz_class xv = mpz_from_be(in.subspan(1));
        if (xv >= field_modulus())
            throw InvalidPoint("x coordinate out of range");
        Fq x(std::move(xv));
        Fq rhs = x.square() * x + g1_b();
        Fq y;
        if (!rhs.sqrt(y)) throw InvalidPoint("x not on curve");
        bool want_odd = (in[0] == 0x03);
        if (mpz_tstbit(y.v.get_mpz_t(), 0) != (want_odd ? 1 : 0)) y = -y;
        return G1Point(G1Affine::make(std::move(x), std::move(y)));
    }
};

class G2Point {
  public:
    G2Affine p;

    G2Point() = default;
    explicit G2Point(G2Affine a) : p(std::move(a)) {}

    static G2Point identity() { return G2Point(G2Affine::identity()); }
    static G2Point generator() { return G2Point(g2_generator()); }

    bool is_identity() const { return p.is_identity(); }
    bool operator==(const G2Point&) const = default;

    G2Point operator+(const G2Point& o) const { return G2Point(p + o.p); }
    G2Point operator-() const { return G2Point(-p); }
    G2Point operator*(const Scalar& k) const {
        return G2Point(p.scalar_mul(k.v));
    }

    Bytes serialize() const {
        Bytes out(G2_LEN, 0);
        if (p.infinity) return out;
        out[0] = 0x04;
        auto s = std::span(out);
        mpz_to_be(p.x.b.v, s.subspan(1, 32));
        mpz_to_be(p.x.a.v, s.subspan(33, 32));
        mpz_to_be(p.y.b.v, s.subspan(65, 32));
        mpz_to_be(p.y.a.v, s.subspan(97, 32));
        return out;
    }

    static G2Point deserialize(std::span<const uint8_t> in) {
        if (in.size() != G2_LEN)
            throw MalformedEncoding("G2 point must be 129 bytes");
        if (in[0] == 0x00) {
            for (size_t i = 1; i < G2_LEN; ++i)
                if (in[i] != 0) throw InvalidPoint("bad identity encoding");
            return identity();
        }
        if (in[0] != 0x04) throw InvalidPoint("bad G2 tag");
        auto coord = [&](size_t off) {
            mpz_class c = mpz_from_be(in.subspan(off, 32));
            if (c >= field_modulus())
                throw InvalidPoint("coordinate out of range");
            return Fq(std::move(c));
        };
        Fq2 x(coord(33), coord(1));
        Fq2 y(coord(97), coord(65));
        G2Affine a = G2Affine::make(std::move(x), std::move(y));
        if (!in_g2_subgroup(a)) throw InvalidPoint("not in G2 subgroup");
        return G2Point(std::move(a));
    }
};

class GTElement {
  public:
    Fq12 v = Fq12::one();

    GTElement() = default;
    explicit GTElement(Fq12 f) : v(std::move(f)) {}
    static GTElement one() { return GTElement(); }

    bool operator==(const GTElement&) const = default;
    bool is_one() const { return v.is_one(); }

    GTElement operator*(const GTElement& o) const {
        return GTElement(v * o.v);
    }
    GTElement pow(const Scalar& k) const { return GTElement(v.pow(k.v)); }
};

namespace detail {

// Line through twist point T with slope lambda, untwisted and evaluated at
// an affine G1 point (xp, yp):
//   l = yp - (lambda*xp) w + (lambda*T.x - T.y) w^3,  w^3 = v*w
inline Fq12 line_eval(const G2Affine& t, const Fq2& lambda, const G1Affine& p) {
    Fq2 c1a = -lambda.mul_fq(p.x);
    Fq2 c1b = lambda * t.x - t.y;
    return Fq12(Fq6(Fq2(p.y, Fq::zero()), Fq2::zero(), Fq2::zero()),
                Fq6(std::move(c1a), std::move(c1b), Fq2::zero()));
}

// Ate Miller loop, length 6z^2 (= trace - 1). Both inputs are affine and
// of prime order, so no degenerate line cases arise inside the loop.
inline Fq12 miller_loop(const G1Affine& p, const G2Affine& q) {
    static const mpz_class loop = [] {
        return mpz_class(6 * bn_z() * bn_z());
    }();
    Fq12 f = Fq12::one();
    G2Affine t = q;
    size_t n = mpz_sizeinbase(loop.get_mpz_t(), 2);
    for (size_t i = n - 1; i-- > 0;) {
        Fq2 three_x2 = t.x.square();
        three_x2 = three_x2 + three_x2 + three_x2;
        Fq2 lambda = three_x2 * t.y.dbl().inverse();
        f = f.square() * line_eval(t, lambda, p);
        Fq2 x3 = lambda.square() - t.x.dbl();
        Fq2 y3 = lambda * (t.x - x3) - t.y;
        t = G2Affine::make(x3, y3);
        if (mpz_tstbit(loop.get_mpz_t(), i)) {
            Fq2 lam2 = (q.y - t.y) * (q.x - t.x).inverse();
            f = f * line_eval(t, lam2, p);
            Fq2 xa = lam2.square() - t.x - q.x;
            Fq2 ya = lam2 * (t.x - xa) - t.y;
            t = G2Affine::make(xa, ya);
        }
    }
    return f;
}

inline const mpz_class& final_exp_power() {
    static const mpz_class d = [] {
        mpz_class p12;
        mpz_pow_ui(p12.get_mpz_t(), field_modulus().get_mpz_t(), 12);
        return mpz_class((p12 - 1) / group_order());
    }();
    return d;
}

// Reference implementation: one big exponentiation by (p^12 - 1) / r.
inline Fq12 final_exponentiation_generic(const Fq12& f) {
    return f.pow(final_exp_power());
}

// Easy part (p^6 - 1)(p^2 + 1) followed by the BN addition chain for the
// hard part, using conjugation as inversion in the cyclotomic subgroup.
inline Fq12 final_exponentiation(const Fq12& f) {
    Fq12 t = f.conjugate() * f.inverse();
    Fq12 m = t.frobenius(2) * t;

    // (p^4 - p^2 + 1)/r = p^3 + (6z^2+1) p^2
    //                   - (36z^3 + 18z^2 + 12z - 1) p
    //                   - (36z^3 + 30z^2 + 18z + 2)
    Fq12 a = m.pow(bn_z());
    Fq12 b = a.pow(bn_z());
    Fq12 c = b.pow(bn_z());
    auto pw = [](const Fq12& x, unsigned long e) {
        return x.pow(mpz_class(e));
    };
    Fq12 c36 = pw(c, 36);
    Fq12 part0 = (c36 * pw(b, 30) * pw(a, 18) * m.square()).conjugate();
    Fq12 part1 = (c36 * pw(b, 18) * pw(a, 12)).conjugate() * m;
    Fq12 part2 = pw(b, 6) * m;
    return m.frobenius(3) * part2.frobenius(2) * part1.frobenius(1) * part0;
}

}  // namespace detail

inline GTElement pairing(const G1Point& a, const G2Point& b) {
    if (a.is_identity() || b.is_identity()) return GTElement::one();
    return GTElement(
        detail::final_exponentiation(detail::miller_loop(a.p, b.p)));
}

// Product of pairings with a single shared final exponentiation; the
// workhorse for pairing-equation checks.
inline bool pairing_product_is_one(
    const std::vector<std::pair<G1Point, G2Point>>& terms) {
    Fq12 f = Fq12::one();
    for (const auto& [a, b] : terms) {
        if (a.is_identity() || b.is_identity()) continue;
        f = f * detail::miller_loop(a.p, b.p);
    }
    return detail::final_exponentiation(f).is_one();
}

// Deterministic try-and-increment hash onto G1. Domain-separated; never
// returns the identity (affine solutions exclude it by construction).
inline G1Point hash_to_g1(std::span<const uint8_t> data) {
    if (data.empty()) throw Error("hash_to_g1: empty input");
    for (uint32_t ctr = 0;; ++ctr) {
        Bytes msg;
        append(msg, std::string_view("SCRAPPY-BSN-V1"));
        msg.push_back(static_cast<uint8_t>(ctr & 0xff));
        append(msg, data);
        Digest32 d = sha256(msg);
        mpz_class xv = mpz_from_be(d);
        mpz_mod(xv.get_mpz_t(), xv.get_mpz_t(), field_modulus().get_mpz_t());
        Fq x(std::move(xv));
        Fq rhs = x.square() * x + g1_b();
        Fq y;
        if (!rhs.sqrt(y)) continue;
        if (d[0] & 0x80) y = -y;
        return G1Point(G1Affine::make(std::move(x), std::move(y)));
    }
}

inline G1Point hash_to_g1(const Bytes& data) {
    return hash_to_g1(std::span<const uint8_t>(data));
}

}  // namespace rateassure::bn
