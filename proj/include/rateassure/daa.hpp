#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rateassure/curve.hpp"

// DAA-style group signature scheme: group setup, member join with a
// Schnorr proof of knowledge, a randomizable 4-point membership
// credential, basename-bound signing producing (sigma_r, sigma_d), and
// verification against a private-key revocation list.
namespace rateassure::daa {

using bn::G1Point;
using bn::G2Point;
using bn::Scalar;

inline constexpr size_t SIGNATURE_LEN = 5 * bn::G1_LEN + 3 * bn::SCALAR_LEN;
inline constexpr size_t DEFAULT_RL_CAPACITY = 50;

struct GroupSecretKey {
    Scalar x, y;
};

struct GroupPublicKey {
    G2Point X, Y;

    Bytes serialize() const {
        Bytes out = X.serialize();
        append(out, Y.serialize());
        return out;
    }
    static GroupPublicKey deserialize(std::span<const uint8_t> in) {
        if (in.size() != 2 * bn::G2_LEN)
            throw MalformedEncoding("bad group public key length");
        return {G2Point::deserialize(in.subspan(0, bn::G2_LEN)),
                G2Point::deserialize(in.subspan(bn::G2_LEN))};
    }
};

struct MemberSecretKey {
    Scalar sk;
    bool operator==(const MemberSecretKey&) const = default;
};

struct SchnorrProof {
    Scalar challenge, response;
};

struct MemberPublicKey {
    G1Point Q;
    SchnorrProof pok;

    Bytes serialize() const {
        Bytes out = Q.serialize();
        append(out, pok.challenge.serialize());
        append(out, pok.response.serialize());
        return out;
    }
    static MemberPublicKey deserialize(std::span<const uint8_t> in) {
        if (in.size() != bn::G1_LEN + 2 * bn::SCALAR_LEN)
            throw MalformedEncoding("bad member public key length");
        MemberPublicKey upk;
        upk.Q = G1Point::deserialize(in.subspan(0, bn::G1_LEN));
        upk.pok.challenge =
            Scalar::deserialize(in.subspan(bn::G1_LEN, bn::SCALAR_LEN));
        upk.pok.response =
            Scalar::deserialize(in.subspan(bn::G1_LEN + bn::SCALAR_LEN));
        return upk;
    }
};

struct Credential {
    G1Point A, B, C, D;

    Bytes serialize() const {
        Bytes out = A.serialize();
        append(out, B.serialize());
        append(out, C.serialize());
        append(out, D.serialize());
        return out;
    }
    static Credential deserialize(std::span<const uint8_t> in) {
        if (in.size() != 4 * bn::G1_LEN)
            throw MalformedEncoding("bad credential length");
        auto pt = [&](size_t i) {
            return G1Point::deserialize(in.subspan(i * bn::G1_LEN, bn::G1_LEN));
        };
        return {pt(0), pt(1), pt(2), pt(3)};
    }
};

// sigma = (sigma_r, sigma_d): R,S,T,W are the randomized credential, K is
// the basename pseudonym, (c, s, n) the Fiat-Shamir proof with its nonce.
struct RateAssuringProof {
    G1Point R, S, T, W, K;
    Scalar c, s, n;

    Bytes serialize() const {
        Bytes out = R.serialize();
        append(out, S.serialize());
        append(out, T.serialize());
        append(out, W.serialize());
        append(out, K.serialize());
        append(out, c.serialize());
        append(out, s.serialize());
        append(out, n.serialize());
        return out;
    }
    static RateAssuringProof deserialize(std::span<const uint8_t> in) {
        if (in.size() != SIGNATURE_LEN)
            throw MalformedEncoding("bad signature length");
        auto pt = [&](size_t i) {
            return G1Point::deserialize(in.subspan(i * bn::G1_LEN, bn::G1_LEN));
        };
        auto sc = [&](size_t i) {
            return Scalar::deserialize(
                in.subspan(5 * bn::G1_LEN + i * bn::SCALAR_LEN,
                           bn::SCALAR_LEN));
        };
        return {pt(0), pt(1), pt(2), pt(3), pt(4), sc(0), sc(1), sc(2)};
    }
};

class RevocationList {
  public:
    explicit RevocationList(size_t capacity = DEFAULT_RL_CAPACITY)
        : capacity_(capacity) {}

    size_t size() const { return entries_.size(); }
    size_t capacity() const { return capacity_; }
    const std::vector<MemberSecretKey>& entries() const { return entries_; }

    bool contains(const MemberSecretKey& usk) const {
        return std::find(entries_.begin(), entries_.end(), usk) !=
               entries_.end();
    }

  private:
    friend RevocationList revoke(const MemberSecretKey&,
                                 const RevocationList&);
    std::vector<MemberSecretKey> entries_;
    size_t capacity_;
};

enum class VerifyStatus {
    Accept,
    BadPoint,
    BadCredentialPairing,
    BadSchnorr,
    Revoked,
};

inline const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Accept: return "Accept";
        case VerifyStatus::BadPoint: return "BadPoint";
        case VerifyStatus::BadCredentialPairing: return "BadCredentialPairing";
        case VerifyStatus::BadSchnorr: return "BadSchnorr";
        case VerifyStatus::Revoked: return "Revoked";
    }
    return "?";
}

inline std::pair<GroupPublicKey, GroupSecretKey> setup(RandomSource& rng) {
    GroupSecretKey gsk{Scalar::random_nonzero(rng),
                       Scalar::random_nonzero(rng)};
    GroupPublicKey gpk{G2Point::generator() * gsk.x,
                       G2Point::generator() * gsk.y};
    return {gpk, gsk};
}

namespace detail {

inline Scalar pok_challenge(const G1Point& q, const G1Point& u) {
    Bytes msg;
    append(msg, std::string_view("RATE-ASSURE-JOIN-POK"));
    append(msg, q.serialize());
    append(msg, u.serialize());
    return Scalar::from_digest(sha256(msg));
}

}  // namespace detail

inline std::pair<MemberSecretKey, MemberPublicKey> join_request(
    RandomSource& rng) {
    Scalar sk = Scalar::random_nonzero(rng);
    G1Point q = G1Point::generator() * sk;
    Scalar r = Scalar::random_nonzero(rng);
    G1Point u = G1Point::generator() * r;
    Scalar c = detail::pok_challenge(q, u);
    return {MemberSecretKey{sk}, MemberPublicKey{q, {c, r + c * sk}}};
}

inline bool verify_pok(const MemberPublicKey& upk) {
    if (upk.Q.is_identity()) return false;
    G1Point u = G1Point::generator() * upk.pok.response +
                -(upk.Q * upk.pok.challenge);
    return detail::pok_challenge(upk.Q, u) == upk.pok.challenge;
}

inline Credential issue_credential(const GroupSecretKey& gsk,
                                   const MemberPublicKey& upk,
                                   RandomSource& rng) {
    if (!verify_pok(upk)) throw InvalidJoinProof("join proof does not verify");
    Scalar r = Scalar::random_nonzero(rng);
    G1Point a = G1Point::generator() * r;
    G1Point b = a * gsk.y;
    G1Point d = upk.Q * (r * gsk.y);
    G1Point c = (a + d) * gsk.x;
    return {a, b, c, d};
}

inline bool verify_credential(const Credential& cred,
                              const MemberSecretKey& usk,
                              const GroupPublicKey& gpk) {
    if (cred.A.is_identity() || cred.B.is_identity()) return false;
    if (!(cred.D == cred.B * usk.sk)) return false;
    if (!bn::pairing_product_is_one(
            {{cred.A, gpk.Y}, {-cred.B, G2Point::generator()}}))
        return false;
    return bn::pairing_product_is_one(
        {{cred.C, G2Point::generator()}, {-(cred.A + cred.D), gpk.X}});
}

namespace detail {

inline Scalar signature_challenge(const Scalar& n, const G1Point& u1,
                                  const G1Point& u2, const G1Point& r,
                                  const G1Point& s, const G1Point& t,
                                  const G1Point& w, const G1Point& j,
                                  const G1Point& k,
                                  std::span<const uint8_t> basename,
                                  std::span<const uint8_t> msg) {
    Bytes buf;
    append(buf, n.serialize());
    append(buf, u1.serialize());
    append(buf, u2.serialize());
    append(buf, r.serialize());
    append(buf, s.serialize());
    append(buf, t.serialize());
    append(buf, w.serialize());
    append(buf, j.serialize());
    append(buf, k.serialize());
    append(buf, basename);
    append(buf, msg);
    return Scalar::from_digest(sha256(buf));
}

}  // namespace detail

inline G1Point pseudonym(const MemberSecretKey& usk,
                         std::span<const uint8_t> basename) {
    return bn::hash_to_g1(basename) * usk.sk;
}

inline RateAssuringProof sign(std::span<const uint8_t> msg,
                              std::span<const uint8_t> basename,
                              const MemberSecretKey& usk,
                              const Credential& cred, RandomSource& rng) {
    Scalar l = Scalar::random_nonzero(rng);
    G1Point r = cred.A * l;
    G1Point s = cred.B * l;
    G1Point t = cred.C * l;
    G1Point w = cred.D * l;
    G1Point j = bn::hash_to_g1(basename);
    G1Point k = j * usk.sk;
    Scalar rnd = Scalar::random_nonzero(rng);
    G1Point u1 = s * rnd;
    G1Point u2 = j * rnd;
    Scalar n = Scalar::random(rng);
    Scalar c =
        detail::signature_challenge(n, u1, u2, r, s, t, w, j, k, basename, msg);
    return {r, s, t, w, k, c, rnd + c * usk.sk, n};
}

inline VerifyStatus verify(const RateAssuringProof& sigma,
                           std::span<const uint8_t> msg,
                           std::span<const uint8_t> basename,
                           const RevocationList& rl,
                           const GroupPublicKey& gpk) {
    for (const G1Point* p :
         {&sigma.R, &sigma.S, &sigma.T, &sigma.W, &sigma.K}) {
        if (p->is_identity() || !bn::on_curve_g1(p->p))
            return VerifyStatus::BadPoint;
    }
    G1Point j = bn::hash_to_g1(basename);
    // Schnorr first: it is cheap and shields the pairing checks.
    G1Point u1 = sigma.S * sigma.s + -(sigma.W * sigma.c);
    G1Point u2 = j * sigma.s + -(sigma.K * sigma.c);
    Scalar c = detail::signature_challenge(sigma.n, u1, u2, sigma.R, sigma.S,
                                           sigma.T, sigma.W, j, sigma.K,
                                           basename, msg);
    if (!(c == sigma.c)) return VerifyStatus::BadSchnorr;
    if (!bn::pairing_product_is_one(
            {{sigma.R, gpk.Y}, {-sigma.S, G2Point::generator()}}))
        return VerifyStatus::BadCredentialPairing;
    if (!bn::pairing_product_is_one({{sigma.T, G2Point::generator()},
                                     {-(sigma.R + sigma.W), gpk.X}}))
        return VerifyStatus::BadCredentialPairing;
    for (const MemberSecretKey& revoked : rl.entries()) {
        if (sigma.K == j * revoked.sk) return VerifyStatus::Revoked;
    }
    return VerifyStatus::Accept;
}

inline RevocationList revoke(const MemberSecretKey& usk,
                             const RevocationList& rl) {
    if (rl.contains(usk)) return rl;
    if (rl.size() >= rl.capacity())
        throw RevocationListFull("revocation list at capacity");
    RevocationList out = rl;
    out.entries_.push_back(usk);
    return out;
}

}  // namespace rateassure::daa
