#pragma once

#include <openssl/evp.h>

#include <memory>
#include <optional>

#include "rateassure/daa.hpp"

// Software simulation of the hardware security device: a unique
// endorsement key with a manufacturer certificate, credential activation
// via a KEM-DEM hybrid, signing, and reset. The tamper flag is the
// explicit hook attack scenarios use to leak secrets.
namespace rateassure::device {

using bn::G1Point;
using bn::Scalar;
using daa::Credential;
using daa::GroupPublicKey;
using daa::MemberPublicKey;
using daa::MemberSecretKey;
using daa::RateAssuringProof;

inline constexpr size_t GCM_TAG_LEN = 16;
inline constexpr size_t EKCERT_LEN = 8 + bn::G1_LEN + 2 * bn::SCALAR_LEN;

namespace detail {

struct EvpCtx {
    EVP_CIPHER_CTX* ctx;
    EvpCtx() : ctx(EVP_CIPHER_CTX_new()) {
        if (!ctx) throw Error("EVP_CIPHER_CTX_new failed");
    }
    ~EvpCtx() { EVP_CIPHER_CTX_free(ctx); }
};

// AES-256-GCM with a zero nonce; every key is single-use.
inline Bytes gcm_seal(const Digest32& key, const Bytes& plaintext) {
    EvpCtx c;
    uint8_t iv[12] = {0};
    if (EVP_EncryptInit_ex(c.ctx, EVP_aes_256_gcm(), nullptr, key.data(),
                           iv) != 1)
        throw Error("gcm init failed");
    Bytes out(plaintext.size() + GCM_TAG_LEN);
    int len = 0;
    if (EVP_EncryptUpdate(c.ctx, out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        throw Error("gcm encrypt failed");
    int fin = 0;
    if (EVP_EncryptFinal_ex(c.ctx, out.data() + len, &fin) != 1)
        throw Error("gcm finalize failed");
    if (EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_GET_TAG, GCM_TAG_LEN,
                            out.data() + plaintext.size()) != 1)
        throw Error("gcm tag failed");
    return out;
}

inline Bytes gcm_open(const Digest32& key, std::span<const uint8_t> sealed) {
    if (sealed.size() < GCM_TAG_LEN)
        throw DecryptionFailure("ciphertext too short");
    EvpCtx c;
    uint8_t iv[12] = {0};
    if (EVP_DecryptInit_ex(c.ctx, EVP_aes_256_gcm(), nullptr, key.data(),
                           iv) != 1)
        throw Error("gcm init failed");
    size_t ptlen = sealed.size() - GCM_TAG_LEN;
    Bytes out(ptlen);
    int len = 0;
    if (EVP_DecryptUpdate(c.ctx, out.data(), &len, sealed.data(),
                          static_cast<int>(ptlen)) != 1)
        throw DecryptionFailure("gcm decrypt failed");
    Bytes tag(sealed.begin() + ptlen, sealed.end());
    if (EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_SET_TAG, GCM_TAG_LEN,
                            tag.data()) != 1)
        throw Error("gcm set tag failed");
    int fin = 0;
    if (EVP_DecryptFinal_ex(c.ctx, out.data() + len, &fin) != 1)
        throw DecryptionFailure("authentication tag mismatch");
    return out;
}

inline Digest32 kem_key(const G1Point& eph, const G1Point& shared) {
    Bytes buf;
    append(buf, std::string_view("RATE-ASSURE-KEM-V1"));
    append(buf, eph.serialize());
    append(buf, shared.serialize());
    return sha256(buf);
}

inline Scalar ca_challenge(const G1Point& ca_pub, const G1Point& u,
                           std::span<const uint8_t> msg) {
    Bytes buf;
    append(buf, std::string_view("RATE-ASSURE-MFR-CA"));
    append(buf, ca_pub.serialize());
    append(buf, u.serialize());
    append(buf, msg);
    return Scalar::from_digest(sha256(buf));
}

}  // namespace detail

struct EndorsementKey {
    Scalar secret;
    G1Point pub;
};

struct EKCertificate {
    uint64_t serial = 0;
    G1Point ekpub;
    Scalar sig_c, sig_s;

    Bytes serialize() const {
        Bytes out;
        append_u64_be(out, serial);
        append(out, ekpub.serialize());
        append(out, sig_c.serialize());
        append(out, sig_s.serialize());
        return out;
    }
    static EKCertificate deserialize(std::span<const uint8_t> in) {
        if (in.size() != EKCERT_LEN)
            throw MalformedEncoding("bad EK certificate length");
        EKCertificate cert;
        for (size_t i = 0; i < 8; ++i)
            cert.serial = (cert.serial << 8) | in[i];
        cert.ekpub = G1Point::deserialize(in.subspan(8, bn::G1_LEN));
        cert.sig_c = Scalar::deserialize(
            in.subspan(8 + bn::G1_LEN, bn::SCALAR_LEN));
        cert.sig_s = Scalar::deserialize(
            in.subspan(8 + bn::G1_LEN + bn::SCALAR_LEN));
        return cert;
    }
};

class ManufacturerCA {
  public:
    explicit ManufacturerCA(RandomSource& rng)
        : sk_(Scalar::random_nonzero(rng)),
          pub_(G1Point::generator() * sk_) {}

    const G1Point& pub() const { return pub_; }

    EKCertificate issue(const G1Point& ekpub, RandomSource& rng) {
        EKCertificate cert;
        cert.serial = next_serial_++;
        cert.ekpub = ekpub;
        Bytes msg;
        append_u64_be(msg, cert.serial);
        append(msg, ekpub.serialize());
        Scalar k = Scalar::random_nonzero(rng);
        G1Point u = G1Point::generator() * k;
        cert.sig_c = detail::ca_challenge(pub_, u, msg);
        cert.sig_s = k + cert.sig_c * sk_;
        return cert;
    }

  private:
    Scalar sk_;
    G1Point pub_;
    uint64_t next_serial_ = 1;
};

inline bool verify_cert(const EKCertificate& cert, const G1Point& ca_pub) {
    Bytes msg;
    append_u64_be(msg, cert.serial);
    append(msg, cert.ekpub.serialize());
    G1Point u = G1Point::generator() * cert.sig_s + -(ca_pub * cert.sig_c);
    return detail::ca_challenge(ca_pub, u, msg) == cert.sig_c;
}

// GM side of credential delivery: ECIES over the device's EK key.
inline Bytes encrypt_credential(const Credential& cred, const G1Point& ekpub,
                                RandomSource& rng) {
    Scalar k = Scalar::random_nonzero(rng);
    G1Point eph = G1Point::generator() * k;
    Digest32 key = detail::kem_key(eph, ekpub * k);
    Bytes out = eph.serialize();
    append(out, detail::gcm_seal(key, cred.serialize()));
    return out;
}

struct ExtractedSecrets {
    Scalar ek_secret;
    std::optional<MemberSecretKey> usk;
    std::optional<Credential> cred;
};

class Device {
  public:
    Device(EndorsementKey ek, EKCertificate cert)
        : ek_(std::move(ek)), cert_(std::move(cert)) {}

    const EKCertificate& cert() const { return cert_; }
    const G1Point& ekpub() const { return ek_.pub; }
    bool activated() const { return activated_.has_value(); }

    void set_tamper_flag(bool on) { tamper_flag_ = on; }

    // Generates (usk, upk); usk stays inside the device until activation.
    MemberPublicKey begin_join(RandomSource& rng) {
        auto [usk, upk] = daa::join_request(rng);
        pending_usk_ = usk;
        return upk;
    }

    void activate_credential(std::span<const uint8_t> ciphertext,
                             const GroupPublicKey& gpk) {
        if (!pending_usk_)
            throw CredentialMismatch("no pending join on this device");
        if (ciphertext.size() < bn::G1_LEN + GCM_TAG_LEN)
            throw DecryptionFailure("ciphertext too short");
        G1Point eph;
        try {
            eph = G1Point::deserialize(ciphertext.subspan(0, bn::G1_LEN));
        } catch (const Error&) {
            throw DecryptionFailure("bad KEM ciphertext");
        }
        Digest32 key = detail::kem_key(eph, eph * ek_.secret);
        Bytes plain = detail::gcm_open(key, ciphertext.subspan(bn::G1_LEN));
        Credential cred;
        try {
            cred = Credential::deserialize(plain);
        } catch (const Error&) {
            throw DecryptionFailure("decrypted payload is not a credential");
        }
        if (!daa::verify_credential(cred, *pending_usk_, gpk))
            throw CredentialMismatch("credential does not match device usk");
        activated_ = Activated{*pending_usk_, std::move(cred)};
    }

    RateAssuringProof sign(std::span<const uint8_t> msg,
                           std::span<const uint8_t> basename,
                           RandomSource& rng) const {
        if (!activated_) throw DeviceNotActivated("device not activated");
        return daa::sign(msg, basename, activated_->usk, activated_->cred,
                         rng);
    }

    // Clears (usk, cred); the EK is the persistent hardware identity.
    void reset() {
        activated_.reset();
        pending_usk_.reset();
    }

    ExtractedSecrets extract_secrets() const {
        if (!tamper_flag_)
            throw TamperNotEnabled("tamper flag is not set");
        ExtractedSecrets out;
        out.ek_secret = ek_.secret;
        if (activated_) {
            out.usk = activated_->usk;
            out.cred = activated_->cred;
        }
        return out;
    }

  private:
    struct Activated {
        MemberSecretKey usk;
        Credential cred;
    };

    EndorsementKey ek_;
    EKCertificate cert_;
    std::optional<MemberSecretKey> pending_usk_;
    std::optional<Activated> activated_;
    bool tamper_flag_ = false;
};

inline Device manufacture(ManufacturerCA& ca, RandomSource& rng) {
    EndorsementKey ek;
    ek.secret = Scalar::random_nonzero(rng);
    ek.pub = G1Point::generator() * ek.secret;
    EKCertificate cert = ca.issue(ek.pub, rng);
    return Device(std::move(ek), std::move(cert));
}

inline Digest32 ek_fingerprint(const G1Point& ekpub) {
    return sha256(ekpub.serialize());
}

}  // namespace rateassure::device
