#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rateassure/device.hpp"
#include "rateassure/stores.hpp"
#include "rateassure/timewindow.hpp"

// The three protocol roles (GM, signer, verifier), the wire message
// formats, and the in-process channel with its tamper hook.
namespace rateassure::protocol {

using device::Device;
using device::EKCertificate;
using stores::InsertResult;
using timewindow::TimeWindow;
using timewindow::WindowError;

// h = bsn | encode_window(t); '|' never occurs in a valid origin, so the
// composition is injective.
inline constexpr uint8_t BASENAME_SEPARATOR = 0x7C;

inline Bytes compose_basename(const std::string& bsn, const TimeWindow& t) {
    if (bsn.empty()) throw InvalidOrigin("empty origin");
    if (bsn.find(static_cast<char>(BASENAME_SEPARATOR)) != std::string::npos)
        throw InvalidOrigin("origin contains separator byte");
    Bytes h = to_bytes(bsn);
    h.push_back(BASENAME_SEPARATOR);
    append(h, timewindow::encode_window(t));
    return h;
}

struct Challenge {
    TimeWindow t;
    std::string bsn;
};

struct ProofSubmission {
    daa::RateAssuringProof sigma;
    Bytes msg;
    TimeWindow t;
    std::string gm_identity;
};

enum class Decision : uint8_t {
    Allow = 0,
    WindowInvalid = 1,
    RateLimited = 2,
    BadSignature = 3,
    Revoked = 4,
    UnknownGM = 5,
};

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Allow: return "Allow";
        case Decision::WindowInvalid: return "Deny(WindowInvalid)";
        case Decision::RateLimited: return "Deny(RateLimited)";
        case Decision::BadSignature: return "Deny(BadSignature)";
        case Decision::Revoked: return "Deny(Revoked)";
        case Decision::UnknownGM: return "Deny(UnknownGM)";
    }
    return "?";
}

// ---- wire format: tag byte, then big-endian 2-byte length-prefixed fields

namespace wire {

inline constexpr uint8_t TAG_CHALLENGE = 0x01;
inline constexpr uint8_t TAG_SUBMISSION = 0x02;
inline constexpr uint8_t TAG_DECISION = 0x03;
inline constexpr uint8_t TAG_JOIN_REQUEST = 0x04;
inline constexpr uint8_t TAG_JOIN_RESPONSE = 0x05;

namespace detail {

inline void put_field(Bytes& out, std::span<const uint8_t> f) {
    if (f.size() > 0xffff) throw MalformedEncoding("field too long");
    append_u16_be(out, static_cast<uint16_t>(f.size()));
    append(out, f);
}

struct Reader {
    std::span<const uint8_t> in;
    size_t pos = 0;

    uint8_t tag() {
        if (pos >= in.size()) throw MalformedEncoding("truncated message");
        return in[pos++];
    }
    Bytes field() {
        if (pos + 2 > in.size()) throw MalformedEncoding("truncated length");
        size_t len = (size_t(in[pos]) << 8) | in[pos + 1];
        pos += 2;
        if (pos + len > in.size()) throw MalformedEncoding("truncated field");
        Bytes f(in.begin() + pos, in.begin() + pos + len);
        pos += len;
        return f;
    }
    void done() const {
        if (pos != in.size()) throw MalformedEncoding("trailing bytes");
    }
};

}  // namespace detail

inline Bytes encode_challenge(const Challenge& ch) {
    Bytes out{TAG_CHALLENGE};
    detail::put_field(out, timewindow::encode_window(ch.t));
    detail::put_field(out, to_bytes(ch.bsn));
    return out;
}

inline Challenge decode_challenge(std::span<const uint8_t> in) {
    detail::Reader r{in};
    if (r.tag() != TAG_CHALLENGE) throw MalformedEncoding("not a challenge");
    Challenge ch;
    ch.t = timewindow::decode_window(r.field());
    ch.bsn = rateassure::to_string(r.field());
    r.done();
    return ch;
}

inline Bytes encode_submission(const ProofSubmission& sub) {
    Bytes out{TAG_SUBMISSION};
    detail::put_field(out, sub.sigma.serialize());
    detail::put_field(out, sub.msg);
    detail::put_field(out, timewindow::encode_window(sub.t));
    detail::put_field(out, to_bytes(sub.gm_identity));
    return out;
}

inline ProofSubmission decode_submission(std::span<const uint8_t> in) {
    detail::Reader r{in};
    if (r.tag() != TAG_SUBMISSION) throw MalformedEncoding("not a submission");
    ProofSubmission sub;
    sub.sigma = daa::RateAssuringProof::deserialize(r.field());
    sub.msg = r.field();
    sub.t = timewindow::decode_window(r.field());
    sub.gm_identity = rateassure::to_string(r.field());
    r.done();
    return sub;
}

inline Bytes encode_decision(Decision d) {
    return {TAG_DECISION, static_cast<uint8_t>(d)};
}

inline Decision decode_decision(std::span<const uint8_t> in) {
    if (in.size() != 2 || in[0] != TAG_DECISION || in[1] > 5)
        throw MalformedEncoding("not a decision");
    return static_cast<Decision>(in[1]);
}

inline Bytes encode_join_request(const EKCertificate& cert,
                                 const daa::MemberPublicKey& upk) {
    Bytes out{TAG_JOIN_REQUEST};
    detail::put_field(out, cert.serialize());
    detail::put_field(out, upk.serialize());
    return out;
}

inline std::pair<EKCertificate, daa::MemberPublicKey> decode_join_request(
    std::span<const uint8_t> in) {
    detail::Reader r{in};
    if (r.tag() != TAG_JOIN_REQUEST)
        throw MalformedEncoding("not a join request");
    EKCertificate cert = EKCertificate::deserialize(r.field());
    daa::MemberPublicKey upk = daa::MemberPublicKey::deserialize(r.field());
    r.done();
    return {std::move(cert), std::move(upk)};
}

inline Bytes encode_join_response(const Bytes& ciphertext) {
    Bytes out{TAG_JOIN_RESPONSE};
    detail::put_field(out, ciphertext);
    return out;
}

inline Bytes decode_join_response(std::span<const uint8_t> in) {
    detail::Reader r{in};
    if (r.tag() != TAG_JOIN_RESPONSE)
        throw MalformedEncoding("not a join response");
    Bytes c = r.field();
    r.done();
    return c;
}

}  // namespace wire

// ---- Group manager

class GroupManager {
  public:
    GroupManager(std::string identity, const std::filesystem::path& dir,
                 RandomSource& rng, uint32_t max_joins = 1)
        : identity_(std::move(identity)),
          registry_(dir / "ek_registry.bin", max_joins),
          revocation_(dir / "revocation.bin") {
        std::tie(gpk_, gsk_) = daa::setup(rng);
    }

    const std::string& identity() const { return identity_; }
    const daa::GroupPublicKey& gpk() const { return gpk_; }
    stores::EKRegistry& registry() { return registry_; }

    void trust_ca(const bn::G1Point& ca_pub) {
        trusted_cas_.push_back(ca_pub);
    }

    Bytes handle_join(const EKCertificate& ekcert,
                      const daa::MemberPublicKey& upk, RandomSource& rng) {
        bool trusted = false;
        for (const auto& ca : trusted_cas_)
            trusted = trusted || device::verify_cert(ekcert, ca);
        if (!trusted)
            throw UntrustedManufacturer("EK certificate chain not trusted");
        if (!daa::verify_pok(upk))
            throw InvalidJoinProof("join proof does not verify");
        auto fp = device::ek_fingerprint(ekcert.ekpub);
        if (registry_.record_join(fp) ==
            stores::RegistryDecision::ExceededJoinLimit)
            throw ExceededJoinLimit("EK already used the join quota");
        daa::Credential cred = daa::issue_credential(gsk_, upk, rng);
        return device::encrypt_credential(cred, ekcert.ekpub, rng);
    }

    void revoke_member(const daa::MemberSecretKey& usk) {
        revocation_.add(usk);
    }
    daa::RevocationList revocation_list() const { return revocation_.list(); }

  private:
    std::string identity_;
    daa::GroupSecretKey gsk_;
    daa::GroupPublicKey gpk_;
    std::vector<bn::G1Point> trusted_cas_;
    stores::EKRegistry registry_;
    stores::RevocationStore revocation_;
};

// ---- Signer agent

enum class SignerError {
    WindowInvalid,
    OriginMismatch,
    AlreadySignedThisWindow,
    DeviceNotActivated,
};

inline const char* to_string(SignerError e) {
    switch (e) {
        case SignerError::WindowInvalid: return "WindowInvalid";
        case SignerError::OriginMismatch: return "OriginMismatch";
        case SignerError::AlreadySignedThisWindow:
            return "AlreadySignedThisWindow";
        case SignerError::DeviceNotActivated: return "DeviceNotActivated";
    }
    return "?";
}

struct SignerOutcome {
    std::optional<ProofSubmission> submission;
    std::optional<SignerError> error;
    std::optional<WindowError> window_error;

    bool ok() const { return submission.has_value(); }
};

struct AuditEvent {
    std::string what;
    TimeWindow t;
};

class SignerAgent {
  public:
    SignerAgent(Device& dev, std::string gm_identity,
                const std::filesystem::path& dir)
        : device_(dev),
          gm_identity_(std::move(gm_identity)),
          log_(dir / "signer_log.bin") {}

    Device& device() { return device_; }
    stores::SignerLog& log() { return log_; }
    const std::vector<AuditEvent>& audit_events() const { return audit_; }

    // Join flow against a GM over the simulated confidential channel.
    void join(GroupManager& gm, RandomSource& rng) {
        daa::MemberPublicKey upk = device_.begin_join(rng);
        Bytes req = wire::encode_join_request(device_.cert(), upk);
        auto [cert, upk_rx] = wire::decode_join_request(req);
        Bytes resp = wire::encode_join_response(
            gm.handle_join(cert, upk_rx, rng));
        device_.activate_credential(wire::decode_join_response(resp),
                                    gm.gpk());
    }

    SignerOutcome handle_challenge(const Challenge& ch,
                                   const std::string& expected_origin,
                                   uint64_t now, RandomSource& rng,
                                   uint64_t max_duration =
                                       timewindow::DEFAULT_MAX_DURATION_SECONDS) {
        SignerOutcome out;
        if (!device_.activated()) {
            out.error = SignerError::DeviceNotActivated;
            return out;
        }
        Bytes bsn = to_bytes(ch.bsn);
        if (auto err = timewindow::validate_window(ch.t, now, history_, bsn,
                                                   max_duration)) {
            out.error = SignerError::WindowInvalid;
            out.window_error = *err;
            if (*err == WindowError::TooLong || *err == WindowError::Overlap)
                audit_.push_back({std::string("suspicious window: ") +
                                      timewindow::to_string(*err),
                                  ch.t});
            return out;
        }
        if (ch.bsn != expected_origin) {
            out.error = SignerError::OriginMismatch;
            return out;
        }
        if (log_.check_and_insert(ch.t, bsn) == InsertResult::Duplicate) {
            out.error = SignerError::AlreadySignedThisWindow;
            return out;
        }
        history_.record(bsn, ch.t);
        Bytes h = compose_basename(ch.bsn, ch.t);
        ProofSubmission sub;
        sub.sigma = device_.sign({}, h, rng);
        sub.t = ch.t;
        sub.gm_identity = gm_identity_;
        out.submission = std::move(sub);
        return out;
    }

  private:
    Device& device_;
    std::string gm_identity_;
    stores::SignerLog log_;
    timewindow::WindowHistory history_;
    std::vector<AuditEvent> audit_;
};

// ---- Verifier service

struct WindowPolicy {
    uint64_t duration_minutes = 1;
    uint64_t max_duration = timewindow::DEFAULT_MAX_DURATION_SECONDS;
};

class VerifierService {
  public:
    VerifierService(std::string bsn, const std::filesystem::path& dir,
                    WindowPolicy policy = {})
        : bsn_(std::move(bsn)),
          policy_(policy),
          log_(dir / "verifier_log.bin") {}

    const std::string& bsn() const { return bsn_; }
    const WindowPolicy& policy() const { return policy_; }
    stores::VerifierLog& log() { return log_; }

    void register_gm(const std::string& identity,
                     const daa::GroupPublicKey& gpk) {
        gpk_table_.emplace(identity, gpk);
    }
    void set_revocation_view(daa::RevocationList rl) {
        revocation_view_ = std::move(rl);
    }

    Challenge issue_challenge(uint64_t now) const {
        return {timewindow::current_window(now, policy_.duration_minutes),
                bsn_};
    }

    Decision handle_submission(const ProofSubmission& sub, uint64_t now) {
        // 1. t must be exactly the verifier's current window
        TimeWindow expected =
            timewindow::current_window(now, policy_.duration_minutes);
        if (!(sub.t == expected)) return Decision::WindowInvalid;
        // 2. GM resolution
        auto it = gpk_table_.find(sub.gm_identity);
        if (it == gpk_table_.end()) return Decision::UnknownGM;
        // 3. duplicate-pseudonym gate (the rate limit itself)
        Bytes sigma_d = sub.sigma.K.serialize();
        if (log_.check_and_insert(sub.t, sigma_d) == InsertResult::Duplicate)
            return Decision::RateLimited;
        // 4. signature verification; compensating delete on failure so an
        //    invalid submission cannot occupy a legitimate signer's slot
        Bytes h = compose_basename(bsn_, sub.t);
        daa::VerifyStatus st = daa::verify(sub.sigma, sub.msg, h,
                                           revocation_view_, it->second);
        if (st != daa::VerifyStatus::Accept) {
            log_.remove(sub.t, sigma_d);
            return st == daa::VerifyStatus::Revoked ? Decision::Revoked
                                                    : Decision::BadSignature;
        }
        return Decision::Allow;
    }

    size_t cleanup(uint64_t now) { return log_.cleanup(now); }

  private:
    std::string bsn_;
    WindowPolicy policy_;
    std::map<std::string, daa::GroupPublicKey> gpk_table_;
    daa::RevocationList revocation_view_;
    stores::VerifierLog log_;
};

// ---- end-to-end session with a tamper hook on the simulated channel

enum class MessageKind { Challenge, Submission };

struct ChannelTamperHook {
    std::function<Bytes(MessageKind, Bytes)> mutate;

    Bytes apply(MessageKind kind, Bytes msg) const {
        return mutate ? mutate(kind, std::move(msg)) : msg;
    }
};

struct Transcript {
    Bytes challenge_sent, challenge_received;
    Bytes submission_sent, submission_received;
    std::optional<SignerError> signer_error;
    std::optional<WindowError> signer_window_error;
    bool proof_produced = false;
    std::optional<Decision> decision;

    bool allowed() const { return decision == Decision::Allow; }
};

inline Transcript run_session(SignerAgent& signer, VerifierService& verifier,
                              const ChannelTamperHook& tamper, uint64_t now,
                              RandomSource& rng) {
    Transcript tr;
    tr.challenge_sent = wire::encode_challenge(verifier.issue_challenge(now));
    tr.challenge_received =
        tamper.apply(MessageKind::Challenge, tr.challenge_sent);

    Challenge ch;
    try {
        ch = wire::decode_challenge(tr.challenge_received);
    } catch (const MalformedEncoding&) {
        tr.signer_error = SignerError::WindowInvalid;
        return tr;
    } catch (const MalformedWindow&) {
        tr.signer_error = SignerError::WindowInvalid;
        return tr;
    }

    SignerOutcome out =
        signer.handle_challenge(ch, verifier.bsn(), now, rng);
    tr.signer_error = out.error;
    tr.signer_window_error = out.window_error;
    if (!out.ok()) return tr;
    tr.proof_produced = true;

    tr.submission_sent = wire::encode_submission(*out.submission);
    tr.submission_received =
        tamper.apply(MessageKind::Submission, tr.submission_sent);
    try {
        ProofSubmission sub = wire::decode_submission(tr.submission_received);
        tr.decision = verifier.handle_submission(sub, now);
    } catch (const Error&) {
        tr.decision = Decision::BadSignature;
    }
    return tr;
}

}  // namespace rateassure::protocol
