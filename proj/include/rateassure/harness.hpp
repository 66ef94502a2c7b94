#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "rateassure/protocol.hpp"

// CLI-driven simulation layer: honest runs, the adversarial scenario
// suite, microbenchmarks, and size/storage reports. Scenarios run on a
// logical clock with seeded randomness so transcripts are reproducible.
namespace rateassure::harness {

using protocol::ChannelTamperHook;
using protocol::Decision;
using protocol::GroupManager;
using protocol::MessageKind;
using protocol::SignerAgent;
using protocol::SignerError;
using protocol::Transcript;
using protocol::VerifierService;
using timewindow::TimeWindow;

// 2024-01-01T00:00:00Z; minute-aligned logical epoch for scenarios.
inline constexpr uint64_t SCENARIO_EPOCH = 1704067200;

struct ScenarioReport {
    std::string name;
    std::vector<std::string> steps;
    std::vector<std::pair<std::string, bool>> assertions;
    bool detected = false;

    void step(std::string s) { steps.push_back(std::move(s)); }
    void expect(std::string what, bool ok) {
        assertions.emplace_back(std::move(what), ok);
    }
    bool passed() const {
        if (!detected) return false;
        for (const auto& [_, ok] : assertions)
            if (!ok) return false;
        return true;
    }
};

struct BenchReport {
    std::string operation;
    size_t iterations = 0;
    size_t rl_size = 0;
    double mean_ms = 0, median_ms = 0, p95_ms = 0;
};

struct SizeReport {
    size_t sigma_bytes = 0;
    size_t t_start_bytes = 0;
    size_t signer_entries = 0;
    uint64_t signer_log_bytes = 0;
    size_t verifier_entries = 0;
    uint64_t verifier_log_bytes = 0;
};

// Unique scratch directory, removed on destruction.
class Sandbox {
  public:
    Sandbox() {
        static std::atomic<uint64_t> counter{0};
        auto base = std::filesystem::temp_directory_path() / "rate-assure";
        std::filesystem::create_directories(base);
        root_ = base / (std::to_string(
                            std::chrono::steady_clock::now()
                                .time_since_epoch()
                                .count()) +
                        "-" + std::to_string(counter++));
        std::filesystem::create_directories(root_);
    }
    ~Sandbox() {
        std::error_code ec;
        std::filesystem::remove_all(root_, ec);
    }
    Sandbox(const Sandbox&) = delete;
    Sandbox& operator=(const Sandbox&) = delete;

    std::filesystem::path dir(const std::string& name) const {
        auto d = root_ / name;
        std::filesystem::create_directories(d);
        return d;
    }
    const std::filesystem::path& root() const { return root_; }

  private:
    std::filesystem::path root_;
};

// Shared fixture: one CA, one GM, one verifier, n enrolled signers.
struct World {
    Sandbox sandbox;
    SeededRng rng;
    device::ManufacturerCA ca;
    GroupManager gm;
    VerifierService verifier;
    std::vector<std::unique_ptr<device::Device>> devices;
    std::vector<std::unique_ptr<SignerAgent>> signers;

    explicit World(uint64_t seed, uint64_t window_minutes = 1,
                   uint32_t max_joins = 1)
        : rng(seed),
          ca(rng),
          gm("gm.example.org", sandbox.dir("gm"), rng, max_joins),
          verifier("verifier.example.com", sandbox.dir("verifier"),
                   {window_minutes,
                    timewindow::DEFAULT_MAX_DURATION_SECONDS}) {
        gm.trust_ca(ca.pub());
        verifier.register_gm(gm.identity(), gm.gpk());
    }

    SignerAgent& enroll() {
        devices.push_back(
            std::make_unique<device::Device>(device::manufacture(ca, rng)));
        size_t i = signers.size();
        signers.push_back(std::make_unique<SignerAgent>(
            *devices.back(), gm.identity(),
            sandbox.dir("signer" + std::to_string(i))));
        signers.back()->join(gm, rng);
        return *signers.back();
    }

    uint64_t window_start(size_t k) const {
        return SCENARIO_EPOCH +
               k * 60 * verifier.policy().duration_minutes;
    }
};

inline ScenarioReport run_honest(size_t n_signers, size_t n_windows,
                                 uint64_t window_minutes, uint64_t seed) {
    ScenarioReport rep;
    rep.name = "honest";
    World w(seed, window_minutes);
    for (size_t i = 0; i < n_signers; ++i) w.enroll();

    size_t allows = 0;
    std::set<Bytes> pseudonyms;
    for (size_t k = 0; k < n_windows; ++k) {
        uint64_t now = w.window_start(k) + 5;
        for (auto& signer : w.signers) {
            Transcript tr =
                protocol::run_session(*signer, w.verifier, {}, now, w.rng);
            rep.step("window " + std::to_string(k) + ": " +
                     (tr.decision ? protocol::to_string(*tr.decision)
                                  : "no decision"));
            if (tr.allowed()) {
                ++allows;
                auto sub = protocol::wire::decode_submission(
                    tr.submission_sent);
                pseudonyms.insert(sub.sigma.K.serialize());
            }
        }
    }
    rep.expect("every session allowed", allows == n_signers * n_windows);
    rep.expect("pseudonyms all distinct",
               pseudonyms.size() == n_signers * n_windows);
    rep.detected = allows == n_signers * n_windows;
    return rep;
}

enum class AttackKind {
    ForgeSignature,
    ForgeTimestamp,
    ProofsUpfront,
    MultiCredential,
    DeviceReset,
    LeakedEK,
    LeakedUsk,
    LeakedBoth,
    NetworkTamper,
    RogueCA,
    LongWindowTracking,
    OverlapTracking,
    ReplayFlood,
};

inline const std::vector<std::pair<AttackKind, std::string>>&
attack_catalog() {
    static const std::vector<std::pair<AttackKind, std::string>> kinds = {
        {AttackKind::ForgeSignature, "forge-signature"},
        {AttackKind::ForgeTimestamp, "forge-timestamp"},
        {AttackKind::ProofsUpfront, "proofs-upfront"},
        {AttackKind::MultiCredential, "multi-credential"},
        {AttackKind::DeviceReset, "device-reset"},
        {AttackKind::LeakedEK, "leaked-ek"},
        {AttackKind::LeakedUsk, "leaked-usk"},
        {AttackKind::LeakedBoth, "leaked-both"},
        {AttackKind::NetworkTamper, "network-tamper"},
        {AttackKind::RogueCA, "rogue-ca"},
        {AttackKind::LongWindowTracking, "long-window-tracking"},
        {AttackKind::OverlapTracking, "overlap-tracking"},
        {AttackKind::ReplayFlood, "replay-flood"},
    };
    return kinds;
}

inline std::string to_string(AttackKind k) {
    for (const auto& [kind, name] : attack_catalog())
        if (kind == k) return name;
    return "?";
}

inline std::optional<AttackKind> attack_from_string(const std::string& s) {
    for (const auto& [kind, name] : attack_catalog())
        if (name == s) return kind;
    return std::nullopt;
}

namespace detail {

inline protocol::ProofSubmission make_submission(
    const daa::RateAssuringProof& sigma, const TimeWindow& t,
    const std::string& gm_identity) {
    protocol::ProofSubmission sub;
    sub.sigma = sigma;
    sub.t = t;
    sub.gm_identity = gm_identity;
    return sub;
}

inline ScenarioReport attack_forge_signature(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    uint64_t now = w.window_start(0) + 5;
    TimeWindow t = timewindow::current_window(now, 1);
    // attacker invents a credential out of thin air; no GM involved
    daa::MemberSecretKey usk{bn::Scalar::random_nonzero(w.rng)};
    daa::Credential fake{
        bn::G1Point::generator() * bn::Scalar::random_nonzero(w.rng),
        bn::G1Point::generator() * bn::Scalar::random_nonzero(w.rng),
        bn::G1Point::generator() * bn::Scalar::random_nonzero(w.rng),
        bn::G1Point::generator() * bn::Scalar::random_nonzero(w.rng)};
    fake.D = fake.B * usk.sk;  // keep the Schnorr relation satisfiable
    Bytes h = protocol::compose_basename(w.verifier.bsn(), t);
    auto sigma = daa::sign({}, h, usk, fake, w.rng);
    Decision d = w.verifier.handle_submission(
        make_submission(sigma, t, w.gm.identity()), now);
    rep.step(protocol::to_string(d));
    rep.expect("forged credential denied", d == Decision::BadSignature);
    rep.detected = d == Decision::BadSignature;
    return rep;
}

inline ScenarioReport attack_forge_timestamp(uint64_t seed) {
    ScenarioReport rep;
    World w(seed, 60);  // one access per hour
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 600;
    // self-chosen one-minute window inside the verifier's hour
    TimeWindow forged = timewindow::current_window(now, 1);
    Bytes h = protocol::compose_basename(w.verifier.bsn(), forged);
    auto sigma = s.device().sign({}, h, w.rng);
    Decision d = w.verifier.handle_submission(
        make_submission(sigma, forged, w.gm.identity()), now);
    rep.step(protocol::to_string(d));
    rep.expect("shrunken window denied", d == Decision::WindowInvalid);
    rep.detected = d == Decision::WindowInvalid;
    return rep;
}

inline ScenarioReport attack_proofs_upfront(uint64_t seed, size_t k = 10) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;
    size_t allows = 0;
    for (size_t i = 1; i <= k; ++i) {
        TimeWindow future = timewindow::current_window(now + 60 * i, 1);
        Bytes h = protocol::compose_basename(w.verifier.bsn(), future);
        auto sigma = s.device().sign({}, h, w.rng);
        Decision d = w.verifier.handle_submission(
            make_submission(sigma, future, w.gm.identity()), now);
        rep.step(protocol::to_string(d));
        if (d == Decision::Allow) ++allows;
        rep.expect("future-window proof denied",
                   d == Decision::WindowInvalid);
    }
    rep.detected = allows == 0;
    return rep;
}

inline ScenarioReport attack_multi_credential(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();  // first join consumed the quota
    bool limited = false;
    try {
        daa::MemberPublicKey upk2 = s.device().begin_join(w.rng);
        w.gm.handle_join(s.device().cert(), upk2, w.rng);
    } catch (const ExceededJoinLimit&) {
        limited = true;
    }
    rep.step(limited ? "second credential refused" : "second credential issued");
    rep.expect("GM refuses second credential for same EK", limited);
    rep.detected = limited;
    return rep;
}

inline ScenarioReport attack_device_reset(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();
    s.device().reset();
    bool limited = false;
    try {
        daa::MemberPublicKey upk = s.device().begin_join(w.rng);
        w.gm.handle_join(s.device().cert(), upk, w.rng);
    } catch (const ExceededJoinLimit&) {
        limited = true;
    }
    rep.step(limited ? "re-join refused" : "re-join accepted");
    rep.expect("EK survives reset and join quota holds", limited);
    rep.expect("registry counted both joins",
               w.gm.registry().join_count(device::ek_fingerprint(
                   s.device().ekpub())) == 2);
    rep.detected = limited;
    return rep;
}

inline ScenarioReport attack_leaked_ek(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    // EK leaks in the supply chain, before the victim ever joins
    auto victim = std::make_unique<device::Device>(
        device::manufacture(w.ca, w.rng));
    victim->set_tamper_flag(true);
    auto secrets = victim->extract_secrets();
    victim->set_tamper_flag(false);
    device::Device clone(
        device::EndorsementKey{secrets.ek_secret,
                               bn::G1Point::generator() * secrets.ek_secret},
        victim->cert());
    SignerAgent attacker(clone, w.gm.identity(), w.sandbox.dir("attacker"));
    attacker.join(w.gm, w.rng);
    rep.step("attacker joined with stolen EK");

    bool victim_refused = false;
    try {
        SignerAgent honest(*victim, w.gm.identity(),
                           w.sandbox.dir("victim"));
        honest.join(w.gm, w.rng);
    } catch (const ExceededJoinLimit&) {
        victim_refused = true;
    }
    rep.step(victim_refused ? "victim join refused (leak detected)"
                            : "victim join accepted");
    rep.expect("victim detects the leak at join time", victim_refused);
    rep.detected = victim_refused;
    return rep;
}

inline ScenarioReport attack_leaked_usk(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& victim = w.enroll();
    uint64_t now = w.window_start(0) + 5;
    Transcript tr = protocol::run_session(victim, w.verifier, {}, now, w.rng);
    rep.expect("victim's honest session allowed", tr.allowed());
    auto sub = protocol::wire::decode_submission(tr.submission_sent);

    w.devices[0]->set_tamper_flag(true);
    auto secrets = w.devices[0]->extract_secrets();
    Bytes h = protocol::compose_basename(w.verifier.bsn(), sub.t);
    bn::G1Point linked = daa::pseudonym(*secrets.usk, h);
    bool privacy_lost = linked == sub.sigma.K;
    rep.step(privacy_lost ? "attacker linked victim pseudonym"
                          : "linkage failed");
    rep.expect("leaked usk links the victim's proof", privacy_lost);

    // rate limiting is unaffected: the window slot is already consumed
    Transcript tr2 = protocol::run_session(victim, w.verifier, {}, now, w.rng);
    rep.expect("window slot stays consumed", !tr2.allowed());
    rep.detected = privacy_lost && !tr2.allowed();
    return rep;
}

inline ScenarioReport attack_leaked_both(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& victim = w.enroll();
    w.devices[0]->set_tamper_flag(true);
    auto secrets = w.devices[0]->extract_secrets();
    w.devices[0]->set_tamper_flag(false);

    uint64_t now = w.window_start(0) + 5;
    TimeWindow t = timewindow::current_window(now, 1);
    Bytes h = protocol::compose_basename(w.verifier.bsn(), t);

    // attacker holds (usk, cred) and races the victim within one window
    size_t allows = 0;
    auto sigma_a = daa::sign({}, h, *secrets.usk, *secrets.cred, w.rng);
    Decision da = w.verifier.handle_submission(
        make_submission(sigma_a, t, w.gm.identity()), now);
    rep.step(std::string("attacker: ") + protocol::to_string(da));
    if (da == Decision::Allow) ++allows;

    Transcript tr = protocol::run_session(victim, w.verifier, {}, now, w.rng);
    rep.step(std::string("victim: ") +
             (tr.decision ? protocol::to_string(*tr.decision) : "no proof"));
    if (tr.allowed()) ++allows;

    rep.expect("combined allows per window is exactly one", allows == 1);
    rep.detected = allows == 1;
    return rep;
}

inline ScenarioReport attack_network_tamper(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;

    ChannelTamperHook flip;
    flip.mutate = [](MessageKind kind, Bytes msg) {
        if (kind == MessageKind::Submission && msg.size() > 10)
            msg[10] ^= 0x01;  // inside the serialized sigma
        return msg;
    };
    Transcript tr = protocol::run_session(s, w.verifier, flip, now, w.rng);
    rep.step(tr.decision ? protocol::to_string(*tr.decision) : "no decision");
    rep.expect("tampered proof denied", tr.decision == Decision::BadSignature);
    rep.expect("honest signer produced a legitimate proof",
               tr.proof_produced);

    // tampering with the challenge window is caught before signing
    ChannelTamperHook rewind;
    rewind.mutate = [&](MessageKind kind, Bytes msg) {
        if (kind != MessageKind::Challenge) return msg;
        protocol::Challenge ch = protocol::wire::decode_challenge(msg);
        ch.t = {ch.t.start - 3600, ch.t.end - 3600};
        return protocol::wire::encode_challenge(ch);
    };
    Transcript tr2 = protocol::run_session(s, w.verifier, rewind,
                                           now + 60, w.rng);
    rep.expect("expired challenge aborted before signing",
               tr2.signer_error == SignerError::WindowInvalid &&
                   !tr2.proof_produced);
    rep.detected = tr.decision == Decision::BadSignature &&
                   tr.proof_produced && !tr2.proof_produced;
    return rep;
}

inline ScenarioReport attack_rogue_ca(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    device::ManufacturerCA rogue(w.rng);
    device::Device dev = device::manufacture(rogue, w.rng);
    SignerAgent agent(dev, w.gm.identity(), w.sandbox.dir("rogue-signer"));
    bool refused = false;
    try {
        agent.join(w.gm, w.rng);
    } catch (const UntrustedManufacturer&) {
        refused = true;
    }
    rep.step(refused ? "rogue certificate refused" : "rogue cert accepted");
    rep.expect("unregistered CA rejected", refused);
    rep.detected = refused;
    return rep;
}

inline ScenarioReport attack_long_window_tracking(uint64_t seed) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;
    // one-year window: far beyond the 24h cap
    TimeWindow year{w.window_start(0), w.window_start(0) + 31536000};
    auto out = s.handle_challenge({year, w.verifier.bsn()},
                                  w.verifier.bsn(), now, w.rng);
    rep.step(out.error ? protocol::to_string(*out.error) : "signed");
    rep.expect("signer refuses the long window",
               out.error == SignerError::WindowInvalid &&
                   out.window_error == timewindow::WindowError::TooLong);
    rep.expect("audit event recorded", !s.audit_events().empty());
    rep.detected = !s.audit_events().empty() &&
                   out.window_error == timewindow::WindowError::TooLong;
    return rep;
}

inline ScenarioReport attack_overlap_tracking(uint64_t seed) {
    ScenarioReport rep;
    World w(seed, 2);
    SignerAgent& s = w.enroll();
    uint64_t t0 = w.window_start(0);
    auto first = s.handle_challenge({{t0, t0 + 120}, w.verifier.bsn()},
                                    w.verifier.bsn(), t0 + 5, w.rng);
    rep.expect("baseline window accepted", first.ok());
    // tracking probe: overlaps the previously served window
    auto probe = s.handle_challenge({{t0 + 60, t0 + 180}, w.verifier.bsn()},
                                    w.verifier.bsn(), t0 + 70, w.rng);
    rep.step(probe.error ? protocol::to_string(*probe.error) : "signed");
    rep.expect("overlapping window refused",
               probe.window_error == timewindow::WindowError::Overlap);
    rep.expect("audit event recorded", !s.audit_events().empty());
    rep.detected = probe.window_error == timewindow::WindowError::Overlap &&
                   !s.audit_events().empty();
    return rep;
}

inline ScenarioReport attack_replay_flood(uint64_t seed,
                                          size_t threads = 100) {
    ScenarioReport rep;
    World w(seed);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;
    protocol::Challenge ch = w.verifier.issue_challenge(now);
    auto out = s.handle_challenge(ch, w.verifier.bsn(), now, w.rng);
    rep.expect("proof produced", out.ok());
    Bytes msg = protocol::wire::encode_submission(*out.submission);

    std::atomic<size_t> allows{0}, limited{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t i = 0; i < threads; ++i) {
        pool.emplace_back([&] {
            auto sub = protocol::wire::decode_submission(msg);
            Decision d = w.verifier.handle_submission(sub, now);
            if (d == Decision::Allow) ++allows;
            if (d == Decision::RateLimited) ++limited;
        });
    }
    for (auto& th : pool) th.join();
    std::ostringstream os;
    os << allows.load() << " allowed, " << limited.load() << " rate-limited";
    rep.step(os.str());
    rep.expect("exactly one replay admitted", allows == 1);
    rep.expect("all others rate-limited", limited == threads - 1);
    rep.detected = allows == 1 && limited == threads - 1;
    return rep;
}

}  // namespace detail

inline ScenarioReport run_attack(AttackKind kind, uint64_t seed) {
    ScenarioReport rep;
    switch (kind) {
        case AttackKind::ForgeSignature:
            rep = detail::attack_forge_signature(seed);
            break;
        case AttackKind::ForgeTimestamp:
            rep = detail::attack_forge_timestamp(seed);
            break;
        case AttackKind::ProofsUpfront:
            rep = detail::attack_proofs_upfront(seed);
            break;
        case AttackKind::MultiCredential:
            rep = detail::attack_multi_credential(seed);
            break;
        case AttackKind::DeviceReset:
            rep = detail::attack_device_reset(seed);
            break;
        case AttackKind::LeakedEK:
            rep = detail::attack_leaked_ek(seed);
            break;
        case AttackKind::LeakedUsk:
            rep = detail::attack_leaked_usk(seed);
            break;
        case AttackKind::LeakedBoth:
            rep = detail::attack_leaked_both(seed);
            break;
        case AttackKind::NetworkTamper:
            rep = detail::attack_network_tamper(seed);
            break;
        case AttackKind::RogueCA:
            rep = detail::attack_rogue_ca(seed);
            break;
        case AttackKind::LongWindowTracking:
            rep = detail::attack_long_window_tracking(seed);
            break;
        case AttackKind::OverlapTracking:
            rep = detail::attack_overlap_tracking(seed);
            break;
        case AttackKind::ReplayFlood:
            rep = detail::attack_replay_flood(seed);
            break;
    }
    rep.name = to_string(kind);
    return rep;
}

// ---- benchmarks (ordinal claims only; wall-clock)

namespace detail {

inline BenchReport summarize(std::string op, size_t rl_size,
                             std::vector<double> samples) {
    BenchReport r;
    r.operation = std::move(op);
    r.iterations = samples.size();
    r.rl_size = rl_size;
    std::sort(samples.begin(), samples.end());
    double sum = 0;
    for (double s : samples) sum += s;
    r.mean_ms = sum / samples.size();
    r.median_ms = samples[samples.size() / 2];
    r.p95_ms = samples[std::min(samples.size() - 1,
                                static_cast<size_t>(
                                    std::ceil(samples.size() * 0.95)) - 1)];
    return r;
}

}  // namespace detail

inline BenchReport bench_sign(size_t iterations, RandomSource& rng) {
    auto [gpk, gsk] = daa::setup(rng);
    auto [usk, upk] = daa::join_request(rng);
    daa::Credential cred = daa::issue_credential(gsk, upk, rng);
    Bytes h = to_bytes("bench.example.com|0000001704067200");
    std::vector<double> samples;
    for (size_t i = 0; i < iterations; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        auto sigma = daa::sign({}, h, usk, cred, rng);
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
        (void)sigma;
    }
    return detail::summarize("sign", 0, std::move(samples));
}

inline BenchReport bench_verify(size_t iterations, size_t rl_size,
                                RandomSource& rng) {
    auto [gpk, gsk] = daa::setup(rng);
    auto [usk, upk] = daa::join_request(rng);
    daa::Credential cred = daa::issue_credential(gsk, upk, rng);
    Bytes h = to_bytes("bench.example.com|0000001704067200");
    daa::RevocationList rl(std::max<size_t>(rl_size, 1));
    for (size_t i = 0; i < rl_size; ++i)
        rl = daa::revoke({bn::Scalar::random_nonzero(rng)}, rl);
    auto sigma = daa::sign({}, h, usk, cred, rng);
    std::vector<double> samples;
    for (size_t i = 0; i < iterations; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        auto st = daa::verify(sigma, {}, h, rl, gpk);
        auto t1 = std::chrono::steady_clock::now();
        if (st != daa::VerifyStatus::Accept)
            throw Error("bench signature failed to verify");
        samples.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return detail::summarize(rl_size ? "verify_with_rl" : "verify", rl_size,
                             std::move(samples));
}

// ---- size and storage measurements (always measured, never hardcoded)

inline SizeReport report_sizes(size_t n_signer_entries,
                               size_t n_verifier_entries, uint64_t seed) {
    SizeReport rep;
    SeededRng rng(seed);
    auto [gpk, gsk] = daa::setup(rng);
    auto [usk, upk] = daa::join_request(rng);
    daa::Credential cred = daa::issue_credential(gsk, upk, rng);

    TimeWindow t0 = timewindow::current_window(SCENARIO_EPOCH, 1);
    Bytes h = protocol::compose_basename("size.example.com", t0);
    rep.sigma_bytes = daa::sign({}, h, usk, cred, rng).serialize().size();
    rep.t_start_bytes = timewindow::encode_window_start(t0).size();

    Sandbox sandbox;
    stores::SignerLog slog(sandbox.root() / "signer_log.bin");
    for (size_t i = 0; i < n_signer_entries; ++i) {
        TimeWindow t{SCENARIO_EPOCH + 60 * i, SCENARIO_EPOCH + 60 * (i + 1)};
        slog.check_and_insert(t, to_bytes("origin-" + std::to_string(i % 7)));
    }
    rep.signer_entries = slog.size();
    rep.signer_log_bytes = slog.footprint_bytes();

    stores::VerifierLog vlog(sandbox.root() / "verifier_log.bin");
    Bytes point = bn::G1Point::generator().serialize();
    for (size_t i = 0; i < n_verifier_entries; ++i) {
        // distinct pseudonym bytes without per-entry scalar mults
        Bytes k = point;
        k[1] ^= static_cast<uint8_t>(i);
        k[2] ^= static_cast<uint8_t>(i >> 8);
        k[3] ^= static_cast<uint8_t>(i >> 16);
        TimeWindow t{SCENARIO_EPOCH, SCENARIO_EPOCH + 60};
        vlog.check_and_insert(t, k);
    }
    rep.verifier_entries = vlog.size();
    rep.verifier_log_bytes = vlog.footprint_bytes();
    return rep;
}

}  // namespace rateassure::harness
