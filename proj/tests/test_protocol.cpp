#include <catch2/catch_amalgamated.hpp>

#include "rateassure/harness.hpp"

using namespace rateassure;
using namespace rateassure::protocol;
using harness::World;
using timewindow::TimeWindow;

TEST_CASE("compose_basename") {
    TimeWindow t{120, 180};
    Bytes h = compose_basename("example.com", t);
    CHECK(to_string(h) ==
          "example.com|0000000000000000120-0000000000000000180");
    CHECK(!(compose_basename("example.com", TimeWindow{180, 240}) == h));
    CHECK_THROWS_AS(compose_basename("bad|origin", t), InvalidOrigin);
    CHECK_THROWS_AS(compose_basename("", t), InvalidOrigin);
}

TEST_CASE("wire formats round-trip") {
    SeededRng rng(41);

    SECTION("challenge") {
        Challenge ch{TimeWindow{1704067200, 1704067260}, "origin.example"};
        Bytes enc = wire::encode_challenge(ch);
        CHECK(enc[0] == wire::TAG_CHALLENGE);
        Challenge back = wire::decode_challenge(enc);
        CHECK(back.t == ch.t);
        CHECK(back.bsn == ch.bsn);
    }
    SECTION("decision codes are stable") {
        CHECK(wire::encode_decision(Decision::Allow) ==
              Bytes{wire::TAG_DECISION, 0});
        CHECK(wire::encode_decision(Decision::UnknownGM) ==
              Bytes{wire::TAG_DECISION, 5});
        CHECK(wire::decode_decision(Bytes{wire::TAG_DECISION, 2}) ==
              Decision::RateLimited);
        CHECK_THROWS_AS(wire::decode_decision(Bytes{wire::TAG_DECISION, 9}),
                        MalformedEncoding);
    }
    SECTION("truncated messages rejected") {
        Challenge ch{TimeWindow{60, 120}, "origin.example"};
        Bytes enc = wire::encode_challenge(ch);
        enc.pop_back();
        CHECK_THROWS_AS(wire::decode_challenge(enc), MalformedEncoding);
        enc.push_back(0);
        enc.push_back(0);
        CHECK_THROWS_AS(wire::decode_challenge(enc), MalformedEncoding);
    }
}

TEST_CASE("join flow through the GM") {
    World w(42);

    SECTION("honest join activates the device") {
        SignerAgent& s = w.enroll();
        CHECK(w.devices[0]->activated());
        (void)s;
    }
    SECTION("second join for the same EK is refused") {
        w.enroll();
        w.devices[0]->reset();
        daa::MemberPublicKey upk = w.devices[0]->begin_join(w.rng);
        CHECK_THROWS_AS(w.gm.handle_join(w.devices[0]->cert(), upk, w.rng),
                        ExceededJoinLimit);
    }
    SECTION("rogue CA is refused") {
        device::ManufacturerCA rogue(w.rng);
        device::Device dev = device::manufacture(rogue, w.rng);
        daa::MemberPublicKey upk = dev.begin_join(w.rng);
        CHECK_THROWS_AS(w.gm.handle_join(dev.cert(), upk, w.rng),
                        UntrustedManufacturer);
    }
    SECTION("broken join proof is refused") {
        device::Device dev = device::manufacture(w.ca, w.rng);
        daa::MemberPublicKey upk = dev.begin_join(w.rng);
        upk.pok.response = upk.pok.response + bn::Scalar(1);
        CHECK_THROWS_AS(w.gm.handle_join(dev.cert(), upk, w.rng),
                        InvalidJoinProof);
    }
}

TEST_CASE("challenge issuance tracks the clock") {
    World w(43);
    Challenge c1 = w.verifier.issue_challenge(150);
    CHECK(c1.t == TimeWindow{120, 180});
    CHECK(c1.bsn == w.verifier.bsn());
    CHECK(w.verifier.issue_challenge(160).t == c1.t);
    CHECK(!w.verifier.issue_challenge(181).t.overlaps(c1.t));
}

TEST_CASE("verifier decision ladder") {
    World w(44);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;

    Transcript tr = run_session(s, w.verifier, {}, now, w.rng);
    REQUIRE(tr.decision == Decision::Allow);
    ProofSubmission sub = wire::decode_submission(tr.submission_sent);

    SECTION("identical replay is rate-limited") {
        CHECK(w.verifier.handle_submission(sub, now) ==
              Decision::RateLimited);
    }
    SECTION("wrong window is denied before anything else") {
        ProofSubmission other = sub;
        other.t = TimeWindow{sub.t.start + 60, sub.t.end + 60};
        CHECK(w.verifier.handle_submission(other, now) ==
              Decision::WindowInvalid);
    }
    SECTION("unknown GM never touches the log") {
        ProofSubmission other = sub;
        other.gm_identity = "nobody.example";
        other.sigma.K = other.sigma.K + bn::G1Point::generator();
        CHECK(w.verifier.handle_submission(other, now) ==
              Decision::UnknownGM);
        CHECK(!w.verifier.log().contains(other.t,
                                         other.sigma.K.serialize()));
    }
    SECTION("bad signature gets a compensating delete") {
        ProofSubmission other = sub;
        other.sigma.s = other.sigma.s + bn::Scalar(1);
        other.sigma.K = other.sigma.K + bn::G1Point::generator();
        CHECK(w.verifier.handle_submission(other, now) ==
              Decision::BadSignature);
        // the slot the invalid submission briefly held is free again
        CHECK(!w.verifier.log().contains(other.t,
                                         other.sigma.K.serialize()));
    }
}

TEST_CASE("revocation propagates to decisions") {
    World w(45);
    SignerAgent& s = w.enroll();
    w.devices[0]->set_tamper_flag(true);
    auto usk = *w.devices[0]->extract_secrets().usk;
    w.gm.revoke_member(usk);
    w.verifier.set_revocation_view(w.gm.revocation_list());

    Transcript tr =
        run_session(s, w.verifier, {}, w.window_start(0) + 5, w.rng);
    CHECK(tr.decision == Decision::Revoked);
    // the revoked submission does not consume the log slot
    ProofSubmission sub = wire::decode_submission(tr.submission_sent);
    CHECK(!w.verifier.log().contains(sub.t, sub.sigma.K.serialize()));
}

TEST_CASE("signer gate keeps one proof per window") {
    World w(46);
    SignerAgent& s = w.enroll();
    uint64_t now = w.window_start(0) + 5;
    Challenge ch = w.verifier.issue_challenge(now);

    auto first = s.handle_challenge(ch, w.verifier.bsn(), now, w.rng);
    REQUIRE(first.ok());
    auto second = s.handle_challenge(ch, w.verifier.bsn(), now, w.rng);
    CHECK(second.error == SignerError::AlreadySignedThisWindow);

    SECTION("origin mismatch refused") {
        Challenge lied{ch.t, "evil.example"};
        auto out = s.handle_challenge(lied, w.verifier.bsn(),
                                      now, w.rng);
        CHECK(out.error == SignerError::OriginMismatch);
    }
}

TEST_CASE("pseudonym separation across verifiers and windows") {
    World w(47);
    SignerAgent& s = w.enroll();
    VerifierService other("other.example.org", w.sandbox.dir("v2"));
    other.register_gm(w.gm.identity(), w.gm.gpk());

    uint64_t now = w.window_start(0) + 5;
    Transcript t1 = run_session(s, w.verifier, {}, now, w.rng);
    Transcript t2 = run_session(s, other, {}, now, w.rng);
    Transcript t3 =
        run_session(s, w.verifier, {}, w.window_start(1) + 5, w.rng);
    REQUIRE(t1.allowed());
    REQUIRE(t2.allowed());
    REQUIRE(t3.allowed());

    auto k1 = wire::decode_submission(t1.submission_sent).sigma.K;
    auto k2 = wire::decode_submission(t2.submission_sent).sigma.K;
    auto k3 = wire::decode_submission(t3.submission_sent).sigma.K;
    CHECK(!(k1 == k2));  // distinct origins
    CHECK(!(k1 == k3));  // distinct windows
}
