#include <catch2/catch_amalgamated.hpp>

#include "rateassure/device.hpp"

using namespace rateassure;
using namespace rateassure::device;
using bn::Scalar;

TEST_CASE("manufacturing and certificate chain") {
    SeededRng rng(11);
    ManufacturerCA ca(rng);
    Device d1 = manufacture(ca, rng);
    Device d2 = manufacture(ca, rng);

    CHECK(verify_cert(d1.cert(), ca.pub()));
    CHECK(!(d1.ekpub() == d2.ekpub()));
    CHECK(d1.cert().serial != d2.cert().serial);

    SECTION("rogue CA certificates do not verify") {
        ManufacturerCA rogue(rng);
        Device dr = manufacture(rogue, rng);
        CHECK(!verify_cert(dr.cert(), ca.pub()));
    }
    SECTION("certificate serialization round-trips") {
        Bytes enc = d1.cert().serialize();
        REQUIRE(enc.size() == EKCERT_LEN);
        EKCertificate back = EKCertificate::deserialize(enc);
        CHECK(back.serial == d1.cert().serial);
        CHECK(verify_cert(back, ca.pub()));
    }
    SECTION("signing before activation fails") {
        Bytes bsn = to_bytes("x");
        CHECK_THROWS_AS(d1.sign({}, bsn, rng), DeviceNotActivated);
    }
}

namespace {

struct JoinedDevice {
    daa::GroupPublicKey gpk;
    daa::GroupSecretKey gsk;
    Device device;
};

JoinedDevice join_device(ManufacturerCA& ca, RandomSource& rng) {
    auto [gpk, gsk] = daa::setup(rng);
    Device dev = manufacture(ca, rng);
    daa::MemberPublicKey upk = dev.begin_join(rng);
    daa::Credential cred = daa::issue_credential(gsk, upk, rng);
    Bytes c = encrypt_credential(cred, dev.ekpub(), rng);
    dev.activate_credential(c, gpk);
    return {gpk, gsk, std::move(dev)};
}

}  // namespace

TEST_CASE("credential encryption") {
    SeededRng rng(12);
    ManufacturerCA ca(rng);
    auto [gpk, gsk] = daa::setup(rng);
    Device dev = manufacture(ca, rng);
    Device other = manufacture(ca, rng);
    daa::MemberPublicKey upk = dev.begin_join(rng);
    daa::Credential cred = daa::issue_credential(gsk, upk, rng);
    Bytes c = encrypt_credential(cred, dev.ekpub(), rng);

    SECTION("only the EK holder can decrypt") {
        (void)other.begin_join(rng);
        CHECK_THROWS_AS(other.activate_credential(c, gpk),
                        DecryptionFailure);
    }
    SECTION("ciphertext bit-flip is caught") {
        Bytes bad = c;
        bad[40] ^= 0x01;
        CHECK_THROWS_AS(dev.activate_credential(bad, gpk),
                        DecryptionFailure);
    }
    SECTION("credential for a different upk is rejected") {
        auto [usk2, upk2] = daa::join_request(rng);
        daa::Credential wrong = daa::issue_credential(gsk, upk2, rng);
        Bytes cw = encrypt_credential(wrong, dev.ekpub(), rng);
        CHECK_THROWS_AS(dev.activate_credential(cw, gpk),
                        CredentialMismatch);
    }
    SECTION("honest activation succeeds") {
        dev.activate_credential(c, gpk);
        CHECK(dev.activated());
    }
}

TEST_CASE("device signing and reset") {
    SeededRng rng(13);
    ManufacturerCA ca(rng);
    JoinedDevice jd = join_device(ca, rng);
    Bytes h = to_bytes("origin|win");

    daa::RateAssuringProof s1 = jd.device.sign({}, h, rng);
    daa::RateAssuringProof s2 = jd.device.sign({}, h, rng);
    CHECK(s1.K == s2.K);
    CHECK(daa::verify(s1, {}, h, daa::RevocationList{}, jd.gpk) ==
          daa::VerifyStatus::Accept);

    Bytes h2 = to_bytes("origin|win2");
    CHECK(!(jd.device.sign({}, h2, rng).K == s1.K));

    SECTION("reset clears the credential but keeps the EK") {
        auto ek_before = jd.device.ekpub();
        jd.device.reset();
        CHECK(jd.device.ekpub() == ek_before);
        CHECK_THROWS_AS(jd.device.sign({}, h, rng), DeviceNotActivated);
    }
}

TEST_CASE("tamper gate") {
    SeededRng rng(14);
    ManufacturerCA ca(rng);
    JoinedDevice jd = join_device(ca, rng);

    CHECK_THROWS_AS(jd.device.extract_secrets(), TamperNotEnabled);

    jd.device.set_tamper_flag(true);
    ExtractedSecrets secrets = jd.device.extract_secrets();
    REQUIRE(secrets.usk.has_value());
    Bytes h = to_bytes("victim-origin|w");
    CHECK(daa::pseudonym(*secrets.usk, h) == jd.device.sign({}, h, rng).K);
}
