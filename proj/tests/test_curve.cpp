#include <catch2/catch_amalgamated.hpp>

#include "rateassure/curve.hpp"

using namespace rateassure;
using namespace rateassure::bn;

TEST_CASE("field tower arithmetic") {
    SeededRng rng(101);
    Fq2 a(Fq(Scalar::random(rng).v), Fq(Scalar::random(rng).v));
    Fq2 b(Fq(Scalar::random(rng).v), Fq(Scalar::random(rng).v));
    CHECK(a * b == b * a);
    CHECK(a * a.inverse() == Fq2::one());
    CHECK(a.square() == a * a);

    Fq6 x(a, b, a * b);
    CHECK(x * x.inverse() == Fq6::one());
    CHECK(x.mul_by_v() == x * Fq6(Fq2::zero(), Fq2::one(), Fq2::zero()));

    Fq12 f(x, Fq6(b, a, b * a));
    CHECK(f * f.inverse() == Fq12::one());
    CHECK(f.square() == f * f);
    CHECK(f.pow(5) == f * f * f * f * f);
}

TEST_CASE("generators have the right order") {
    CHECK(on_curve_g1(g1_generator()));
    CHECK(on_curve_g2(g2_generator()));
    CHECK(in_g2_subgroup(g2_generator()));
    CHECK(g1_generator().scalar_mul(group_order()).is_identity());
}

TEST_CASE("pairing bilinearity") {
    G1Point p1 = G1Point::generator();
    G2Point p2 = G2Point::generator();

    SECTION("zero scalar pairs to the GT identity") {
        CHECK(pairing(p1 * Scalar::zero(), p2) == GTElement::one());
        CHECK(pairing(G1Point::identity(), p2).is_one());
    }
    SECTION("pairing(2P, Q) = pairing(P, Q)^2") {
        GTElement e = pairing(p1, p2);
        CHECK(pairing(p1 * Scalar(2), p2) == e.pow(Scalar(2)));
    }
    SECTION("pairing(xP, yQ) = pairing(P, Q)^(xy) for random x, y") {
        SeededRng rng(55);
        Scalar x = Scalar::random_nonzero(rng);
        Scalar y = Scalar::random_nonzero(rng);
        CHECK(pairing(p1 * x, p2 * y) == pairing(p1, p2).pow(x * y));
    }
    SECTION("nondegenerate on the generators") {
        CHECK(!pairing(p1, p2).is_one());
    }
    SECTION("chained final exponentiation matches the plain power") {
        SeededRng rng(57);
        for (int i = 0; i < 3; ++i) {
            Scalar x = Scalar::random_nonzero(rng);
            Scalar y = Scalar::random_nonzero(rng);
            bn::Fq12 f = bn::detail::miller_loop((p1 * x).p, (p2 * y).p);
            CHECK(bn::detail::final_exponentiation(f) ==
                  bn::detail::final_exponentiation_generic(f));
        }
    }
    SECTION("product form") {
        SeededRng rng(56);
        Scalar x = Scalar::random_nonzero(rng);
        CHECK(pairing_product_is_one({{p1 * x, p2}, {-(p1 * x), p2}}));
        CHECK(!pairing_product_is_one({{p1 * x, p2}, {p1, p2}}));
    }
}

TEST_CASE("hash_to_g1") {
    Bytes a = to_bytes("a"), b = to_bytes("b");
    CHECK(hash_to_g1(a) == hash_to_g1(a));
    CHECK(!(hash_to_g1(a) == hash_to_g1(b)));
    CHECK(hash_to_g1(a).serialize().size() == 33);
    CHECK(!hash_to_g1(a).is_identity());
    CHECK(on_curve_g1(hash_to_g1(a).p));
    CHECK_THROWS_AS(hash_to_g1(Bytes{}), Error);
}

TEST_CASE("point and scalar serialization") {
    SeededRng rng(7);

    SECTION("G1 round-trip, fixed width") {
        G1Point p = G1Point::generator() * Scalar::random_nonzero(rng);
        Bytes enc = p.serialize();
        REQUIRE(enc.size() == G1_LEN);
        CHECK(G1Point::deserialize(enc) == p);
        CHECK(G1Point::deserialize(G1Point::identity().serialize())
                  .is_identity());
    }
    SECTION("G2 round-trip, fixed width") {
        G2Point q = G2Point::generator() * Scalar::random_nonzero(rng);
        Bytes enc = q.serialize();
        REQUIRE(enc.size() == G2_LEN);
        CHECK(G2Point::deserialize(enc) == q);
    }
    SECTION("scalar round-trip") {
        Scalar s = Scalar::random(rng);
        Bytes enc = s.serialize();
        REQUIRE(enc.size() == SCALAR_LEN);
        CHECK(Scalar::deserialize(enc) == s);
        CHECK(Scalar::deserialize(Bytes(32, 0)) == Scalar::zero());
    }
    SECTION("wrong lengths rejected") {
        CHECK_THROWS_AS(G1Point::deserialize(Bytes(32, 0)),
                        MalformedEncoding);
        CHECK_THROWS_AS(Scalar::deserialize(Bytes(31, 0)),
                        MalformedEncoding);
        CHECK_THROWS_AS(G2Point::deserialize(Bytes(128, 0)),
                        MalformedEncoding);
    }
    SECTION("random 33-byte strings almost never decode") {
        size_t accepted = 0;
        for (int i = 0; i < 100; ++i) {
            Bytes junk = rng.bytes(33);
            try {
                (void)G1Point::deserialize(junk);
                ++accepted;
            } catch (const InvalidPoint&) {
            }
        }
        CHECK(accepted <= 5);
    }
    SECTION("off-subgroup G2 bytes rejected") {
        // a point on the twist but outside the r-order subgroup would be
        // caught by the order check; corrupt y to get off-curve instead
        Bytes enc = G2Point::generator().serialize();
        enc[100] ^= 0x01;
        CHECK_THROWS_AS(G2Point::deserialize(enc), InvalidPoint);
    }
}
