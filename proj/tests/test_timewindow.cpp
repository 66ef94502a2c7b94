#include <catch2/catch_amalgamated.hpp>

#include "rateassure/rng.hpp"
#include "rateassure/timewindow.hpp"

using namespace rateassure;
using namespace rateassure::timewindow;

TEST_CASE("current_window alignment") {
    CHECK(current_window(120, 1) == TimeWindow{120, 180});
    CHECK(current_window(179, 1) == TimeWindow{120, 180});
    CHECK(current_window(3600, 60) == TimeWindow{3600, 7200});
    CHECK_THROWS_AS(current_window(0, 0), MalformedWindow);
}

TEST_CASE("current_window partitions the timeline") {
    SeededRng rng(21);
    for (int i = 0; i < 200; ++i) {
        Bytes b = rng.bytes(6);
        uint64_t now = 0;
        for (uint8_t c : b) now = (now << 8) | c;
        uint64_t d = 1 + b[0] % 120;
        TimeWindow t = current_window(now, d);
        CHECK(t.contains(now));
        CHECK(t.duration() == 60 * d);
        CHECK(t.start % (60 * d) == 0);
        // neighbours touch but never overlap
        TimeWindow prev{t.start - 60 * d, t.start};
        CHECK(!t.overlaps(prev));
    }
}

TEST_CASE("validate_window") {
    WindowHistory history;
    Bytes bsn = to_bytes("site.example");
    TimeWindow t{120, 180};

    CHECK(!validate_window(t, 150, history, bsn).has_value());
    CHECK(validate_window(t, 200, history, bsn) == WindowError::Expired);
    CHECK(validate_window(t, 100, history, bsn) == WindowError::Future);
    CHECK(validate_window(TimeWindow{0, 31536000}, 500, history, bsn,
                          86400) == WindowError::TooLong);

    SECTION("overlap detection is per basename") {
        history.record(bsn, t);
        CHECK(validate_window(TimeWindow{150, 210}, 160, history, bsn) ==
              WindowError::Overlap);
        // a re-issued identical window is not an overlap
        CHECK(!validate_window(t, 150, history, bsn).has_value());
        // a different basename is unaffected
        Bytes other = to_bytes("other.example");
        CHECK(!validate_window(TimeWindow{150, 210}, 160, history, other)
                   .has_value());
    }
    SECTION("fresh current windows always validate") {
        SeededRng rng(22);
        for (int i = 0; i < 100; ++i) {
            Bytes b = rng.bytes(5);
            uint64_t now = 0;
            for (uint8_t c : b) now = (now << 8) | c;
            uint64_t d = 1 + b[0] % 24;  // up to 24h, within max_duration
            TimeWindow w = current_window(now, 60 * d);
            CHECK(!validate_window(w, now, history, bsn).has_value());
        }
    }
}

TEST_CASE("window encoding") {
    TimeWindow t{120, 180};
    Bytes enc = encode_window(t);
    CHECK(to_string(enc) == "0000000000000000120-0000000000000000180");
    CHECK(decode_window(enc) == t);
    CHECK(encode_window_start(t).size() == 19);

    SECTION("start >= end rejected") {
        Bytes bad = to_bytes("0000000000000000180-0000000000000000120");
        CHECK_THROWS_AS(decode_window(bad), MalformedWindow);
    }
    SECTION("misalignment rejected") {
        Bytes bad = to_bytes("0000000000000000121-0000000000000000180");
        CHECK_THROWS_AS(decode_window(bad), MalformedWindow);
    }
    SECTION("garbage rejected") {
        CHECK_THROWS_AS(decode_window(to_bytes("not-a-window")),
                        MalformedWindow);
        Bytes bad = to_bytes("00000000000000001x0-0000000000000000180");
        CHECK_THROWS_AS(decode_window(bad), MalformedWindow);
    }
    SECTION("round-trip on random windows") {
        SeededRng rng(23);
        for (int i = 0; i < 100; ++i) {
            Bytes b = rng.bytes(5);
            uint64_t now = 0;
            for (uint8_t c : b) now = (now << 8) | c;
            TimeWindow w = current_window(now, 1 + b[0] % 100);
            CHECK(decode_window(encode_window(w)) == w);
        }
    }
}
