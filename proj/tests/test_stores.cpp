#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <filesystem>
#include <thread>

#include "rateassure/stores.hpp"

using namespace rateassure;
using namespace rateassure::stores;
using timewindow::TimeWindow;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("rateassure-test-" +
                std::to_string(
                    std::chrono::steady_clock::now().time_since_epoch()
                        .count()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("signer log check-and-insert") {
    TempDir dir;
    SignerLog log(dir.path / "s.bin");
    TimeWindow t{120, 180};
    Bytes bsn = to_bytes("a.example");

    CHECK(log.check_and_insert(t, bsn) == InsertResult::Inserted);
    CHECK(log.check_and_insert(t, bsn) == InsertResult::Duplicate);
    CHECK(log.check_and_insert(t, to_bytes("b.example")) ==
          InsertResult::Inserted);
    CHECK(log.check_and_insert(TimeWindow{180, 240}, bsn) ==
          InsertResult::Inserted);
    CHECK(log.size() == 3);
}

TEST_CASE("verifier log check-and-insert and removal") {
    TempDir dir;
    VerifierLog log(dir.path / "v.bin");
    TimeWindow t{120, 180};
    Bytes k(33, 0x42);
    k[0] = 0x02;

    CHECK(log.check_and_insert(t, k) == InsertResult::Inserted);
    CHECK(log.check_and_insert(t, k) == InsertResult::Duplicate);
    log.remove(t, k);
    CHECK(log.check_and_insert(t, k) == InsertResult::Inserted);
}

TEST_CASE("concurrent duplicate submissions admit exactly one") {
    TempDir dir;
    VerifierLog log(dir.path / "v.bin");
    TimeWindow t{600, 660};
    Bytes k(33, 0x07);
    k[0] = 0x03;

    std::atomic<int> inserted{0}, duplicate{0};
    std::vector<std::thread> pool;
    for (int i = 0; i < 100; ++i) {
        pool.emplace_back([&] {
            if (log.check_and_insert(t, k) == InsertResult::Inserted)
                ++inserted;
            else
                ++duplicate;
        });
    }
    for (auto& th : pool) th.join();
    CHECK(inserted == 1);
    CHECK(duplicate == 99);
}

TEST_CASE("persistence across reopen") {
    TempDir dir;
    TimeWindow t{120, 180};
    Bytes bsn = to_bytes("persist.example");
    {
        SignerLog log(dir.path / "s.bin");
        CHECK(log.check_and_insert(t, bsn) == InsertResult::Inserted);
    }
    SignerLog reopened(dir.path / "s.bin");
    CHECK(reopened.check_and_insert(t, bsn) == InsertResult::Duplicate);
    CHECK(reopened.size() == 1);
}

TEST_CASE("signer cleanup keeps live and newest windows") {
    TempDir dir;
    SignerLog log(dir.path / "s.bin");
    Bytes bsn = to_bytes("c.example");

    SECTION("stale window purged, newest kept") {
        log.check_and_insert(TimeWindow{0, 60}, bsn);
        log.check_and_insert(TimeWindow{60, 120}, bsn);
        CHECK(log.cleanup(90) == 1);  // [0,60) goes, [60,120) is newest
        CHECK(log.contains(TimeWindow{60, 120}, bsn));
        CHECK(!log.contains(TimeWindow{0, 60}, bsn));
    }
    SECTION("single entry survives even when expired") {
        log.check_and_insert(TimeWindow{0, 60}, bsn);
        CHECK(log.cleanup(10000) == 0);
    }
    SECTION("bulk purge leaves duplicate detection intact") {
        for (uint64_t i = 0; i < 1000; ++i)
            log.check_and_insert(TimeWindow{i * 60, (i + 1) * 60}, bsn);
        uint64_t now = 1001 * 60;
        log.check_and_insert(TimeWindow{1000 * 60, 1001 * 60}, bsn);
        size_t purged = log.cleanup(now);
        CHECK(purged == 1000);
        CHECK(log.check_and_insert(TimeWindow{1000 * 60, 1001 * 60}, bsn) ==
              InsertResult::Duplicate);
    }
}

TEST_CASE("verifier cleanup drops expired windows") {
    TempDir dir;
    VerifierLog log(dir.path / "v.bin");
    Bytes k1(33, 0x01), k2(33, 0x02);
    k1[0] = k2[0] = 0x02;
    log.check_and_insert(TimeWindow{0, 60}, k1);
    log.check_and_insert(TimeWindow{60, 120}, k2);
    CHECK(log.cleanup(90) == 1);
    CHECK(!log.contains(TimeWindow{0, 60}, k1));
    CHECK(log.contains(TimeWindow{60, 120}, k2));
}

// Replay oracle: cleanup must never change a later decision.
TEST_CASE("cleanup equivalence on random traces") {
    SeededRng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        TempDir dir;
        VerifierLog a(dir.path / "a.bin");
        VerifierLog b(dir.path / "b.bin");
        uint64_t now = 0;
        for (int i = 0; i < 200; ++i) {
            Bytes r = rng.bytes(4);
            now += r[0] % 40;
            TimeWindow t = timewindow::current_window(now, 1);
            Bytes k(33, r[1] % 4);  // few distinct keys -> many duplicates
            k[0] = 0x02;
            auto da = a.check_and_insert(t, k);
            auto db = b.check_and_insert(t, k);
            REQUIRE(da == db);
            if (r[2] % 5 == 0) b.cleanup(now);  // only b cleans up
        }
    }
}

TEST_CASE("EK registry join counting") {
    TempDir dir;
    Digest32 fp1{}, fp2{};
    fp1[0] = 1;
    fp2[0] = 2;
    {
        EKRegistry reg(dir.path / "reg.bin", 1);
        CHECK(reg.record_join(fp1) == RegistryDecision::Allowed);
        CHECK(reg.record_join(fp1) == RegistryDecision::ExceededJoinLimit);
        CHECK(reg.record_join(fp2) == RegistryDecision::Allowed);
        CHECK(reg.join_count(fp1) == 2);
    }
    // counts survive reopen
    EKRegistry reopened(dir.path / "reg.bin", 1);
    CHECK(reopened.join_count(fp1) == 2);
    CHECK(reopened.record_join(fp2) == RegistryDecision::ExceededJoinLimit);
}

TEST_CASE("revocation store persists") {
    TempDir dir;
    SeededRng rng(32);
    daa::MemberSecretKey usk{bn::Scalar::random_nonzero(rng)};
    {
        RevocationStore store(dir.path / "rl.bin");
        store.add(usk);
        store.add(usk);  // idempotent
        CHECK(store.list().size() == 1);
    }
    RevocationStore reopened(dir.path / "rl.bin");
    CHECK(reopened.list().contains(usk));
}

TEST_CASE("storage footprints") {
    TempDir dir;
    SignerLog slog(dir.path / "s.bin");
    for (uint64_t i = 0; i < 1000; ++i)
        slog.check_and_insert(TimeWindow{i * 60, (i + 1) * 60},
                              to_bytes("x" + std::to_string(i % 5)));
    CHECK(slog.footprint_bytes() == 1000 * SignerLog::RECORD_LEN);
    CHECK(slog.footprint_bytes() <= 200 * 1024);
}
