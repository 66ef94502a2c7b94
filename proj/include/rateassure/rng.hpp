#pragma once

#include <cstring>
#include <random>

#include "rateassure/bytes.hpp"
#include "rateassure/sha256.hpp"

namespace rateassure {

// Injected randomness source. Scenarios use a seeded instance for
// reproducible transcripts; key generation outside tests uses SystemRng.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<uint8_t> out) = 0;

    Bytes bytes(size_t n) {
        Bytes b(n);
        fill(b);
        return b;
    }
};

class SystemRng final : public RandomSource {
  public:
    void fill(std::span<uint8_t> out) override {
        size_t i = 0;
        while (i < out.size()) {
            auto v = dev_();
            size_t n = std::min(sizeof(v), out.size() - i);
            std::memcpy(out.data() + i, &v, n);
            i += n;
        }
    }

  private:
    std::random_device dev_;
};

// Deterministic SHA-256 counter-mode generator.
class SeededRng final : public RandomSource {
  public:
    explicit SeededRng(uint64_t seed) {
        Bytes s;
        append(s, std::string_view("RATE-ASSURE-SEED"));
        append_u64_be(s, seed);
        state_ = sha256(s);
    }

    void fill(std::span<uint8_t> out) override {
        size_t i = 0;
        while (i < out.size()) {
            Bytes block(state_.begin(), state_.end());
            append_u64_be(block, counter_++);
            Digest32 d = sha256(block);
            size_t n = std::min(d.size(), out.size() - i);
            std::memcpy(out.data() + i, d.data(), n);
            i += n;
        }
    }

  private:
    Digest32 state_{};
    uint64_t counter_ = 0;
};

}  // namespace rateassure
