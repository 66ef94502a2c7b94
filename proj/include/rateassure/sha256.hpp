#pragma once

#include <openssl/sha.h>

#include "rateassure/bytes.hpp"

namespace rateassure {

inline Digest32 sha256(std::span<const uint8_t> data) {
    Digest32 out{};
    SHA256(data.data(), data.size(), out.data());
    return out;
}

inline Digest32 sha256(const Bytes& data) {
    return sha256(std::span<const uint8_t>(data));
}

inline Digest32 sha256(std::string_view s) {
    return sha256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

}  // namespace rateassure
