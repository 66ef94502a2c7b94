#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <vector>

#include "rateassure/bytes.hpp"
#include "rateassure/errors.hpp"

// Time-window representation, canonical encoding, and the signer-side
// validity rules, including detection of tracking-via-t windows.
namespace rateassure::timewindow {

inline constexpr uint64_t DEFAULT_MAX_DURATION_SECONDS = 86400;
inline constexpr size_t START_FIELD_LEN = 19;
inline constexpr size_t ENCODED_LEN = 2 * START_FIELD_LEN + 1;

// Start-inclusive, end-exclusive interval at minute granularity.
struct TimeWindow {
    uint64_t start = 0;
    uint64_t end = 0;

    bool operator==(const TimeWindow&) const = default;
    auto operator<=>(const TimeWindow&) const = default;

    bool contains(uint64_t now) const { return start <= now && now < end; }
    bool overlaps(const TimeWindow& o) const {
        return start < o.end && o.start < end;
    }
    uint64_t duration() const { return end - start; }
};

inline TimeWindow current_window(uint64_t now, uint64_t duration_minutes) {
    if (duration_minutes == 0)
        throw MalformedWindow("window duration must be at least one minute");
    uint64_t span = 60 * duration_minutes;
    uint64_t start = (now / span) * span;
    return {start, start + span};
}

enum class WindowError { Expired, Future, TooLong, Overlap };

inline const char* to_string(WindowError e) {
    switch (e) {
        case WindowError::Expired: return "Expired";
        case WindowError::Future: return "Future";
        case WindowError::TooLong: return "TooLong";
        case WindowError::Overlap: return "Overlap";
    }
    return "?";
}

// Past windows seen per basename; the signer's overlap detector.
class WindowHistory {
  public:
    void record(const Bytes& bsn, const TimeWindow& t) {
        auto& v = seen_[bsn];
        auto it = std::lower_bound(v.begin(), v.end(), t);
        if (it == v.end() || !(*it == t)) v.insert(it, t);
    }

    const std::vector<TimeWindow>* windows_for(const Bytes& bsn) const {
        auto it = seen_.find(bsn);
        return it == seen_.end() ? nullptr : &it->second;
    }

  private:
    std::map<Bytes, std::vector<TimeWindow>> seen_;
};

inline std::optional<WindowError> validate_window(
    const TimeWindow& t, uint64_t now, const WindowHistory& history,
    const Bytes& bsn,
    uint64_t max_duration = DEFAULT_MAX_DURATION_SECONDS) {
    if (now >= t.end) return WindowError::Expired;
    if (now < t.start) return WindowError::Future;
    if (t.duration() > max_duration) return WindowError::TooLong;
    if (const auto* past = history.windows_for(bsn)) {
        for (const TimeWindow& prev : *past) {
            if (!(prev == t) && prev.overlaps(t)) return WindowError::Overlap;
        }
    }
    return std::nullopt;
}

namespace detail {

inline void check_window(const TimeWindow& t) {
    if (t.start >= t.end) throw MalformedWindow("start must precede end");
    if (t.start % 60 != 0 || t.end % 60 != 0)
        throw MalformedWindow("window bounds must be minute-aligned");
}

inline std::string pad19(uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%019llu",
                  static_cast<unsigned long long>(v));
    return std::string(buf, START_FIELD_LEN);
}

inline uint64_t parse19(std::string_view s) {
    if (s.size() != START_FIELD_LEN)
        throw MalformedWindow("timestamp field must be 19 bytes");
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw MalformedWindow("non-digit in timestamp field");
        uint64_t d = static_cast<uint64_t>(c - '0');
        if (v > (UINT64_MAX - d) / 10)
            throw MalformedWindow("timestamp overflows");
        v = v * 10 + d;
    }
    return v;
}

}  // namespace detail

// "S19-E19": two 19-character zero-padded decimal unix-second fields. The
// start field alone is the 19-byte transmitted t figure.
inline Bytes encode_window(const TimeWindow& t) {
    detail::check_window(t);
    std::string s = detail::pad19(t.start) + "-" + detail::pad19(t.end);
    return to_bytes(s);
}

inline Bytes encode_window_start(const TimeWindow& t) {
    detail::check_window(t);
    return to_bytes(detail::pad19(t.start));
}

inline TimeWindow decode_window(std::span<const uint8_t> in) {
    if (in.size() != ENCODED_LEN)
        throw MalformedWindow("encoded window must be 39 bytes");
    std::string s = rateassure::to_string(in);
    if (s[START_FIELD_LEN] != '-')
        throw MalformedWindow("missing separator");
    TimeWindow t{detail::parse19(std::string_view(s).substr(0, 19)),
                 detail::parse19(std::string_view(s).substr(20))};
    detail::check_window(t);
    return t;
}

}  // namespace rateassure::timewindow
