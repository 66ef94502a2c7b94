#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "rateassure/bytes.hpp"
#include "rateassure/daa.hpp"
#include "rateassure/errors.hpp"
#include "rateassure/sha256.hpp"
#include "rateassure/timewindow.hpp"

// Persistent duplicate-detection logs (Log_s, Log_v), the GM's EK-join
// registry, and the revocation store. Fixed-width binary records in
// append-only files with an in-memory index; check-and-insert is atomic
// under one mutex per store, cleanup compacts by rewrite.
namespace rateassure::stores {

using timewindow::TimeWindow;

enum class InsertResult { Inserted, Duplicate };
enum class RegistryDecision { Allowed, ExceededJoinLimit };

namespace detail {

// Append-only file of fixed-width records.
class RecordFile {
  public:
    RecordFile(std::filesystem::path path, size_t record_len)
        : path_(std::move(path)), record_len_(record_len) {}

    std::vector<Bytes> load() const {
        std::vector<Bytes> out;
        std::ifstream in(path_, std::ios::binary);
        if (!in) return out;
        Bytes rec(record_len_);
        while (in.read(reinterpret_cast<char*>(rec.data()), record_len_))
            out.push_back(rec);
        return out;
    }

    void append(const Bytes& rec) {
        if (rec.size() != record_len_)
            throw StorageFailure("record width mismatch");
        std::ofstream out(path_, std::ios::binary | std::ios::app);
        if (!out ||
            !out.write(reinterpret_cast<const char*>(rec.data()),
                       record_len_))
            throw StorageFailure("append failed: " + path_.string());
    }

    void rewrite(const std::vector<Bytes>& recs) {
        auto tmp = path_;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw StorageFailure("rewrite failed: " + tmp.string());
            for (const Bytes& rec : recs)
                out.write(reinterpret_cast<const char*>(rec.data()),
                          record_len_);
        }
        std::filesystem::rename(tmp, path_);
    }

    uint64_t size_bytes() const {
        std::error_code ec;
        auto s = std::filesystem::file_size(path_, ec);
        return ec ? 0 : s;
    }

  private:
    std::filesystem::path path_;
    size_t record_len_;
};

inline Bytes window_record_prefix(const TimeWindow& t) {
    Bytes rec;
    append_u64_be(rec, t.start);
    append_u64_be(rec, t.end);
    return rec;
}

inline TimeWindow window_from_record(std::span<const uint8_t> rec) {
    uint64_t s = 0, e = 0;
    for (size_t i = 0; i < 8; ++i) s = (s << 8) | rec[i];
    for (size_t i = 8; i < 16; ++i) e = (e << 8) | rec[i];
    return {s, e};
}

}  // namespace detail

// Signer-side log of (t, SHA-256(bsn)) pairs. Record: 8+8+32 bytes.
class SignerLog {
  public:
    static constexpr size_t RECORD_LEN = 16 + 32;

    explicit SignerLog(std::filesystem::path path)
        : file_(std::move(path), RECORD_LEN) {
        for (const Bytes& rec : file_.load()) index_.insert(rec);
    }

    InsertResult check_and_insert(const TimeWindow& t, const Bytes& bsn) {
        Bytes rec = record(t, bsn);
        std::lock_guard lock(mu_);
        if (index_.contains(rec)) return InsertResult::Duplicate;
        file_.append(rec);
        index_.insert(rec);
        return InsertResult::Inserted;
    }

    bool contains(const TimeWindow& t, const Bytes& bsn) const {
        std::lock_guard lock(mu_);
        return index_.contains(record(t, bsn));
    }

    // Per basename, keep entries still current plus the newest window.
    size_t cleanup(uint64_t now) {
        std::lock_guard lock(mu_);
        std::map<Bytes, uint64_t> newest;  // bsn digest -> max start
        for (const Bytes& rec : index_) {
            TimeWindow t = detail::window_from_record(rec);
            Bytes d(rec.begin() + 16, rec.end());
            auto [it, fresh] = newest.try_emplace(d, t.start);
            if (!fresh && t.start > it->second) it->second = t.start;
        }
        std::set<Bytes> keep;
        for (const Bytes& rec : index_) {
            TimeWindow t = detail::window_from_record(rec);
            Bytes d(rec.begin() + 16, rec.end());
            if (t.end > now || t.start == newest.at(d)) keep.insert(rec);
        }
        size_t purged = index_.size() - keep.size();
        if (purged) {
            index_ = std::move(keep);
            file_.rewrite({index_.begin(), index_.end()});
        }
        return purged;
    }

    size_t size() const {
        std::lock_guard lock(mu_);
        return index_.size();
    }
    uint64_t footprint_bytes() const { return file_.size_bytes(); }

  private:
    static Bytes record(const TimeWindow& t, const Bytes& bsn) {
        Bytes rec = detail::window_record_prefix(t);
        Digest32 d = sha256(bsn);
        rec.insert(rec.end(), d.begin(), d.end());
        return rec;
    }

    mutable std::mutex mu_;
    detail::RecordFile file_;
    std::set<Bytes> index_;
};

// Verifier-side log of (t, serialized sigma_d) pairs. Record: 8+8+33.
class VerifierLog {
  public:
    static constexpr size_t RECORD_LEN = 16 + bn::G1_LEN;

    explicit VerifierLog(std::filesystem::path path)
        : file_(std::move(path), RECORD_LEN) {
        for (const Bytes& rec : file_.load()) index_.insert(rec);
    }

    InsertResult check_and_insert(const TimeWindow& t, const Bytes& sigma_d) {
        Bytes rec = record(t, sigma_d);
        std::lock_guard lock(mu_);
        if (index_.contains(rec)) return InsertResult::Duplicate;
        file_.append(rec);
        index_.insert(rec);
        return InsertResult::Inserted;
    }

    // Compensating delete for insert-then-verify.
    void remove(const TimeWindow& t, const Bytes& sigma_d) {
        std::lock_guard lock(mu_);
        if (index_.erase(record(t, sigma_d)))
            file_.rewrite({index_.begin(), index_.end()});
    }

    bool contains(const TimeWindow& t, const Bytes& sigma_d) const {
        std::lock_guard lock(mu_);
        return index_.contains(record(t, sigma_d));
    }

    // Entries for expired windows are dropped wholesale.
    size_t cleanup(uint64_t now) {
        std::lock_guard lock(mu_);
        std::set<Bytes> keep;
        for (const Bytes& rec : index_) {
            if (detail::window_from_record(rec).end > now) keep.insert(rec);
        }
        size_t purged = index_.size() - keep.size();
        if (purged) {
            index_ = std::move(keep);
            file_.rewrite({index_.begin(), index_.end()});
        }
        return purged;
    }

    size_t size() const {
        std::lock_guard lock(mu_);
        return index_.size();
    }
    uint64_t footprint_bytes() const { return file_.size_bytes(); }

  private:
    static Bytes record(const TimeWindow& t, const Bytes& sigma_d) {
        if (sigma_d.size() != bn::G1_LEN)
            throw StorageFailure("sigma_d must be a serialized G1 point");
        Bytes rec = detail::window_record_prefix(t);
        append(rec, sigma_d);
        return rec;
    }

    mutable std::mutex mu_;
    detail::RecordFile file_;
    std::set<Bytes> index_;
};

// EK fingerprint -> join count. Record: 32-byte fingerprint + 4-byte
// count, last record per fingerprint wins on reload.
class EKRegistry {
  public:
    static constexpr size_t RECORD_LEN = 32 + 4;

    explicit EKRegistry(std::filesystem::path path, uint32_t max_joins = 1)
        : file_(std::move(path), RECORD_LEN), max_joins_(max_joins) {
        for (const Bytes& rec : file_.load()) {
            Bytes fp(rec.begin(), rec.begin() + 32);
            uint32_t c = 0;
            for (size_t i = 32; i < 36; ++i) c = (c << 8) | rec[i];
            counts_[fp] = c;
        }
    }

    RegistryDecision record_join(const Digest32& fingerprint) {
        Bytes fp(fingerprint.begin(), fingerprint.end());
        std::lock_guard lock(mu_);
        uint32_t c = ++counts_[fp];
        Bytes rec = fp;
        for (int i = 3; i >= 0; --i)
            rec.push_back(static_cast<uint8_t>(c >> (8 * i)));
        file_.append(rec);
        return c <= max_joins_ ? RegistryDecision::Allowed
                               : RegistryDecision::ExceededJoinLimit;
    }

    uint32_t join_count(const Digest32& fingerprint) const {
        Bytes fp(fingerprint.begin(), fingerprint.end());
        std::lock_guard lock(mu_);
        auto it = counts_.find(fp);
        return it == counts_.end() ? 0 : it->second;
    }

    uint32_t max_joins() const { return max_joins_; }

  private:
    mutable std::mutex mu_;
    detail::RecordFile file_;
    std::map<Bytes, uint32_t> counts_;
    uint32_t max_joins_;
};

// Persisted revocation list; 32-byte scalar records.
class RevocationStore {
  public:
    static constexpr size_t RECORD_LEN = bn::SCALAR_LEN;

    explicit RevocationStore(std::filesystem::path path,
                             size_t capacity = daa::DEFAULT_RL_CAPACITY)
        : file_(std::move(path), RECORD_LEN), list_(capacity) {
        for (const Bytes& rec : file_.load())
            list_ = daa::revoke({bn::Scalar::deserialize(rec)}, list_);
    }

    void add(const daa::MemberSecretKey& usk) {
        std::lock_guard lock(mu_);
        if (list_.contains(usk)) return;
        list_ = daa::revoke(usk, list_);
        file_.append(usk.sk.serialize());
    }

    daa::RevocationList list() const {
        std::lock_guard lock(mu_);
        return list_;
    }

    uint64_t footprint_bytes() const { return file_.size_bytes(); }

  private:
    mutable std::mutex mu_;
    detail::RecordFile file_;
    daa::RevocationList list_;
};

}  // namespace rateassure::stores
