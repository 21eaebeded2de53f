#pragma once

#include <cstdint>
#include <stdexcept>

namespace ossk {

// splitmix64 finalizer; full 64-bit avalanche, pure integer ops so results
// are identical on every platform
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded family of bucket and sign hashes used by every sketch in the
// library.  A hash is keyed by (seed, table, item); the sign hash lives in
// a separate key domain so it is independent of the bucket hash.
class HashFamily {
public:
    HashFamily(std::uint64_t seed, std::uint32_t tables, std::uint64_t range)
        : seed_(seed), tables_(tables), range_(range) {
        if (tables == 0) throw std::invalid_argument("HashFamily: tables must be >= 1");
        if (range == 0) throw std::invalid_argument("HashFamily: range must be >= 1");
    }

    std::uint64_t bucket(std::uint32_t table, std::uint64_t item) const {
        return mix64(table_key(table, kBucketDomain) ^ item) % range_;
    }

    // +1 or -1
    int sign(std::uint32_t table, std::uint64_t item) const {
        return (mix64(table_key(table, kSignDomain) ^ item) & 1ULL) ? 1 : -1;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint32_t tables() const { return tables_; }
    std::uint64_t range() const { return range_; }

private:
    static constexpr std::uint64_t kBucketDomain = 0x61c88646b4352d21ULL;
    static constexpr std::uint64_t kSignDomain = 0x2545f4914f6cdd1dULL;

    std::uint64_t table_key(std::uint32_t table, std::uint64_t domain) const {
        return mix64(seed_ ^ domain ^ (static_cast<std::uint64_t>(table) << 32));
    }

    std::uint64_t seed_;
    std::uint32_t tables_;
    std::uint64_t range_;
};

}  // namespace ossk
