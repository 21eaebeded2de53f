#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ossk/hashing.hpp"
#include "ossk/stream.hpp"

namespace ossk {

// Classic Count-Min: t rows of k counters, estimate = min over rows.
// Never underestimates a coordinate of a nonnegative frequency vector.
class CountMinSketch {
public:
    CountMinSketch(std::size_t n, std::uint32_t k, std::uint32_t t, std::uint64_t seed)
        : n_(n), hash_(seed, t, k), grid_(static_cast<std::size_t>(k) * t, 0) {
        if (n == 0) throw std::invalid_argument("CountMinSketch: empty universe");
    }

    void update(const StreamUpdate& u) {
        check_item(u.item);
        for (std::uint32_t l = 0; l < tables(); ++l)
            grid_[cell(l, hash_.bucket(l, u.item))] += u.delta;
    }

    std::int64_t estimate(std::size_t item) const {
        check_item(item);
        std::int64_t best = grid_[cell(0, hash_.bucket(0, item))];
        for (std::uint32_t l = 1; l < tables(); ++l)
            best = std::min(best, grid_[cell(l, hash_.bucket(l, item))]);
        return best;
    }

    CountMinSketch& operator+=(const CountMinSketch& other) {
        if (n_ != other.n_ || buckets() != other.buckets() || tables() != other.tables() ||
            seed() != other.seed())
            throw std::invalid_argument("CountMinSketch merge: parameter mismatch");
        for (std::size_t i = 0; i < grid_.size(); ++i) grid_[i] += other.grid_[i];
        return *this;
    }

    std::size_t universe() const { return n_; }
    std::uint32_t buckets() const { return static_cast<std::uint32_t>(hash_.range()); }
    std::uint32_t tables() const { return hash_.tables(); }
    std::uint64_t seed() const { return hash_.seed(); }
    const std::vector<std::int64_t>& counters() const { return grid_; }
    std::vector<std::int64_t>& counters() { return grid_; }

private:
    std::size_t cell(std::uint32_t table, std::uint64_t bucket) const {
        return static_cast<std::size_t>(table) * buckets() + bucket;
    }
    void check_item(std::uint64_t item) const {
        if (item >= n_)
            throw std::invalid_argument("item " + std::to_string(item) + " outside universe");
    }

    std::size_t n_;
    HashFamily hash_;
    std::vector<std::int64_t> grid_;
};

inline CountMinSketch merge(CountMinSketch a, const CountMinSketch& b) {
    a += b;
    return a;
}

}  // namespace ossk
