#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ossk/hashing.hpp"
#include "ossk/stream.hpp"

namespace ossk {

// Count-Sketch: signed counters, estimate = median over rows.  The row count
// must be odd so the median is an actual counter value, never an average.
class CountSketch {
public:
    CountSketch(std::size_t n, std::uint32_t k, std::uint32_t t, std::uint64_t seed)
        : n_(n), hash_(seed, t, k), grid_(static_cast<std::size_t>(k) * t, 0) {
        if (n == 0) throw std::invalid_argument("CountSketch: empty universe");
        if (t % 2 == 0) throw std::invalid_argument("CountSketch: table count must be odd");
    }

    void update(const StreamUpdate& u) {
        check_item(u.item);
        for (std::uint32_t l = 0; l < tables(); ++l)
            grid_[cell(l, hash_.bucket(l, u.item))] += u.delta * hash_.sign(l, u.item);
    }

    std::int64_t estimate(std::size_t item) const {
        check_item(item);
        std::vector<std::int64_t> votes(tables());
        for (std::uint32_t l = 0; l < tables(); ++l)
            votes[l] = hash_.sign(l, item) * grid_[cell(l, hash_.bucket(l, item))];
        auto mid = votes.begin() + votes.size() / 2;
        std::nth_element(votes.begin(), mid, votes.end());
        return *mid;
    }

    CountSketch& operator+=(const CountSketch& other) {
        if (n_ != other.n_ || buckets() != other.buckets() || tables() != other.tables() ||
            seed() != other.seed())
            throw std::invalid_argument("CountSketch merge: parameter mismatch");
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

inline CountSketch merge(CountSketch a, const CountSketch& b) {
    a += b;
    return a;
}

}  // namespace ossk
