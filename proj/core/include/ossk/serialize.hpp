#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ossk/count_min.hpp"
#include "ossk/count_sketch.hpp"
#include "ossk/det_point_query.hpp"
#include "ossk/no_over.hpp"
#include "ossk/no_under.hpp"

namespace ossk {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary sketch container: magic "OSSK", a 16-bit version, an 8-bit
// algorithm tag (quantized counters get their own tag), a little-endian
// parameter block (n, p, eps, k, t, seed), the counter payload, and a CRC-32
// of everything before it.
inline constexpr char kSketchMagic[4] = {'O', 'S', 'S', 'K'};
inline constexpr std::uint16_t kSketchVersion = 1;

enum class SketchKind : std::uint8_t {
    CountMin = 1,
    CountSketch = 2,
    NoUnder = 3,
    NoUnderQuantized = 4,
    NoOver = 5,
    DetPQ = 6,
};

using SketchVariant =
    std::variant<CountMinSketch, CountSketch, NoUnderSketch, NoOverSketch, DetPQSketch>;

std::vector<std::uint8_t> serialize_sketch(const CountMinSketch& s);
std::vector<std::uint8_t> serialize_sketch(const CountSketch& s);
std::vector<std::uint8_t> serialize_sketch(const NoUnderSketch& s);
std::vector<std::uint8_t> serialize_sketch(const NoOverSketch& s);
std::vector<std::uint8_t> serialize_sketch(const DetPQSketch& s);
std::vector<std::uint8_t> serialize_sketch(const SketchVariant& s);

SketchVariant parse_sketch(std::span<const std::uint8_t> bytes);

SketchVariant load_sketch_file(const std::string& path);
void save_sketch_file(const std::string& path, const SketchVariant& s);

template <class Sketch>
std::size_t serialized_size(const Sketch& s) {
    return serialize_sketch(s).size();
}

}  // namespace ossk
