#include "ossk/serialize.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>

namespace ossk {

namespace {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int s = 0; s < 64; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
    put_u64(out, static_cast<std::uint64_t>(v));
}

void put_i32(std::vector<std::uint8_t>& out, std::int32_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Cursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void need(std::size_t count) const {
        if (pos + count > bytes.size()) throw FormatError("sketch file truncated");
    }
    std::uint8_t u8() {
        need(1);
        return bytes[pos++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int s = 0; s < 32; s += 8) v |= static_cast<std::uint32_t>(bytes[pos++]) << s;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int s = 0; s < 64; s += 8) v |= static_cast<std::uint64_t>(bytes[pos++]) << s;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
};

struct Params {
    std::uint64_t n;
    double p, eps;
    std::uint32_t k, t;
    std::uint64_t seed;
};

std::vector<std::uint8_t> header(SketchKind kind, const Params& params) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kSketchMagic, kSketchMagic + 4);
    put_u16(out, kSketchVersion);
    put_u8(out, static_cast<std::uint8_t>(kind));
    put_u64(out, params.n);
    put_f64(out, params.p);
    put_f64(out, params.eps);
    put_u32(out, params.k);
    put_u32(out, params.t);
    put_u64(out, params.seed);
    return out;
}

void append_crc(std::vector<std::uint8_t>& out) {
    auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size())));
    put_u32(out, crc);
}

}  // namespace

std::vector<std::uint8_t> serialize_sketch(const CountMinSketch& s) {
    std::vector<std::uint8_t> out =
        header(SketchKind::CountMin, {s.universe(), 0.0, 0.0, s.buckets(), s.tables(), s.seed()});
    for (std::int64_t v : s.counters()) put_i64(out, v);
    append_crc(out);
    return out;
}

std::vector<std::uint8_t> serialize_sketch(const CountSketch& s) {
    std::vector<std::uint8_t> out = header(
        SketchKind::CountSketch, {s.universe(), 0.0, 0.0, s.buckets(), s.tables(), s.seed()});
    for (std::int64_t v : s.counters()) put_i64(out, v);
    append_crc(out);
    return out;
}

std::vector<std::uint8_t> serialize_sketch(const NoUnderSketch& s) {
    SketchKind kind = s.quantized() ? SketchKind::NoUnderQuantized : SketchKind::NoUnder;
    std::vector<std::uint8_t> out =
        header(kind, {s.universe(), s.p(), s.eps(), s.buckets(), s.tables(), s.seed()});
    put_u8(out, s.capped() ? 1 : 0);
    if (s.quantized()) {
        put_f64(out, s.quantize_base());
        for (std::int32_t e : s.exponents()) put_i32(out, e);
    } else {
        for (std::int64_t v : s.raw_counters()) put_i64(out, v);
    }
    append_crc(out);
    return out;
}

std::vector<std::uint8_t> serialize_sketch(const NoOverSketch& s) {
    std::vector<std::uint8_t> out =
        header(SketchKind::NoOver, {s.universe(), s.p(), s.eps(), s.buckets(), s.copies(), s.seed()});
    put_u32(out, s.matrix().field_size());
    put_u32(out, s.matrix().degree());
    for (std::int64_t v : s.masses()) put_i64(out, v);
    for (std::int64_t v : s.accumulators()) put_i64(out, v);
    append_crc(out);
    return out;
}

std::vector<std::uint8_t> serialize_sketch(const DetPQSketch& s) {
    const IncoherentMatrix& m = s.matrix();
    std::vector<std::uint8_t> out = header(
        SketchKind::DetPQ, {m.columns(), 0.0, 0.0, m.field_size(), m.degree(), 0});
    put_u32(out, m.field_size());
    put_u32(out, m.degree());
    for (std::int64_t v : s.accumulator()) put_i64(out, v);
    put_i64(out, s.l1_mass());
    append_crc(out);
    return out;
}

std::vector<std::uint8_t> serialize_sketch(const SketchVariant& s) {
    return std::visit([](const auto& sketch) { return serialize_sketch(sketch); }, s);
}

SketchVariant parse_sketch(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 + 2 + 1 + 40 + 4) throw FormatError("sketch file too short");

    std::uint32_t expected = 0;
    for (int s = 0; s < 32; s += 8)
        expected |= static_cast<std::uint32_t>(bytes[bytes.size() - 4 + s / 8]) << s;
    auto actual = static_cast<std::uint32_t>(crc32(
        0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size() - 4)));
    if (expected != actual) throw FormatError("sketch file CRC mismatch");

    Cursor cur{bytes.first(bytes.size() - 4)};
    char magic[4];
    cur.need(4);
    std::memcpy(magic, bytes.data(), 4);
    cur.pos = 4;
    if (std::memcmp(magic, kSketchMagic, 4) != 0) throw FormatError("bad sketch magic");
    if (cur.u16() != kSketchVersion) throw FormatError("unsupported sketch version");
    auto kind = static_cast<SketchKind>(cur.u8());

    Params params{};
    params.n = cur.u64();
    params.p = cur.f64();
    params.eps = cur.f64();
    params.k = cur.u32();
    params.t = cur.u32();
    params.seed = cur.u64();
    const std::size_t cells = static_cast<std::size_t>(params.k) * params.t;

    switch (kind) {
        case SketchKind::CountMin: {
            CountMinSketch s(params.n, params.k, params.t, params.seed);
            for (std::size_t i = 0; i < cells; ++i) s.counters()[i] = cur.i64();
            return s;
        }
        case SketchKind::CountSketch: {
            CountSketch s(params.n, params.k, params.t, params.seed);
            for (std::size_t i = 0; i < cells; ++i) s.counters()[i] = cur.i64();
            return s;
        }
        case SketchKind::NoUnder: {
            bool capped = cur.u8() != 0;
            std::vector<std::int64_t> raw(cells);
            for (auto& v : raw) v = cur.i64();
            return NoUnderSketch::restore(params.n, params.p, params.eps, params.k, params.t,
                                          params.seed, capped, std::move(raw));
        }
        case SketchKind::NoUnderQuantized: {
            bool capped = cur.u8() != 0;
            double base = cur.f64();
            std::vector<std::int32_t> exps(cells);
            for (auto& v : exps) v = cur.i32();
            return NoUnderSketch::restore_quantized(params.n, params.p, params.eps, params.k,
                                                    params.t, params.seed, capped, base,
                                                    std::move(exps));
        }
        case SketchKind::NoOver: {
            std::uint32_t q = cur.u32();
            std::uint32_t d = cur.u32();
            NoOverSketch s(params.n, params.p, params.eps, params.k, params.t, params.seed);
            if (s.matrix().field_size() != q || s.matrix().degree() != d)
                throw FormatError("sketch measurement matrix does not match this build");
            for (auto& v : s.masses()) v = cur.i64();
            for (auto& v : s.accumulators()) v = cur.i64();
            return s;
        }
        case SketchKind::DetPQ: {
            std::uint32_t q = cur.u32();
            std::uint32_t d = cur.u32();
            DetPQSketch s{IncoherentMatrix(params.n, q, d)};
            for (auto& v : s.accumulator()) v = cur.i64();
            s.l1_mass() = cur.i64();
            return s;
        }
    }
    throw FormatError("unknown sketch algorithm tag");
}

SketchVariant load_sketch_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open sketch file '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_sketch(bytes);
}

void save_sketch_file(const std::string& path, const SketchVariant& s) {
    std::vector<std::uint8_t> bytes = serialize_sketch(s);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("short write to '" + path + "'");
}

}  // namespace ossk
