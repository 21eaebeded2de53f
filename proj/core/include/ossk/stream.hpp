#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ossk {

enum class StreamModel { InsertionOnly, StrictTurnstile };

struct StreamUpdate {
    std::uint64_t item;
    std::int64_t delta;
};

// Exact frequency vector over universe [0, n); the ground truth every
// sketch estimate is judged against.
class FrequencyVector {
public:
    explicit FrequencyVector(std::size_t n) : counts_(n, 0) {}

    void apply(const StreamUpdate& u);

    std::int64_t count(std::size_t i) const { return counts_.at(i); }
    std::size_t universe() const { return counts_.size(); }
    const std::vector<std::int64_t>& counts() const { return counts_; }

private:
    std::vector<std::int64_t> counts_;
};

// Folds a whole stream into the exact vector.  Insertion-only requires every
// delta >= 1; strict turnstile allows negative deltas but every final count
// must be >= 0.
FrequencyVector apply_stream(std::span<const StreamUpdate> updates, std::size_t n,
                             StreamModel model);

std::string to_string(StreamModel model);
StreamModel stream_model_from_string(const std::string& s);

// Text stream format: a header line "# n=<n> model=<model>" followed by one
// "item delta" pair per line.  Blank lines and further '#' comments are
// skipped.
struct StreamFile {
    std::size_t n = 0;
    StreamModel model = StreamModel::InsertionOnly;
    std::vector<StreamUpdate> updates;
};

StreamFile read_stream(std::istream& in);
StreamFile read_stream_file(const std::string& path);
void write_stream(std::ostream& out, const StreamFile& stream);
void write_stream_file(const std::string& path, const StreamFile& stream);

}  // namespace ossk
