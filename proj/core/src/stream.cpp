#include "ossk/stream.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ossk {

void FrequencyVector::apply(const StreamUpdate& u) {
    if (u.item >= counts_.size())
        throw std::invalid_argument("stream item " + std::to_string(u.item) +
                                    " outside universe of size " + std::to_string(counts_.size()));
    counts_[u.item] += u.delta;
}

FrequencyVector apply_stream(std::span<const StreamUpdate> updates, std::size_t n,
                             StreamModel model) {
    FrequencyVector x(n);
    for (const StreamUpdate& u : updates) {
        if (model == StreamModel::InsertionOnly && u.delta < 1)
            throw std::invalid_argument("insertion-only stream requires delta >= 1, got " +
                                        std::to_string(u.delta));
        x.apply(u);
    }
    if (model == StreamModel::StrictTurnstile) {
        for (std::size_t i = 0; i < n; ++i) {
            if (x.count(i) < 0)
                throw std::invalid_argument("strict-turnstile violation: item " +
                                            std::to_string(i) + " has final count " +
                                            std::to_string(x.count(i)));
        }
    }
    return x;
}

std::string to_string(StreamModel model) {
    return model == StreamModel::InsertionOnly ? "insertion" : "strict-turnstile";
}

StreamModel stream_model_from_string(const std::string& s) {
    if (s == "insertion") return StreamModel::InsertionOnly;
    if (s == "strict-turnstile") return StreamModel::StrictTurnstile;
    throw std::invalid_argument("unknown stream model '" + s + "'");
}

StreamFile read_stream(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("stream file is empty");

    StreamFile out;
    {
        std::istringstream header(line);
        std::string hash, nfield, modelfield;
        header >> hash >> nfield >> modelfield;
        if (hash != "#" || nfield.rfind("n=", 0) != 0 || modelfield.rfind("model=", 0) != 0)
            throw std::invalid_argument("stream header must be '# n=<n> model=<model>', got '" +
                                        line + "'");
        out.n = std::stoull(nfield.substr(2));
        out.model = stream_model_from_string(modelfield.substr(6));
    }

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        StreamUpdate u{};
        if (!(row >> u.item >> u.delta))
            throw std::invalid_argument("bad stream line '" + line + "'");
        out.updates.push_back(u);
    }
    return out;
}

StreamFile read_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open stream file '" + path + "'");
    return read_stream(in);
}

void write_stream(std::ostream& out, const StreamFile& stream) {
    out << "# n=" << stream.n << " model=" << to_string(stream.model) << "\n";
    for (const StreamUpdate& u : stream.updates) out << u.item << " " << u.delta << "\n";
}

void write_stream_file(const std::string& path, const StreamFile& stream) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_stream(out, stream);
}

}  // namespace ossk
