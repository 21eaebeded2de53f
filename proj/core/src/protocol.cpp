#include "ossk/protocol.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ossk/hashing.hpp"
#include "ossk/serialize.hpp"

namespace ossk {

namespace {

constexpr double kCandidateFactor = 0.25 * 2.718281828459045235;  // c = e/4

// uniform draw from [0, bound) via rejection on the top multiple
std::uint64_t bounded(std::uint64_t& state, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        std::uint64_t r = mix64(state++);
        if (r < limit) return r % bound;
    }
}

}  // namespace

std::uint32_t DisjInstance::column_sum(std::size_t item) const {
    std::uint32_t sum = 0;
    for (std::uint32_t j = 0; j < players; ++j) sum += bit(j, item) ? 1 : 0;
    return sum;
}

void DisjInstance::validate() const {
    if (n == 0 || players == 0) throw std::invalid_argument("instance must be non-empty");
    if (bits.size() != static_cast<std::size_t>(players) * n)
        throw std::invalid_argument("instance bit matrix has the wrong size");
    std::size_t heavy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = column_sum(i);
        if (s > 1) {
            ++heavy;
            if (label == DisjCase::No)
                throw std::invalid_argument("NO instance has a column of weight > 1");
            if (s != overlap)
                throw std::invalid_argument("YES instance heavy column must have weight l");
        }
    }
    if (label == DisjCase::Yes && overlap > 1 && heavy != 1)
        throw std::invalid_argument("YES instance must have exactly one heavy column");
}

DisjInstance sample_eta0(std::size_t n, std::uint32_t players, std::uint64_t seed) {
    if (n == 0 || players == 0) throw std::invalid_argument("sample_eta0: empty instance");
    DisjInstance inst;
    inst.n = n;
    inst.players = players;
    inst.overlap = 0;
    inst.label = DisjCase::No;
    inst.bits.assign(static_cast<std::size_t>(players) * n, 0);
    inst.owner.resize(n);
    std::uint64_t state = mix64(seed ^ 0x6eed0e9da4d94a4fULL);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t d = static_cast<std::uint32_t>(bounded(state, players));
        inst.owner[i] = d;
        std::uint8_t coin = static_cast<std::uint8_t>(mix64(state++) & 1ULL);
        inst.bits[static_cast<std::size_t>(d) * n + i] = coin;
    }
    return inst;
}

DisjInstance plant_yes(std::size_t n, std::uint32_t players, std::uint32_t overlap,
                       std::size_t item, std::uint64_t seed) {
    if (overlap < 2 || overlap > players)
        throw std::invalid_argument("plant_yes: overlap must lie in [2, players]");
    if (item >= n) throw std::invalid_argument("plant_yes: item outside universe");
    DisjInstance inst = sample_eta0(n, players, seed);
    inst.label = DisjCase::Yes;
    inst.overlap = overlap;
    inst.owner.clear();
    for (std::uint32_t j = 0; j < players; ++j) inst.bits[static_cast<std::size_t>(j) * n + item] = 0;
    // floyd-style sample of `overlap` distinct players
    std::uint64_t state = mix64(seed ^ 0x9d35cafe5f8c2b7bULL);
    std::uint32_t placed = 0;
    std::vector<std::uint8_t> chosen(players, 0);
    while (placed < overlap) {
        std::uint32_t j = static_cast<std::uint32_t>(bounded(state, players));
        if (chosen[j]) continue;
        chosen[j] = 1;
        inst.bits[static_cast<std::size_t>(j) * n + item] = 1;
        ++placed;
    }
    return inst;
}

DisjInstance read_instance(std::istream& in) {
    DisjInstance inst;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("instance text is empty");
    {
        std::istringstream header(line);
        std::string case_name;
        if (!(header >> inst.n >> inst.players >> inst.overlap >> case_name))
            throw std::invalid_argument("instance header must be 'n k l case'");
        if (case_name == "YES")
            inst.label = DisjCase::Yes;
        else if (case_name == "NO")
            inst.label = DisjCase::No;
        else
            throw std::invalid_argument("instance case must be YES or NO");
    }
    inst.bits.assign(static_cast<std::size_t>(inst.players) * inst.n, 0);
    for (std::uint32_t j = 0; j < inst.players; ++j) {
        if (!std::getline(in, line) || line.size() < inst.n)
            throw std::invalid_argument("instance row " + std::to_string(j) + " is missing bits");
        for (std::size_t i = 0; i < inst.n; ++i) {
            if (line[i] != '0' && line[i] != '1')
                throw std::invalid_argument("instance rows must be 0/1 strings");
            inst.bits[static_cast<std::size_t>(j) * inst.n + i] = line[i] == '1';
        }
    }
    inst.validate();
    return inst;
}

DisjInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
    return read_instance(in);
}

void write_instance(std::ostream& out, const DisjInstance& inst) {
    out << inst.n << " " << inst.players << " " << inst.overlap << " "
        << (inst.label == DisjCase::Yes ? "YES" : "NO") << "\n";
    for (std::uint32_t j = 0; j < inst.players; ++j) {
        for (std::size_t i = 0; i < inst.n; ++i) out << (inst.bit(j, i) ? '1' : '0');
        out << "\n";
    }
}

void write_instance_file(const std::string& path, const DisjInstance& inst) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_instance(out, inst);
}

ExactCounterAlgorithm::ExactCounterAlgorithm(std::size_t n) : n_(n), counts_(n, 0) {}

void ExactCounterAlgorithm::reset(std::uint64_t) { counts_.assign(n_, 0); }

void ExactCounterAlgorithm::update(const StreamUpdate& u) { counts_.at(u.item) += u.delta; }

double ExactCounterAlgorithm::estimate(std::size_t item) const {
    return static_cast<double>(counts_.at(item));
}

std::size_t ExactCounterAlgorithm::state_bits() const { return n_ * 64; }

NoUnderPointQuery::NoUnderPointQuery(std::size_t n, double p, double eps, std::uint64_t base_seed)
    : n_(n), p_(p), eps_(eps), base_seed_(base_seed) {
    reset(0);
}

void NoUnderPointQuery::reset(std::uint64_t run_seed) {
    sketch_ = std::make_unique<NoUnderSketch>(n_, p_, eps_, mix64(base_seed_ ^ run_seed));
}

void NoUnderPointQuery::update(const StreamUpdate& u) { sketch_->update(u); }

double NoUnderPointQuery::estimate(std::size_t item) const { return sketch_->estimate(item); }

std::size_t NoUnderPointQuery::state_bits() const { return serialized_size(*sketch_) * 8; }

ProtocolTranscript run_protocol(const DisjInstance& inst, PointQueryAlgorithm& algo,
                                const ProtocolConfig& config) {
    inst.validate();
    if (!(config.p > 1.0)) throw std::invalid_argument("run_protocol: requires p > 1");
    double dimension = std::pow(static_cast<double>(inst.n), 1.0 / config.p);
    if (!(config.eps > 0.0) || config.eps >= 1.0)
        throw std::invalid_argument("run_protocol: requires 0 < eps < 1");
    if (std::lround(4.0 * config.eps * dimension) != inst.players)
        throw std::invalid_argument("run_protocol: players must equal round(4*eps*n^(1/p))");

    const double candidate_threshold = kCandidateFactor * inst.players;  // c*k
    if (!(candidate_threshold > 1.0))
        throw std::invalid_argument("run_protocol: needs c*k > 1, raise eps or n");
    if (inst.label == DisjCase::Yes && static_cast<double>(inst.overlap) < candidate_threshold)
        throw std::invalid_argument("run_protocol: YES overlap below the c*k detection threshold");
    if (config.passes == 0) throw std::invalid_argument("run_protocol: passes must be >= 1");

    const std::uint32_t max_restarts =
        config.max_restarts ? config.max_restarts : 64 * inst.players;

    ProtocolTranscript transcript;
    std::size_t index_bits = 1;
    while ((std::size_t{1} << index_bits) < inst.n) ++index_bits;

    for (std::uint32_t round = 1; round <= max_restarts; ++round) {
        transcript.rounds = round;
        algo.reset(mix64(config.seed ^ (0x517cc1b727220a95ULL + round)));

        // every player extends the state and posts it; later passes replay
        // the same schedule and repost without refeeding the one-pass sketch
        for (std::uint32_t pass = 0; pass < config.passes; ++pass) {
            for (std::uint32_t j = 0; j < inst.players; ++j) {
                if (pass == 0) {
                    for (std::size_t i = 0; i < inst.n; ++i)
                        if (inst.bit(j, i)) algo.update({i, +1});
                }
                std::size_t bits = algo.state_bits();
                transcript.total_bits += bits;
                transcript.trace.push_back({round, pass, j, bits, 's'});
            }
        }

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < inst.n; ++i)
            if (algo.estimate(i) >= candidate_threshold) candidates.push_back(i);

        if (candidates.empty()) {
            transcript.answer = ProtocolOutcome::No;
            return transcript;
        }
        if (candidates.size() == 1) {
            std::size_t item = candidates.front();
            transcript.total_bits += index_bits;
            transcript.trace.push_back({round, 0, inst.players - 1, index_bits, 'i'});
            transcript.total_bits += inst.players;
            transcript.trace.push_back({round, 0, inst.players - 1, inst.players, 'r'});
            double column = static_cast<double>(inst.column_sum(item));
            transcript.answer =
                column >= candidate_threshold ? ProtocolOutcome::Yes : ProtocolOutcome::No;
            return transcript;
        }
        // several candidates: restart with fresh sketch randomness
    }
    transcript.answer = ProtocolOutcome::Aborted;
    return transcript;
}

double geometric_entropy(double p_success) {
    if (!(p_success > 0.0) || p_success > 1.0)
        throw std::invalid_argument("geometric_entropy: requires 0 < p <= 1");
    if (p_success == 1.0) return 0.0;
    double h = p_success * std::log2(1.0 / p_success) +
               (1.0 - p_success) * std::log2(1.0 / (1.0 - p_success));
    return h / p_success;
}

}  // namespace ossk
