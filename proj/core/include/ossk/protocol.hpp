#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ossk/no_under.hpp"
#include "ossk/stream.hpp"

namespace ossk {

enum class DisjCase { No, Yes };

// k-player mostly-set-disjointness input: player j holds row j of a k x n
// bit matrix.  NO promise: every column sums to at most 1.  YES promise:
// exactly one column sums to the overlap parameter l, the rest to at most 1.
struct DisjInstance {
    std::size_t n = 0;
    std::uint32_t players = 0;
    std::uint32_t overlap = 0;  // the family parameter l
    DisjCase label = DisjCase::No;
    std::vector<std::uint8_t> bits;   // players * n, row-major
    std::vector<std::uint32_t> owner;  // the auxiliary D of the NO sampler, may be empty

    bool bit(std::uint32_t player, std::size_t item) const {
        return bits[static_cast<std::size_t>(player) * n + item] != 0;
    }
    std::uint32_t column_sum(std::size_t item) const;
    void validate() const;
};

// NO-side input distribution: every column i independently picks an owning
// player D_i uniformly and flips one fair coin for X_{D_i, i}.
DisjInstance sample_eta0(std::size_t n, std::uint32_t players, std::uint64_t seed);

// YES instance: column `item` gets exactly `overlap` ones on uniformly chosen
// players; every other column is sampled as in the NO distribution.
DisjInstance plant_yes(std::size_t n, std::uint32_t players, std::uint32_t overlap,
                       std::size_t item, std::uint64_t seed);

// text format: header "n k l case" then k rows of n bits
DisjInstance read_instance(std::istream& in);
DisjInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const DisjInstance& inst);
void write_instance_file(const std::string& path, const DisjInstance& inst);

// Streaming point-query state the players take turns extending and posting
// to the shared blackboard.  reset() must rebuild the state with fresh
// randomness derived from the given run seed.
class PointQueryAlgorithm {
public:
    virtual ~PointQueryAlgorithm() = default;
    virtual void reset(std::uint64_t run_seed) = 0;
    virtual void update(const StreamUpdate& u) = 0;
    virtual double estimate(std::size_t item) const = 0;
    virtual std::size_t state_bits() const = 0;
    virtual std::string name() const = 0;
};

// infinite-precision oracle: n exact counters
class ExactCounterAlgorithm : public PointQueryAlgorithm {
public:
    explicit ExactCounterAlgorithm(std::size_t n);
    void reset(std::uint64_t run_seed) override;
    void update(const StreamUpdate& u) override;
    double estimate(std::size_t item) const override;
    std::size_t state_bits() const override;
    std::string name() const override { return "exact"; }

private:
    std::size_t n_;
    std::vector<std::int64_t> counts_;
};

// never-underestimating sketch reseeded on every restart
class NoUnderPointQuery : public PointQueryAlgorithm {
public:
    NoUnderPointQuery(std::size_t n, double p, double eps, std::uint64_t base_seed);
    void reset(std::uint64_t run_seed) override;
    void update(const StreamUpdate& u) override;
    double estimate(std::size_t item) const override;
    std::size_t state_bits() const override;
    std::string name() const override { return "no-under"; }

private:
    std::size_t n_;
    double p_, eps_;
    std::uint64_t base_seed_;
    std::unique_ptr<NoUnderSketch> sketch_;
};

enum class ProtocolOutcome { Yes, No, Aborted };

struct PostRecord {
    std::uint32_t round;
    std::uint32_t pass;
    std::uint32_t player;
    std::size_t bits;
    char kind;  // 's' state, 'i' candidate index, 'r' reveal bits
};

struct ProtocolTranscript {
    ProtocolOutcome answer = ProtocolOutcome::Aborted;
    std::uint32_t rounds = 0;
    std::size_t total_bits = 0;
    std::vector<PostRecord> trace;
};

struct ProtocolConfig {
    double eps = 0.0;
    double p = 2.0;
    std::uint32_t passes = 1;
    std::uint32_t max_restarts = 0;  // 0 means the default 64 * players
    std::uint64_t seed = 0;          // drives the per-round reseeding
};

// One-shot simulation of the blackboard reduction: players stream their sets
// through the algorithm in turn, each posting its serialized state; an
// estimate at least c*k (c = e/4) flags a candidate column, a unique
// candidate is resolved by revealing its k true bits, several candidates
// restart the round with fresh algorithm randomness on identical streams.
// Never answers wrongly on valid instances when the algorithm never
// underestimates and c*k > 1; it aborts instead of guessing.
ProtocolTranscript run_protocol(const DisjInstance& inst, PointQueryAlgorithm& algo,
                                const ProtocolConfig& config);

// H(p)/p bits: the entropy rate of a geometric round count with success
// probability p; the fair-coin case costs 2 bits per success, certainty 0.
double geometric_entropy(double p_success);

}  // namespace ossk
