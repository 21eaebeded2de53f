#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ossk/adversary.hpp"
#include "ossk/bench.hpp"
#include "ossk/count_min.hpp"
#include "ossk/count_sketch.hpp"
#include "ossk/det_point_query.hpp"
#include "ossk/no_over.hpp"
#include "ossk/no_under.hpp"
#include "ossk/norms.hpp"
#include "ossk/protocol.hpp"
#include "ossk/rank_cert.hpp"
#include "ossk/serialize.hpp"
#include "ossk/stream.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCertification = 3;

struct BuildArgs {
    std::string algo;
    std::size_t n = 0;
    double p = 2.0;
    double eps = 0.5;
    std::uint64_t seed = 0;
    std::uint32_t k = 0;  // cm/cs only; 0 derives from eps and n
    std::uint32_t t = 0;
    std::string input;
    std::string out;
};

ossk::SketchVariant make_sketch(const BuildArgs& a) {
    if (a.algo == "cm" || a.algo == "cs") {
        ossk::SketchConfig config{a.algo, a.n, a.p, a.eps, a.seed, std::nullopt};
        ossk::DerivedDims dims = ossk::derive_dims(config);
        std::uint32_t k = a.k ? a.k : dims.k;
        std::uint32_t t = a.t ? a.t : dims.t;
        if (a.algo == "cm") return ossk::CountMinSketch(a.n, k, t, a.seed);
        if (t % 2 == 0) ++t;
        return ossk::CountSketch(a.n, k, t, a.seed);
    }
    if (a.algo == "nounder") {
        ossk::NuParams params = ossk::nu_params(a.n, a.p, a.eps);
        if (params.capped) {
            std::cerr << "note: 4/eps * n^(1-1/p) exceeds n; bucket count capped at n="
                      << a.n << " (exact counting regime)\n";
        }
        return ossk::NoUnderSketch(a.n, a.p, a.eps, a.seed);
    }
    if (a.algo == "noover") return ossk::NoOverSketch(a.n, a.p, a.eps, a.seed);
    if (a.algo == "detpq") return ossk::DetPQSketch(ossk::IncoherentMatrix::build(a.n));
    throw CLI::ValidationError("--algo", "unknown algorithm: " + a.algo);
}

int cmd_build(const BuildArgs& a) {
    ossk::SketchVariant sketch = make_sketch(a);
    std::size_t fed = 0;
    if (!a.input.empty()) {
        ossk::StreamFile stream = ossk::read_stream_file(a.input);
        if (stream.n > a.n)
            throw std::invalid_argument("stream universe exceeds sketch universe");
        // run the exact-vector validator for the declared model before feeding
        ossk::apply_stream(stream.updates, a.n, stream.model);
        for (const ossk::StreamUpdate& u : stream.updates)
            std::visit([&](auto& s) { s.update(u); }, sketch);
        fed = stream.updates.size();
    }
    ossk::save_sketch_file(a.out, sketch);
    std::cout << "wrote " << a.out << " (" << a.algo << ", n=" << a.n << ", " << fed
              << " updates)\n";
    return 0;
}

int cmd_query(const std::string& path, std::optional<std::uint64_t> item, bool all) {
    ossk::SketchVariant sketch = ossk::load_sketch_file(path);
    std::size_t n = std::visit([](const auto& s) { return s.universe(); }, sketch);
    auto query_one = [&](std::uint64_t i) {
        double est = std::visit(
            [&](const auto& s) { return static_cast<double>(s.estimate(i)); }, sketch);
        std::cout << i << "\t" << std::setprecision(17) << est << "\n";
    };
    if (all) {
        for (std::uint64_t i = 0; i < n; ++i) query_one(i);
        return 0;
    }
    if (!item) throw CLI::ValidationError("query", "need --item or --all");
    if (*item >= n) throw std::invalid_argument("item outside the sketch universe");
    query_one(*item);
    return 0;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out) {
    ossk::SketchVariant merged = ossk::load_sketch_file(inputs[0]);
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        ossk::SketchVariant next = ossk::load_sketch_file(inputs[i]);
        if (merged.index() != next.index())
            throw std::invalid_argument("cannot merge different sketch kinds: " + inputs[i]);
        std::visit(
            [&](auto& dst) {
                using T = std::decay_t<decltype(dst)>;
                dst += std::get<T>(next);
            },
            merged);
    }
    ossk::save_sketch_file(out, merged);
    std::cout << "merged " << inputs.size() << " sketches into " << out << "\n";
    return 0;
}

int cmd_quantize(const std::string& input, double eps_q, const std::string& out) {
    ossk::SketchVariant sketch = ossk::load_sketch_file(input);
    auto* nu = std::get_if<ossk::NoUnderSketch>(&sketch);
    if (nu == nullptr)
        throw std::invalid_argument("quantize applies only to no-under sketches");
    ossk::SketchVariant packed = nu->quantize(eps_q);
    ossk::save_sketch_file(out, packed);
    std::cout << "quantized " << input << " with eps_q=" << eps_q << " into " << out << "\n";
    return 0;
}

void print_certificate(const ossk::FoolingCertificate& cert, const ossk::CertificateCheck& check) {
    std::cout << "  index            " << cert.index << "\n";
    std::cout << "  value            " << std::setprecision(17) << cert.value << "\n";
    if (cert.saturated) std::cout << "  saturated        yes (unit-mass cap reached)\n";
    std::cout << "  feasibility      " << check.feasibility << "\n";
    std::cout << "  negativity       " << check.negativity << "\n";
    if (cert.dual) {
        std::cout << "  dual_margin      " << check.dual_margin << "\n";
        std::cout << "  rowspan_residual " << check.rowspan_residual << "\n";
        std::cout << "  dual_row_sum     " << check.dual_row_sum << "\n";
    }
    std::cout << "  verified         " << (check.ok ? "yes" : "NO") << "\n";
}

int cmd_fool_under(const std::string& matrix_path, std::size_t index, std::optional<double> T) {
    ossk::DenseMatrix A = ossk::read_matrix_file(matrix_path);
    ossk::FoolingCertificate cert = ossk::fool_no_under(A, index);
    ossk::CertificateCheck check = ossk::verify_certificate(A, cert);
    std::cout << "no-under fooling program on " << A.rows() << "x" << A.cols()
              << " matrix\n";
    print_certificate(cert, check);
    if (T) {
        auto dual = ossk::dual_certificate_under(A, index, *T);
        if (dual) {
            std::cout << "  row-span certificate with budget T=" << *T << ":";
            for (double z : *dual) std::cout << " " << std::setprecision(6) << z;
            std::cout << "\n";
        } else {
            std::cout << "  no row-span certificate at budget T=" << *T
                      << " (optimum exceeds T/n)\n";
        }
    }
    if (!check.ok) throw ossk::CertificationError("certificate failed verification");
    return 0;
}

int cmd_fool_over(const std::string& matrix_path, double T) {
    ossk::DenseMatrix A = ossk::read_matrix_file(matrix_path);
    ossk::NoOverAttack attack = ossk::fool_no_over(A, T);
    std::cout << "no-over fooling program on " << A.rows() << "x" << A.cols()
              << " matrix, T=" << T << "\n";
    std::cout << "  fooled " << attack.fooled.size() << " of " << A.cols() << " indices\n";
    bool all_ok = true;
    for (const ossk::FoolingCertificate& cert : attack.certificates) {
        ossk::CertificateCheck check = ossk::verify_certificate(A, cert);
        if (!check.ok) {
            all_ok = false;
            std::cout << "  certificate for index " << cert.index << " FAILED verification\n";
        }
    }
    if (!attack.fooled.empty()) {
        std::cout << "  fooled indices:";
        std::size_t shown = std::min<std::size_t>(attack.fooled.size(), 16);
        for (std::size_t i = 0; i < shown; ++i) std::cout << " " << attack.fooled[i];
        if (shown < attack.fooled.size()) std::cout << " ...";
        std::cout << "\n";
    }
    if (!all_ok) throw ossk::CertificationError("certificate failed verification");
    return 0;
}

int cmd_attack(std::size_t n, std::uint32_t k, std::uint32_t t, std::uint64_t seed) {
    ossk::AttackRecord record = ossk::attack_sketch(
        [&](std::size_t universe) { return ossk::count_min_matrix(universe, k, t, seed); }, n);
    std::cout << "count-min layout n=" << n << " k=" << k << " t=" << t << " seed=" << seed
              << " (" << record.total_rows << " rows, T=" << record.T << ")\n";
    std::cout << "  best index       " << record.best_index << "\n";
    std::cout << "  forced estimate  " << std::setprecision(17) << record.forced_estimate << "\n";
    std::cout << "  true value       " << record.true_value << "\n";
    std::cout << "  gap              " << record.gap << "\n";
    return 0;
}

int cmd_rank_cert(const std::string& matrix_path) {
    ossk::DenseMatrix M = ossk::read_matrix_file(matrix_path);
    std::cout << "rank bounds for " << M.rows() << "x" << M.cols() << " matrix\n";
    if (M.rows() == M.cols()) {
        std::cout << "  trace/frobenius  " << std::setprecision(17)
                  << ossk::rank_bound_trace_frobenius(M) << "\n";
    }
    ossk::GreedyRankCertificate cert = ossk::greedy_rank_certificate(M);
    std::cout << "  greedy bound     " << std::setprecision(17) << cert.bound << "\n";
    std::cout << "  band level       " << cert.level << " (" << cert.band_size
              << " pivots)\n";
    std::cout << "  band trace       " << cert.trace << "\n";
    std::cout << "  band frob^2      " << cert.frob_sq << "\n";
    return 0;
}

struct SimArgs {
    std::size_t n = 0;
    std::uint32_t players = 0;
    double eps = 0.0;
    double p = 2.0;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::uint32_t max_restarts = 0;
    std::uint32_t passes = 1;
    std::string algo = "nounder";
    std::string case_filter = "both";
};

int cmd_simulate(const SimArgs& a) {
    double threshold = 0.25 * std::exp(1.0) * a.players;
    auto overlap = static_cast<std::uint32_t>(std::ceil(threshold));
    if (overlap < 2) overlap = 2;

    std::unique_ptr<ossk::PointQueryAlgorithm> algo;
    if (a.algo == "nounder")
        algo = std::make_unique<ossk::NoUnderPointQuery>(a.n, a.p, a.eps, a.seed);
    else if (a.algo == "exact")
        algo = std::make_unique<ossk::ExactCounterAlgorithm>(a.n);
    else
        throw CLI::ValidationError("--algo", "unknown protocol algorithm: " + a.algo);

    ossk::ProtocolConfig config{a.eps, a.p, a.passes, a.max_restarts, 0};
    std::size_t wrong = 0, aborted = 0;
    std::uint64_t total_rounds = 0;
    std::size_t total_bits_acc = 0;
    std::size_t runs = 0;

    for (std::size_t trial = 0; trial < a.trials; ++trial) {
        for (int phase = 0; phase < 2; ++phase) {
            bool yes_case = phase == 1;
            if (a.case_filter == "no" && yes_case) continue;
            if (a.case_filter == "yes" && !yes_case) continue;
            std::uint64_t inst_seed = ossk::mix64(a.seed ^ (2 * trial + phase + 1));
            ossk::DisjInstance inst =
                yes_case ? ossk::plant_yes(a.n, a.players, overlap,
                                           inst_seed % a.n, inst_seed)
                         : ossk::sample_eta0(a.n, a.players, inst_seed);
            config.seed = ossk::mix64(inst_seed ^ 0xace1ace1ace1ace1ULL);
            ossk::ProtocolTranscript result = ossk::run_protocol(inst, *algo, config);
            ++runs;
            total_rounds += result.rounds;
            total_bits_acc += result.total_bits;
            if (result.answer == ossk::ProtocolOutcome::Aborted) {
                ++aborted;
            } else if ((result.answer == ossk::ProtocolOutcome::Yes) != yes_case) {
                ++wrong;
            }
        }
    }
    std::cout << "protocol simulation: n=" << a.n << " players=" << a.players
              << " eps=" << a.eps << " p=" << a.p << " overlap=" << overlap
              << " algo=" << algo->name() << "\n";
    std::cout << "  runs          " << runs << "\n";
    std::cout << "  wrong answers " << wrong << "\n";
    std::cout << "  aborts        " << aborted << "\n";
    std::cout << "  mean rounds   " << static_cast<double>(total_rounds) / runs << "\n";
    std::cout << "  mean bits     " << static_cast<double>(total_bits_acc) / runs << "\n";
    return wrong == 0 ? 0 : 1;
}

struct BenchArgs {
    std::string algo;
    std::size_t n = 0;
    double p = 2.0;
    double eps = 0.5;
    std::size_t trials = 50;
    std::string dist = "zipf";
    double zipf_s = 1.1;
    std::int64_t scale = 10000;
    std::uint64_t seed = 1;
    double eps_q = 0.0;
    std::string json_path;
};

int cmd_bench(const BenchArgs& a) {
    ossk::SketchConfig config{a.algo, a.n, a.p, a.eps, a.seed, std::nullopt};
    if (a.eps_q > 0.0) config.eps_q = a.eps_q;
    ossk::BenchReport report = ossk::bench_error(
        config, a.trials, ossk::distribution_from_string(a.dist), a.seed, a.zipf_s, a.scale);
    nlohmann::json j{
        {"algo", report.algo},
        {"distribution", report.distribution},
        {"n", report.n},
        {"p", report.p},
        {"eps", report.eps},
        {"k", report.k},
        {"t", report.t},
        {"total_counters", report.total_counters},
        {"trials", report.trials},
        {"master_seed", report.master_seed},
        {"failure_fraction", report.failure_fraction},
        {"max_error_ratio", report.max_error_ratio},
        {"one_sided_violations", report.one_sided_violations},
        {"wall_time_seconds", report.wall_time_seconds},
    };
    if (!a.json_path.empty()) {
        std::ofstream out(a.json_path);
        if (!out) throw std::invalid_argument("cannot open " + a.json_path);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << a.json_path << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided point-query sketches: build, attack, and simulate"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "build a sketch, optionally feeding a stream file");
    build->add_option("--algo", build_args.algo, "cm | cs | nounder | noover | detpq")
        ->required()
        ->check(CLI::IsMember({"cm", "cs", "nounder", "noover", "detpq"}));
    build->add_option("--n", build_args.n, "universe size")->required();
    build->add_option("--p", build_args.p, "norm order (nounder/noover)");
    build->add_option("--eps", build_args.eps, "relative error target");
    build->add_option("--k", build_args.k, "bucket override (cm/cs)");
    build->add_option("--t", build_args.t, "table override (cm/cs)");
    build->add_option("--seed", build_args.seed, "hash seed");
    build->add_option("--input", build_args.input, "stream file to feed");
    build->add_option("--out", build_args.out, "output sketch file")->required();

    std::string query_path;
    std::optional<std::uint64_t> query_item;
    bool query_all = false;
    auto* query = app.add_subcommand("query", "point-query a sketch file");
    query->add_option("--sketch", query_path, "sketch file")->required();
    std::uint64_t query_item_raw = 0;
    auto* item_opt = query->add_option("--item", query_item_raw, "item to query");
    query->add_flag("--all", query_all, "dump estimates for the whole universe");

    std::vector<std::string> merge_inputs;
    std::string merge_out;
    auto* merge = app.add_subcommand("merge", "sum sketches of identical shape");
    merge->add_option("inputs", merge_inputs, "sketch files")->expected(2, -1)->required();
    merge->add_option("--out", merge_out, "output sketch file")->required();

    std::string quant_in, quant_out;
    double quant_eps = 0.0;
    auto* quant = app.add_subcommand("quantize", "pack no-under counters onto a power grid");
    quant->add_option("--sketch", quant_in, "input no-under sketch")->required();
    quant->add_option("--eps-q", quant_eps, "quantization step (1+eps_q grid)")->required();
    quant->add_option("--out", quant_out, "output sketch file")->required();

    auto* fool = app.add_subcommand("fool", "solve fooling programs against a sketch matrix");
    fool->require_subcommand(1);
    std::string fu_matrix;
    std::size_t fu_index = 0;
    double fu_T = 0.0;
    auto* fool_under = fool->add_subcommand("under", "max x_i over the kernel, unit-mass input");
    fool_under->add_option("--matrix", fu_matrix, "CSV matrix file")->required();
    fool_under->add_option("--index", fu_index, "target index")->required();
    auto* fu_T_opt = fool_under->add_option("--T", fu_T, "budget for a row-span certificate");
    std::string fo_matrix;
    double fo_T = 0.0;
    auto* fool_over = fool->add_subcommand("over", "min x_i over the kernel, spiked input");
    fool_over->add_option("--matrix", fo_matrix, "CSV matrix file")->required();
    fool_over->add_option("--T", fo_T, "spike ratio, 1 <= T <= n/2")->required();
    std::size_t at_n = 0;
    std::uint32_t at_k = 1, at_t = 1;
    std::uint64_t at_seed = 0;
    auto* fool_attack = fool->add_subcommand("attack", "fool a concrete count-min layout");
    fool_attack->add_option("--n", at_n, "universe size")->required();
    fool_attack->add_option("--k", at_k, "buckets per table");
    fool_attack->add_option("--t", at_t, "tables");
    fool_attack->add_option("--seed", at_seed, "hash seed");

    std::string rank_matrix;
    auto* rank = app.add_subcommand("rank-cert", "verifiable lower bounds on matrix rank");
    rank->add_option("--matrix", rank_matrix, "CSV matrix file")->required();

    SimArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "blackboard set-disjointness reduction");
    sim->add_option("--n", sim_args.n, "universe size")->required();
    sim->add_option("--players", sim_args.players, "player count, must equal 4*eps*n^(1/p)")
        ->required();
    sim->add_option("--eps", sim_args.eps, "sketch error target")->required();
    sim->add_option("--p", sim_args.p, "norm order");
    sim->add_option("--trials", sim_args.trials, "instances per case");
    sim->add_option("--seed", sim_args.seed, "master seed");
    sim->add_option("--max-restarts", sim_args.max_restarts, "abort threshold (0: 64*players)");
    sim->add_option("--passes", sim_args.passes, "stream passes per round");
    sim->add_option("--algo", sim_args.algo, "nounder | exact")
        ->check(CLI::IsMember({"nounder", "exact"}));
    sim->add_option("--case", sim_args.case_filter, "no | yes | both")
        ->check(CLI::IsMember({"no", "yes", "both"}));

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "error benchmark over seeded streams");
    bench->add_option("--algo", bench_args.algo, "cm | cs | nounder | noover | detpq")
        ->required()
        ->check(CLI::IsMember({"cm", "cs", "nounder", "noover", "detpq"}));
    bench->add_option("--n", bench_args.n, "universe size")->required();
    bench->add_option("--p", bench_args.p, "norm order");
    bench->add_option("--eps", bench_args.eps, "relative error target");
    bench->add_option("--trials", bench_args.trials, "stream count");
    bench->add_option("--dist", bench_args.dist, "zipf | uniform | one-heavy")
        ->check(CLI::IsMember({"zipf", "uniform", "one-heavy"}));
    bench->add_option("--zipf-s", bench_args.zipf_s, "zipf shape");
    bench->add_option("--scale", bench_args.scale, "stream mass scale");
    bench->add_option("--seed", bench_args.seed, "master seed");
    bench->add_option("--eps-q", bench_args.eps_q, "quantize nounder before querying");
    bench->add_option("--json", bench_args.json_path, "write the report to a JSON file");

    try {
        app.parse(argc, argv);
        if (*item_opt) query_item = query_item_raw;
        if (*build) return cmd_build(build_args);
        if (*query) return cmd_query(query_path, query_item, query_all);
        if (*merge) return cmd_merge(merge_inputs, merge_out);
        if (*quant) return cmd_quantize(quant_in, quant_eps, quant_out);
        if (*fool_under)
            return cmd_fool_under(fu_matrix, fu_index,
                                  *fu_T_opt ? std::optional<double>(fu_T) : std::nullopt);
        if (*fool_over) return cmd_fool_over(fo_matrix, fo_T);
        if (*fool_attack) return cmd_attack(at_n, at_k, at_t, at_seed);
        if (*rank) return cmd_rank_cert(rank_matrix);
        if (*sim) return cmd_simulate(sim_args);
        if (*bench) return cmd_bench(bench_args);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    } catch (const ossk::CertificationError& e) {
        std::cerr << "certification error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const ossk::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
