#include "seqcsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "seqcsim/adder.hpp"
#include "seqcsim/bohm.hpp"
#include "seqcsim/errors.hpp"
#include "seqcsim/numformat.hpp"
#include "seqcsim/oracle.hpp"
#include "seqcsim/qfile.hpp"
#include "seqcsim/rng.hpp"

namespace seqcsim::cli {

namespace {

constexpr int kTraceDigits = 6;

const char* kBanner = "SEQCSim: space-efficient quantum computer simulator (console build)\n";

CircuitBundle load_bundle(const BundleSource& source, std::vector<std::string>* warnings) {
    if (source.use_files)
        return qfile::load_bundle_files(source.files[0], source.files[1], source.files[2],
                                        source.files[3], warnings);
    return qfile::load_bundle_dir(source.dir.empty() ? "." : source.dir, warnings);
}

void print_initial(std::ostream& out, const BasisState& s, ComplexAmp a) {
    out << "SEQCSim::run(): Initial state is " << fmt_state_arrows(s) << " ==> "
        << fmt_complex(a, kTraceDigits) << ".\n";
}

void print_step(std::ostream& out, std::uint32_t tpc, const BasisState& s, ComplexAmp a) {
    out << "SEQCSim::Bohm_step_forwards(): (tPC=" << tpc << ")\n";
    out << "The new current state is " << fmt_state_arrows(s) << " ==> "
        << fmt_complex(a, kTraceDigits) << ".\n";
}

void print_done(std::ostream& out, std::size_t op_count) {
    out << "SEQCSim::done(): The PC value " << op_count << " is >= the number of operations "
        << op_count << ".\n";
    out << "We are done!\n";
}

constexpr const char* kMetricsHeader =
    "# seqcsim metrics v1: width,ops,nontrivial_ops,calc_amp_calls,max_depth,matrix_mults,"
    "cache_hits,cache_misses,peak_stack_entries,wall_ms\n";

std::string metrics_row(const Circuit& c, const Metrics& m, double wall_ms) {
    std::ostringstream s;
    s << c.width() << "," << c.op_count() << "," << c.nontrivial_op_count() << ","
      << m.calc_amp_calls << "," << m.max_depth << "," << m.matrix_mults << "," << m.cache_hits
      << "," << m.cache_misses << "," << m.peak_stack_entries << "," << fmt_real(wall_ms, 6);
    return s.str();
}

void write_metrics_file(const std::string& path, const Circuit& c, const Metrics& m,
                        double wall_ms) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write metrics file " + path);
    f << kMetricsHeader << metrics_row(c, m, wall_ms) << "\n";
}

EngineOptions engine_options(const RunConfig& config) {
    return EngineOptions{config.mode, config.cache_capacity};
}

// Resolves the hybrid split point. A memory budget admits the full dense
// snapshot or nothing: the snapshot is 2^width amplitudes regardless of the
// split, so a budget that fits selects the deepest possible split.
std::optional<std::uint32_t> hybrid_split(const RunConfig& config, const Circuit& circuit) {
    if (config.hybrid_prefix && config.mem_budget)
        throw std::invalid_argument("--hybrid-prefix and --mem-budget are mutually exclusive");
    if (config.hybrid_prefix) {
        if (*config.hybrid_prefix > circuit.op_count())
            throw std::invalid_argument("hybrid split exceeds the operation count");
        return config.hybrid_prefix;
    }
    if (config.mem_budget) {
        const std::uint64_t need =
            (std::uint64_t{1} << circuit.width()) * sizeof(ComplexAmp);
        if (circuit.width() >= 60 || need > *config.mem_budget)
            throw CapacityError("hybrid mode needs 2^" + std::to_string(circuit.width()) +
                                " * 16 = " + std::to_string(need) +
                                " bytes for the dense prefix, over the " +
                                std::to_string(*config.mem_budget) + "-byte budget");
        return static_cast<std::uint32_t>(circuit.op_count());
    }
    return std::nullopt;
}

// One stochastic step against a dense state vector instead of the path-sum
// engine: used while the hybrid prefix is being carried densely.
void dense_step(bohm::Trajectory& traj, oracle::DenseState& psi, const Circuit& circuit,
                Rng& rng, std::vector<bohm::StepRecord>* trace) {
    const Operation& op = circuit.ops()[traj.pc];
    const OperatorMatrix& m = circuit.op_matrix(op);
    const std::uint32_t applied = traj.pc;
    if (m.trivial()) {
        const std::uint64_t l = local_index(traj.state, op.operands);
        traj.amp = m.at(l, l) * traj.amp;
    } else {
        auto nbrs = neighbors(traj.state, op, circuit);
        std::vector<ComplexAmp> pre(m.dim());
        for (std::uint64_t l = 0; l < m.dim(); ++l)
            pre[l] = psi.amps[nbrs[l].bits];
        auto post = step_amplitudes(pre, m);
        double total = 0.0;
        for (const auto& a : post)
            total += a.norm_sqr();
        if (total < 1e-18)
            throw NumericError("neighborhood probability mass vanished in the dense prefix");
        std::vector<double> probs(post.size());
        for (std::size_t i = 0; i < post.size(); ++i)
            probs[i] = post[i].norm_sqr() / total;
        std::size_t pick = bohm::sample_index(probs, rng.uniform01());
        traj.state = nbrs[pick];
        traj.amp = post[pick];
    }
    traj.pc = applied + 1;
    oracle::apply_op(psi, circuit, op);
    if (trace)
        trace->push_back(bohm::StepRecord{applied, traj.state, traj.amp});
}

} // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> warnings;
        CircuitBundle bundle = load_bundle(config.source, &warnings);
        for (const auto& w : warnings)
            err << "warning: " << w << "\n";

        const auto split = hybrid_split(config, bundle.circuit);
        const std::size_t t = bundle.circuit.op_count();

        out << kBanner << "\n";
        print_initial(out, bundle.input, {1.0, 0.0});

        const auto t0 = std::chrono::steady_clock::now();
        bohm::Trajectory traj{bundle.input, {1.0, 0.0}, 0};
        Rng rng(config.seed);
        PathSumEngine engine(bundle.circuit, bundle.input, engine_options(config));

        auto emit = [&](const bohm::StepRecord& rec) {
            if (config.trace)
                print_step(out, rec.pc, rec.state, rec.amp);
        };

        if (split) {
            const std::uint64_t budget =
                config.mem_budget ? *config.mem_budget : oracle::kDefaultDenseBudgetBytes;
            oracle::DenseState psi = oracle::init_dense(bundle.input, budget);
            std::vector<bohm::StepRecord> rec;
            while (traj.pc < *split) {
                dense_step(traj, psi, bundle.circuit, rng, &rec);
                emit(rec.back());
            }
            engine.set_hybrid_base(*split, std::move(psi.amps));
        }
        while (traj.pc < t) {
            std::vector<bohm::StepRecord> rec;
            bohm::step_forward(traj, engine, rng, &rec);
            emit(rec.back());
        }
        const auto t1 = std::chrono::steady_clock::now();

        print_done(out, t);
        if (!config.metrics_path.empty()) {
            const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            write_metrics_file(config.metrics_path, bundle.circuit, engine.metrics(), wall_ms);
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_amp(const RunConfig& config, const std::string& state_bits, std::uint32_t pc,
            std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> warnings;
        CircuitBundle bundle = load_bundle(config.source, &warnings);
        for (const auto& w : warnings)
            err << "warning: " << w << "\n";
        if (pc > bundle.circuit.op_count())
            throw std::invalid_argument("--pc exceeds the operation count");
        BasisState state = BasisState::from_binary(state_bits, bundle.circuit.width());

        PathSumEngine engine(bundle.circuit, bundle.input, engine_options(config));
        if (auto split = hybrid_split(config, bundle.circuit)) {
            const std::uint64_t budget =
                config.mem_budget ? *config.mem_budget : oracle::kDefaultDenseBudgetBytes;
            auto psi = oracle::simulate_dense(bundle.circuit, bundle.input, *split,
                                              oracle::Exec::Serial, budget);
            engine.set_hybrid_base(*split, std::move(psi.amps));
        }

        const auto t0 = std::chrono::steady_clock::now();
        ComplexAmp amp = engine.amplitude(state, pc);
        const auto t1 = std::chrono::steady_clock::now();
        const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        out << fmt_complex(amp, kTraceDigits) << "\n";
        if (!config.metrics_path.empty())
            write_metrics_file(config.metrics_path, bundle.circuit, engine.metrics(), wall_ms);
        else
            out << "metrics: " << metrics_row(bundle.circuit, engine.metrics(), wall_ms) << "\n";
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_oracle(const RunConfig& config, std::optional<std::uint32_t> upto_pc, std::ostream& out,
               std::ostream& err) {
    try {
        std::vector<std::string> warnings;
        CircuitBundle bundle = load_bundle(config.source, &warnings);
        for (const auto& w : warnings)
            err << "warning: " << w << "\n";
        const std::uint32_t pc =
            upto_pc ? *upto_pc : static_cast<std::uint32_t>(bundle.circuit.op_count());
        if (pc > bundle.circuit.op_count())
            throw std::invalid_argument("--pc exceeds the operation count");
        const std::uint64_t budget =
            config.mem_budget ? *config.mem_budget : oracle::kDefaultDenseBudgetBytes;

        auto psi = oracle::simulate_dense(bundle.circuit, bundle.input, pc, oracle::Exec::Serial,
                                          budget);
        auto probs = oracle::born_distribution(psi);

        std::vector<std::uint64_t> order;
        for (std::uint64_t x = 0; x < probs.size(); ++x)
            if (probs[x] > 1e-12)
                order.push_back(x);
        std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
            if (probs[a] != probs[b])
                return probs[a] > probs[b];
            return a < b;
        });
        for (std::uint64_t x : order) {
            BasisState s(x, bundle.circuit.width());
            out << s.to_binary() << "  " << fmt_real(probs[x], kTraceDigits) << "  "
                << fmt_complex(psi.amps[x], kTraceDigits) << "\n";
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_gen(const std::string& kind, std::uint32_t n, std::uint64_t a, std::uint64_t b,
            const std::string& out_dir, std::ostream& out, std::ostream& err) {
    try {
        if (kind != "adder")
            throw std::invalid_argument("unknown generator kind '" + kind + "' (try 'adder')");
        CircuitBundle bundle = adder::gen_draper(adder::AdderSpec{n, a, b});
        qfile::write_bundle_dir(bundle, out_dir);
        out << "wrote " << bundle.circuit.op_count() << "-operation adder bundle to " << out_dir
            << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_bench(std::uint32_t min_n, std::uint32_t max_n, const std::string& out_csv,
              std::uint64_t seed, std::ostream& out, std::ostream& err) {
    try {
        if (min_n < 1 || min_n > max_n)
            throw std::invalid_argument("need 1 <= min <= max");
        std::ofstream csv(out_csv, std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot write " + out_csv);
        csv << "# seqcsim bench v1: n,cache_capacity,width,ops,nontrivial_ops,calc_amp_calls,"
               "max_depth,matrix_mults,cache_hits,cache_misses,peak_stack_entries,wall_ms\n";

        std::vector<std::uint64_t> uncached_calls;
        for (std::uint32_t n = min_n; n <= max_n; ++n) {
            CircuitBundle bundle = adder::gen_draper(adder::AdderSpec{n, 1, 1});
            for (std::size_t cache_cap : {std::size_t{0}, kDefaultCacheCapacity}) {
                PathSumEngine engine(bundle.circuit, bundle.input,
                                     EngineOptions{Kernel::Iterative, cache_cap});
                Rng rng(seed);
                const auto t0 = std::chrono::steady_clock::now();
                bohm::run(engine, rng);
                const auto t1 = std::chrono::steady_clock::now();
                const double wall_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                csv << n << "," << cache_cap << ","
                    << metrics_row(bundle.circuit, engine.metrics(), wall_ms) << "\n";
                if (cache_cap == 0)
                    uncached_calls.push_back(engine.metrics().calc_amp_calls);
            }
        }
        for (std::size_t i = 1; i < uncached_calls.size(); ++i) {
            const double ratio = static_cast<double>(uncached_calls[i]) /
                                 static_cast<double>(uncached_calls[i - 1]);
            out << "calc_amp_calls growth (cache off) " << (min_n + i - 1) << "x -> "
                << (min_n + i) << "x: " << fmt_real(ratio, 4) << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"space-efficient quantum circuit simulator"};
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "iterative";
    std::vector<std::string> files;

    auto add_bundle_flags = [&](CLI::App* sub) {
        sub->add_option("--dir", config.source.dir,
                        "directory holding qconfig/qinput/qoperators/qopseq .txt");
        sub->add_option("files", files,
                        "explicit qconfig qinput qoperators qopseq paths")
            ->expected(0, 4);
        sub->add_option("--seed", config.seed, "trajectory seed");
        sub->add_option("--mode", mode, "amplitude kernel")
            ->check(CLI::IsMember({"recursive", "iterative"}));
        sub->add_option("--cache-cap", config.cache_capacity,
                        "amplitude cache capacity in entries (0 disables)");
        sub->add_option("--hybrid-prefix", config.hybrid_prefix,
                        "dense prefix length before path summation");
        sub->add_option("--mem-budget", config.mem_budget,
                        "dense memory budget in bytes (hybrid/oracle)");
        sub->add_option("--metrics", config.metrics_path, "write a metrics CSV here");
    };

    auto* run = app.add_subcommand("run", "walk one stochastic trajectory");
    add_bundle_flags(run);
    run->add_flag("--trace,!--no-trace", config.trace, "print per-step state lines");

    std::string amp_state;
    std::uint32_t amp_pc = 0;
    auto* amp = app.add_subcommand("amp", "amplitude of one basis state after pc operations");
    add_bundle_flags(amp);
    amp->add_option("--state", amp_state, "basis state bits, most significant first")
        ->required();
    amp->add_option("--pc", amp_pc, "operation count prefix")->required();

    std::optional<std::uint32_t> oracle_pc;
    auto* orc = app.add_subcommand("oracle", "dense state-vector reference distribution");
    add_bundle_flags(orc);
    orc->add_option("--pc", oracle_pc, "operation count prefix (default: whole circuit)");

    std::string gen_kind;
    std::uint32_t gen_bits = 0;
    std::uint64_t gen_a = 0, gen_b = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a circuit bundle");
    gen->add_option("kind", gen_kind, "circuit family (adder)")->required();
    gen->add_option("--bits", gen_bits, "operand width in bits")->required();
    gen->add_option("--a", gen_a, "initial a value");
    gen->add_option("--b", gen_b, "initial b value");
    gen->add_option("--out", gen_out, "output directory")->required();

    std::uint32_t bench_min = 0, bench_max = 0;
    std::string bench_out = "bench.csv";
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "adder sweep with operation counters");
    bench->add_option("--min", bench_min, "smallest operand width")->required();
    bench->add_option("--max", bench_max, "largest operand width")->required();
    bench->add_option("--out", bench_out, "output CSV path");
    bench->add_option("--seed", bench_seed, "trajectory seed");

    try {
        // CLI11's vector overload consumes the arguments back to front.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    config.mode = (mode == "recursive") ? Kernel::Recursive : Kernel::Iterative;
    if (files.size() == 4) {
        config.source.use_files = true;
        std::copy(files.begin(), files.end(), config.source.files.begin());
    } else if (!files.empty()) {
        err << "error: expected all four bundle files (qconfig qinput qoperators qopseq)\n";
        return kExitUsage;
    }

    if (run->parsed())
        return cmd_run(config, out, err);
    if (amp->parsed())
        return cmd_amp(config, amp_state, amp_pc, out, err);
    if (orc->parsed())
        return cmd_oracle(config, oracle_pc, out, err);
    if (gen->parsed())
        return cmd_gen(gen_kind, gen_bits, gen_a, gen_b, gen_out, out, err);
    if (bench->parsed())
        return cmd_bench(bench_min, bench_max, bench_out, bench_seed, out, err);
    return kExitUsage;
}

} // namespace seqcsim::cli
