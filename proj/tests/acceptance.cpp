// Acceptance suite: every release criterion in one binary, one PASS/FAIL
// line each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "seqcsim/adder.hpp"
#include "seqcsim/bohm.hpp"
#include "seqcsim/commands.hpp"
#include "seqcsim/ensemble.hpp"
#include "seqcsim/oracle.hpp"
#include "seqcsim/qfile.hpp"
#include "test_support.hpp"

using namespace seqcsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
    void require(bool ok, const std::string& why) {
        if (!ok)
            fail(why);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct CliCapture {
    int code;
    std::string out;
    std::string err;
};

CliCapture run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Final "The new current state is ..." line of a trace.
bool parse_final_state_line(const std::string& trace, std::string& bits, ComplexAmp& amp) {
    static const std::regex line_re(
        R"(The new current state is \d+->([01]+)<-0 \(\d+ bits\) ==> \(([^ ]+) \+ i\*([^)]+)\)\.)");
    std::sregex_iterator it(trace.begin(), trace.end(), line_re), end;
    bool found = false;
    for (; it != end; ++it) {
        bits = (*it)[1];
        amp = {std::stod((*it)[2]), std::stod((*it)[3])};
        found = true;
    }
    return found;
}

std::uint64_t adder_target_bits(std::uint32_t n, std::uint64_t a, std::uint64_t b) {
    return ((a + b) & ((std::uint64_t{1} << n) - 1)) | (b << n);
}

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / "seqcsim_acceptance";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

// ---------------------------------------------------------------------
// 1. Adder ground truth: the 4-bit adder with a=1, b=1 ends at 00010010
//    with unit amplitude for every seed 0..99; the amplitude of 00011001
//    after one operation is 0.707107 within 5e-7.
Outcome criterion_adder_ground_truth(const ScratchDir& scratch) {
    Outcome o;
    auto dir = (scratch.path / "n4").string();
    qfile::write_bundle_dir(adder::gen_draper({4, 1, 1}), dir);
    for (int seed = 0; seed < 100; ++seed) {
        auto r = run_cli({"run", "--dir", dir, "--seed", std::to_string(seed)});
        if (r.code != 0) {
            o.fail("run exited " + std::to_string(r.code) + " at seed " + std::to_string(seed));
            break;
        }
        std::string bits;
        ComplexAmp amp;
        if (!parse_final_state_line(r.out, bits, amp)) {
            o.fail("no state line at seed " + std::to_string(seed));
            break;
        }
        if (bits != "00010010" || abs_diff(amp, {1.0, 0.0}) > 1e-9) {
            o.fail("seed " + std::to_string(seed) + " ended at " + bits + " amp (" +
                   fmt(amp.re) + "," + fmt(amp.im) + ")");
            break;
        }
    }
    auto r = run_cli({"amp", "--dir", dir, "--state", "00011001", "--pc", "1"});
    o.require(r.code == 0, "amp command failed");
    double re = 0, im = 0;
    o.require(std::sscanf(r.out.c_str(), "(%lf + i*%lf)", &re, &im) == 2, "unparsable amp");
    o.require(std::fabs(re - 0.707107) <= 5e-7 && std::fabs(im) <= 5e-7,
              "amp after one op was (" + fmt(re) + "," + fmt(im) + ")");
    return o;
}

// ---------------------------------------------------------------------
// 2. Adder sweep: for n in {1,2,3} and every input pair, the dense final
//    distribution is a point mass on a=(a+b) mod 2^n with b unchanged, and
//    the trajectory walk agrees for 5 seeds each.
Outcome criterion_adder_sweep() {
    Outcome o;
    for (std::uint32_t n = 1; n <= 3 && o.pass; ++n) {
        for (std::uint64_t a = 0; a < (1u << n) && o.pass; ++a)
            for (std::uint64_t b = 0; b < (1u << n) && o.pass; ++b) {
                auto bundle = adder::gen_draper({n, a, b});
                const auto t = static_cast<std::uint32_t>(bundle.circuit.op_count());
                auto psi = oracle::simulate_dense(bundle.circuit, bundle.input, t);
                auto probs = oracle::born_distribution(psi);
                const std::uint64_t target = adder_target_bits(n, a, b);
                for (std::uint64_t x = 0; x < probs.size(); ++x) {
                    const double expect = x == target ? 1.0 : 0.0;
                    if (std::fabs(probs[x] - expect) > 1e-9)
                        o.fail("dense mass misplaced for n=" + std::to_string(n) + " a=" +
                               std::to_string(a) + " b=" + std::to_string(b));
                }
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    PathSumEngine engine(bundle.circuit, bundle.input, {});
                    Rng rng(seed);
                    auto result = bohm::run(engine, rng);
                    if (result.final.state.bits != target)
                        o.fail("walk missed the sum for n=" + std::to_string(n));
                }
            }
    }
    return o;
}

// ---------------------------------------------------------------------
// 3. Path-sum / oracle equivalence on the 2x3 adder, all states, all
//    prefixes, both kernels, cache on and off.
Outcome criterion_pathsum_oracle_equivalence() {
    Outcome o;
    auto bundle = adder::gen_draper({3, 1, 1});
    const auto t = static_cast<std::uint32_t>(bundle.circuit.op_count());
    const std::uint64_t states = std::uint64_t{1} << bundle.circuit.width();

    std::vector<PathSumEngine> engines;
    engines.emplace_back(bundle.circuit, bundle.input, EngineOptions{Kernel::Recursive, 0});
    engines.emplace_back(bundle.circuit, bundle.input, EngineOptions{Kernel::Iterative, 0});
    engines.emplace_back(bundle.circuit, bundle.input,
                         EngineOptions{Kernel::Recursive, kDefaultCacheCapacity});
    engines.emplace_back(bundle.circuit, bundle.input,
                         EngineOptions{Kernel::Iterative, kDefaultCacheCapacity});

    double worst = 0.0;
    oracle::DenseState psi = oracle::init_dense(bundle.input);
    for (std::uint32_t pc = 0; pc <= t; ++pc) {
        if (pc > 0)
            oracle::apply_op(psi, bundle.circuit, bundle.circuit.ops()[pc - 1]);
        for (std::uint64_t x = 0; x < states; ++x) {
            BasisState s(x, bundle.circuit.width());
            for (auto& engine : engines)
                worst = std::max(worst, abs_diff(engine.amplitude(s, pc), psi.amps[x]));
        }
    }
    o.require(worst <= 1e-9, "max |calc_amp - oracle| = " + fmt(worst));
    o.detail = "max dev " + fmt(worst);
    return o;
}

// ---------------------------------------------------------------------
// 4. Born-rule exactness: on 20 random small circuits the exhaustive
//    trajectory distribution equals the dense Born distribution.
Outcome criterion_born_exactness() {
    Outcome o;
    Rng gen(424242);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t width = 2 + static_cast<std::uint32_t>(gen.next() % 3); // 2..4
        const std::size_t ops = 5 + static_cast<std::size_t>(gen.next() % 6);       // 5..10
        auto bundle = test_support::random_circuit(gen, width, ops,
                                                   gen.next() & ((1u << width) - 1));
        auto walked = oracle::exhaustive_trajectory_distribution(bundle.circuit, bundle.input);
        auto dense = oracle::simulate_dense(bundle.circuit, bundle.input,
                                            static_cast<std::uint32_t>(ops));
        auto born = oracle::born_distribution(dense);
        for (std::size_t x = 0; x < walked.size(); ++x)
            worst = std::max(worst, std::fabs(walked[x] - born[x]));
    }
    o.require(worst <= 1e-9, "max |walk - born| = " + fmt(worst));
    o.detail = "max dev " + fmt(worst);
    return o;
}

// ---------------------------------------------------------------------
// 5. Statistical sanity: 20000 seeded trajectories of the 3-qubit all-H
//    circuit stay within total variation 0.02 of uniform.
Outcome criterion_statistical_sanity() {
    Outcome o;
    std::vector<Operation> ops{{0, {0}}, {0, {1}}, {0, {2}}};
    Circuit circuit(3, {{"q", 3, 0}}, {hadamard()}, std::move(ops));
    BasisState input(0, 3);
    auto counts = ensemble::outcome_counts(circuit, input, 20000, 0,
                                           EngineOptions{Kernel::Iterative, 0},
                                           oracle::Exec::Parallel);
    std::vector<double> uniform(8, 0.125);
    const double tv = ensemble::total_variation(counts, uniform);
    o.require(tv <= 0.02, "total variation " + fmt(tv));
    o.detail = "tv " + fmt(tv);
    return o;
}

// ---------------------------------------------------------------------
// 6. Trivial-gate linearity: a 200-operation all-phase circuit costs
//    exactly 201 amplitude computations.
Outcome criterion_trivial_linearity() {
    Outcome o;
    std::vector<Operation> ops(200, Operation{0, {0, 1}});
    Circuit circuit(2, {{"q", 2, 0}}, {controlled_phase(45, "cPiOver4")}, std::move(ops));
    BasisState input(0b11, 2);
    for (Kernel kernel : {Kernel::Recursive, Kernel::Iterative}) {
        PathSumEngine engine(circuit, input, {kernel, 0});
        engine.amplitude(input, 200);
        if (engine.metrics().calc_amp_calls != 201)
            o.fail("kernel made " + std::to_string(engine.metrics().calc_amp_calls) +
                   " calls, expected 201");
    }
    return o;
}

// ---------------------------------------------------------------------
// 7. 4x scaling: cache-off calc_amp_calls for one full trajectory of the
//    2x(n+1) adder over the 2xn adder lies in [3.0, 5.0] for n in {2,3,4}.
Outcome criterion_scaling_ratio() {
    Outcome o;
    std::vector<std::uint64_t> calls;
    for (std::uint32_t n = 2; n <= 5; ++n) {
        auto bundle = adder::gen_draper({n, 1, 1});
        PathSumEngine engine(bundle.circuit, bundle.input, {Kernel::Iterative, 0});
        Rng rng(0);
        bohm::run(engine, rng);
        calls.push_back(engine.metrics().calc_amp_calls);
    }
    std::string ratios;
    for (std::size_t i = 1; i < calls.size(); ++i) {
        const double ratio =
            static_cast<double>(calls[i]) / static_cast<double>(calls[i - 1]);
        if (!ratios.empty())
            ratios += ", ";
        ratios += fmt(ratio);
        if (ratio < 3.0 || ratio > 5.0)
            o.fail("2x" + std::to_string(i + 2) + " / 2x" + std::to_string(i + 1) +
                   " call growth " + fmt(ratio) + " outside [3.0, 5.0]");
    }
    o.detail = "calls " + std::to_string(calls[0]) + "/" + std::to_string(calls[1]) + "/" +
               std::to_string(calls[2]) + "/" + std::to_string(calls[3]) + ", ratios " + ratios;
    return o;
}

// ---------------------------------------------------------------------
// 8. Space bound: the iterative kernel on the 2x5 adder (45 operations)
//    peaks at no more than 45 stack entries of at most 32 bytes each.
Outcome criterion_space_bound() {
    Outcome o;
    static_assert(sizeof(StackFrame) <= 32);
    auto bundle = adder::gen_draper({5, 1, 1});
    const auto t = static_cast<std::uint32_t>(bundle.circuit.op_count());
    o.require(t == 45, "unexpected op count");
    PathSumEngine engine(bundle.circuit, bundle.input, {Kernel::Iterative, 0});
    Rng rng(0);
    auto result = bohm::run(engine, rng);
    engine.calc_amp_iterative(result.final.state, t);
    o.require(engine.metrics().peak_stack_entries <= 45,
              "peak stack " + std::to_string(engine.metrics().peak_stack_entries));
    o.detail = "peak " + std::to_string(engine.metrics().peak_stack_entries) + " frames of " +
               std::to_string(sizeof(StackFrame)) + " B";
    return o;
}

// ---------------------------------------------------------------------
// 9. Gate-count formula: 9 / 30 / 315 operations for n = 2 / 4 / 14.
Outcome criterion_gate_counts() {
    Outcome o;
    o.require(adder::gen_draper({2, 0, 0}).circuit.op_count() == 9, "n=2 count");
    o.require(adder::gen_draper({4, 0, 0}).circuit.op_count() == 30, "n=4 count");
    o.require(adder::gen_draper({14, 0, 0}).circuit.op_count() == 315, "n=14 count");
    return o;
}

// ---------------------------------------------------------------------
// 10. Cache soundness: with capacity 2^8 * 31 the 2x4 adder sweep computes
//     each (state, pc) at most once and reproduces uncached amplitudes;
//     with capacity 64 the hit/miss accounting stays consistent.
Outcome criterion_cache_soundness() {
    Outcome o;
    auto bundle = adder::gen_draper({4, 1, 1});
    const auto t = static_cast<std::uint32_t>(bundle.circuit.op_count());
    const std::uint64_t states = std::uint64_t{1} << bundle.circuit.width();
    const std::size_t full_capacity = static_cast<std::size_t>(states) * (t + 1); // 2^8 * 31

    PathSumEngine uncached(bundle.circuit, bundle.input, {Kernel::Iterative, 0});
    PathSumEngine full(bundle.circuit, bundle.input, {Kernel::Iterative, full_capacity});
    PathSumEngine small(bundle.circuit, bundle.input, {Kernel::Iterative, 64});

    double worst = 0.0;
    for (std::uint32_t pc = 0; pc <= t; ++pc)
        for (std::uint64_t x = 0; x < states; ++x) {
            BasisState s(x, bundle.circuit.width());
            auto plain = uncached.calc_amp_iterative(s, pc);
            worst = std::max(worst, abs_diff(full.calc_amp_iterative(s, pc), plain));
            worst = std::max(worst, abs_diff(small.calc_amp_iterative(s, pc), plain));
        }
    o.require(worst <= 1e-12, "cached amplitudes drifted by " + fmt(worst));
    o.require(full.metrics().calc_amp_calls <= states * (t + 1),
              "full cache recomputed: " + std::to_string(full.metrics().calc_amp_calls));
    o.require(full.metrics().cache_misses == full.metrics().calc_amp_calls,
              "full cache miss accounting");
    o.require(small.metrics().cache_misses == small.metrics().calc_amp_calls,
              "small cache miss accounting");
    o.require(small.metrics().cache_hits > 0, "small cache never hit");
    o.detail = "full-cache computations " + std::to_string(full.metrics().calc_amp_calls) +
               " <= " + std::to_string(states * (t + 1));
    return o;
}

// ---------------------------------------------------------------------
// 11. Hybrid equivalence: on the 2x3 adder every split point reproduces
//     the non-hybrid final amplitudes.
Outcome criterion_hybrid_equivalence() {
    Outcome o;
    auto bundle = adder::gen_draper({3, 1, 1});
    const auto t = static_cast<std::uint32_t>(bundle.circuit.op_count());
    const std::uint64_t states = std::uint64_t{1} << bundle.circuit.width();
    PathSumEngine plain(bundle.circuit, bundle.input, {Kernel::Iterative, 0});

    double worst = 0.0;
    for (std::uint32_t p = 0; p <= t; ++p) {
        PathSumEngine hybrid(bundle.circuit, bundle.input, {Kernel::Iterative, 0});
        auto psi = oracle::simulate_dense(bundle.circuit, bundle.input, p);
        hybrid.set_hybrid_base(p, std::move(psi.amps));
        for (std::uint64_t x = 0; x < states; ++x) {
            BasisState s(x, bundle.circuit.width());
            worst = std::max(worst, abs_diff(hybrid.amplitude(s, t), plain.amplitude(s, t)));
        }
    }
    o.require(worst <= 1e-9, "max hybrid deviation " + fmt(worst));
    o.detail = "max dev " + fmt(worst);
    return o;
}

// ---------------------------------------------------------------------
// 12. Format round-trip and reference-text goldens for the generated
//     4-bit adder bundle.
Outcome criterion_format_goldens() {
    Outcome o;
    auto bundle = adder::gen_draper({4, 1, 1});
    auto texts = qfile::serialize_bundle(bundle);

    auto reparsed = qfile::parse_bundle_texts(texts.qconfig, texts.qinput, texts.qoperators,
                                              texts.qopseq);
    auto texts2 = qfile::serialize_bundle(reparsed);
    o.require(texts2.qconfig == texts.qconfig && texts2.qinput == texts.qinput &&
                  texts2.qoperators == texts.qoperators && texts2.qopseq == texts.qopseq,
              "parse-serialize round trip changed the text");

    o.require(texts.qconfig == test_support::read_file(
                                   test_support::golden_path("reference_qconfig.txt")),
              "qconfig differs from the reference text");

    std::istringstream fragment(
        test_support::read_file(test_support::golden_path("reference_qopseq_fragment.txt")));
    std::vector<std::string> expected;
    for (std::string line; std::getline(fragment, line);)
        expected.push_back(line);
    std::istringstream serialized(texts.qopseq);
    std::vector<std::string> got;
    for (std::string line; std::getline(serialized, line);)
        got.push_back(line);
    o.require(got.size() == 32, "qopseq line count");
    if (o.pass) {
        for (std::size_t i = 0; i < 6; ++i)
            o.require(got[i] == expected[i], "qopseq line " + std::to_string(i) + " differs");
        for (std::size_t i = 0; i < 4; ++i)
            o.require(got[28 + i] == expected[6 + i],
                      "qopseq line " + std::to_string(28 + i) + " differs");
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
};

} // namespace

int main() {
    ScratchDir scratch;
    std::vector<Criterion> criteria = {
        {1, "adder ground truth", 5.0, [&] { return criterion_adder_ground_truth(scratch); }},
        {2, "adder sweep vs oracle", 60.0, criterion_adder_sweep},
        {3, "path-sum/oracle equivalence", 60.0, criterion_pathsum_oracle_equivalence},
        {4, "Born-rule exactness", 120.0, criterion_born_exactness},
        {5, "statistical sanity", 30.0, criterion_statistical_sanity},
        {6, "trivial-gate linearity", 1.0, criterion_trivial_linearity},
        {7, "4x call-count scaling", 120.0, criterion_scaling_ratio},
        {8, "iterative space bound", 10.0, criterion_space_bound},
        {9, "gate-count formula", 1.0, criterion_gate_counts},
        {10, "cache soundness", 30.0, criterion_cache_soundness},
        {11, "hybrid equivalence", 60.0, criterion_hybrid_equivalence},
        {12, "format round-trip + goldens", 1.0, criterion_format_goldens},
    };

    int failures = 0;
    for (auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds > c.budget_seconds)
            outcome.fail("took " + fmt(seconds) + "s, budget " + fmt(c.budget_seconds) + "s");

        std::printf("%s  %2d  %-30s (%.2fs/%gs)%s%s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                    c.name, seconds, c.budget_seconds, outcome.detail.empty() ? "" : "  ",
                    outcome.detail.c_str());
        if (!outcome.pass)
            ++failures;
    }
    if (failures)
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
