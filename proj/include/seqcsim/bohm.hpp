#ifndef SEQCSIM_BOHM_HPP
#define SEQCSIM_BOHM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seqcsim/pathsum.hpp"
#include "seqcsim/rng.hpp"

namespace seqcsim::bohm {

/// One classical basis state walked forward through the circuit; its
/// amplitude is carried along so the state's own predecessor sum is never
/// recomputed.
struct Trajectory {
    BasisState state;
    ComplexAmp amp{1.0, 0.0};
    std::uint32_t pc = 0;
};

struct StepRecord {
    std::uint32_t pc; // operation index that was applied
    BasisState state; // state after the step
    ComplexAmp amp;   // its amplitude
};

/// Successors of (state, amp) under operation `pc`, with their post-gate
/// amplitudes and normalized Born probabilities. For a diagonal gate there
/// is a single successor (the state itself) with probability 1 and no
/// amplitude recursion.
struct SuccessorSet {
    std::vector<BasisState> states;
    std::vector<ComplexAmp> amps;
    std::vector<double> probs;
    bool trivial = false;
};

SuccessorSet successor_distribution(PathSumEngine& engine, const BasisState& state,
                                    ComplexAmp amp, std::uint32_t pc);

/// Smallest index whose cumulative probability exceeds the uniform draw u;
/// zero-probability entries are never selected.
std::size_t sample_index(std::span<const double> probs, double u);

/// Advances the trajectory by one operation, consuming one uniform draw for
/// a nontrivial gate and none for a diagonal one.
void step_forward(Trajectory& traj, PathSumEngine& engine, Rng& rng,
                  std::vector<StepRecord>* trace = nullptr);

struct RunResult {
    Trajectory final;
    std::vector<StepRecord> trace;
};

/// Walks the engine's input state through the whole circuit.
RunResult run(PathSumEngine& engine, Rng& rng, bool record_trace = false);

} // namespace seqcsim::bohm

#endif
