#include "seqcsim/bohm.hpp"

#include <stdexcept>

#include "seqcsim/errors.hpp"

namespace seqcsim::bohm {

namespace {
// Below this total probability mass the neighborhood is numerically
// degenerate; unreachable for unit-norm operators.
constexpr double kDegenerateMass = 1e-18;
} // namespace

SuccessorSet successor_distribution(PathSumEngine& engine, const BasisState& state,
                                    ComplexAmp amp, std::uint32_t pc) {
    const Circuit& circuit = engine.circuit();
    if (pc >= circuit.op_count())
        throw std::out_of_range("no operation left to apply");
    const Operation& op = circuit.ops()[pc];
    const OperatorMatrix& m = circuit.op_matrix(op);

    SuccessorSet out;
    if (m.trivial()) {
        const std::uint64_t l = local_index(state, op.operands);
        out.trivial = true;
        out.states = {state};
        out.amps = {m.at(l, l) * amp};
        out.probs = {1.0};
        return out;
    }

    out.states = neighbors(state, op, circuit);
    const std::uint64_t self = local_index(state, op.operands);
    std::vector<ComplexAmp> pre(m.dim());
    for (std::uint64_t l = 0; l < m.dim(); ++l)
        pre[l] = (l == self) ? amp : engine.amplitude(out.states[l], pc);
    out.amps = step_amplitudes(pre, m, &engine.metrics());

    double total = 0.0;
    for (const auto& a : out.amps)
        total += a.norm_sqr();
    if (total < kDegenerateMass)
        throw NumericError("neighborhood probability mass vanished; operator table is corrupt");
    out.probs.resize(out.amps.size());
    for (std::size_t i = 0; i < out.amps.size(); ++i)
        out.probs[i] = out.amps[i].norm_sqr() / total;
    return out;
}

std::size_t sample_index(std::span<const double> probs, double u) {
    if (probs.empty())
        throw std::invalid_argument("cannot sample from an empty distribution");
    double cum = 0.0;
    std::size_t last_nonzero = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0)
            last_nonzero = i;
        cum += probs[i];
        if (cum > u)
            return i;
    }
    // Rounding left cum slightly below u; fall back to the last entry that
    // has any mass.
    if (last_nonzero == probs.size())
        throw std::invalid_argument("distribution has no mass");
    return last_nonzero;
}

void step_forward(Trajectory& traj, PathSumEngine& engine, Rng& rng,
                  std::vector<StepRecord>* trace) {
    SuccessorSet s = successor_distribution(engine, traj.state, traj.amp, traj.pc);
    std::size_t pick = 0;
    if (!s.trivial)
        pick = sample_index(s.probs, rng.uniform01());
    const std::uint32_t applied = traj.pc;
    traj.state = s.states[pick];
    traj.amp = s.amps[pick];
    traj.pc = applied + 1;
    if (trace)
        trace->push_back(StepRecord{applied, traj.state, traj.amp});
}

RunResult run(PathSumEngine& engine, Rng& rng, bool record_trace) {
    if (engine.hybrid())
        throw std::invalid_argument(
            "a hybrid engine cannot walk from pc 0; step the dense prefix first");
    RunResult result;
    result.final = Trajectory{engine.input(), {1.0, 0.0}, 0};
    const std::uint32_t t = static_cast<std::uint32_t>(engine.circuit().op_count());
    while (result.final.pc < t)
        step_forward(result.final, engine, rng, record_trace ? &result.trace : nullptr);
    return result;
}

} // namespace seqcsim::bohm
