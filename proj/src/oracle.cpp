#include "seqcsim/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "seqcsim/bohm.hpp"
#include "seqcsim/errors.hpp"
#include "seqcsim/pathsum.hpp"

namespace seqcsim::oracle {

double DenseState::norm_sqr() const {
    double n = 0.0;
    for (const auto& a : amps)
        n += a.norm_sqr();
    return n;
}

DenseState init_dense(const BasisState& input, std::uint64_t budget_bytes) {
    const std::uint64_t bytes_needed =
        input.width >= 60 ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << input.width) * sizeof(ComplexAmp);
    if (bytes_needed > budget_bytes)
        throw CapacityError("dense state of width " + std::to_string(input.width) + " needs 2^" +
                            std::to_string(input.width) + " * 16 = " +
                            std::to_string(bytes_needed) + " bytes, over the " +
                            std::to_string(budget_bytes) + "-byte budget");
    DenseState d;
    d.width = input.width;
    d.amps.assign(std::uint64_t{1} << input.width, ComplexAmp{0.0, 0.0});
    d.amps[input.bits] = {1.0, 0.0};
    return d;
}

namespace {

// Spreads `block` across the non-operand bit positions: inserts a zero bit
// at each sorted operand position.
inline std::uint64_t expand_block(std::uint64_t block, std::span<const std::uint32_t> sorted) {
    for (std::uint32_t p : sorted) {
        const std::uint64_t low = block & ((std::uint64_t{1} << p) - 1);
        block = ((block >> p) << (p + 1)) | low;
    }
    return block;
}

struct SubvectorPlan {
    std::vector<std::uint32_t> sorted_operands;
    std::vector<std::uint64_t> local_masks; // operand-bit pattern per local index
    std::uint64_t dim;
    std::uint64_t blocks;
};

SubvectorPlan plan_for(const DenseState& dense, const Operation& op, const OperatorMatrix& m) {
    SubvectorPlan plan;
    plan.dim = m.dim();
    plan.sorted_operands.assign(op.operands.begin(), op.operands.end());
    std::sort(plan.sorted_operands.begin(), plan.sorted_operands.end());
    plan.local_masks.resize(plan.dim);
    for (std::uint64_t l = 0; l < plan.dim; ++l)
        plan.local_masks[l] = with_local_index_bits(0, op.operands, l);
    plan.blocks = std::uint64_t{1} << (dense.width - m.arity_bits());
    return plan;
}

inline void update_block(DenseState& dense, const SubvectorPlan& plan, const OperatorMatrix& m,
                         std::uint64_t block) {
    const std::uint64_t base = expand_block(block, plan.sorted_operands);
    ComplexAmp gathered[16];
    for (std::uint64_t l = 0; l < plan.dim; ++l)
        gathered[l] = dense.amps[base | plan.local_masks[l]];
    for (std::uint64_t r = 0; r < plan.dim; ++r) {
        ComplexAmp acc{0.0, 0.0};
        for (std::uint64_t c = 0; c < plan.dim; ++c)
            acc += m.at(r, c) * gathered[c];
        dense.amps[base | plan.local_masks[r]] = acc;
    }
}

} // namespace

void apply_op(DenseState& dense, const Circuit& circuit, const Operation& op, Exec exec) {
    const OperatorMatrix& m = circuit.op_matrix(op);
    for (auto p : op.operands)
        if (p >= dense.width)
            throw std::out_of_range("operand bit exceeds dense state width");
    const SubvectorPlan plan = plan_for(dense, op, m);

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t block = 0; block < static_cast<std::int64_t>(plan.blocks); ++block)
            update_block(dense, plan, m, static_cast<std::uint64_t>(block));
    } else {
        for (std::uint64_t block = 0; block < plan.blocks; ++block)
            update_block(dense, plan, m, block);
    }
}

DenseState simulate_dense(const Circuit& circuit, const BasisState& input, std::uint32_t upto_pc,
                          Exec exec, std::uint64_t budget_bytes) {
    if (upto_pc > circuit.op_count())
        throw std::out_of_range("prefix length exceeds the operation count");
    DenseState d = init_dense(input, budget_bytes);
    for (std::uint32_t k = 0; k < upto_pc; ++k) {
        apply_op(d, circuit, circuit.ops()[k], exec);
        const double n = d.norm_sqr();
        if (n < 1.0 - 1e-9 || n > 1.0 + 1e-9)
            throw NumericError("state norm drifted to " + std::to_string(n) + " after operation " +
                               std::to_string(k));
    }
    return d;
}

std::vector<double> born_distribution(const DenseState& dense) {
    std::vector<double> probs(dense.amps.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        probs[i] = dense.amps[i].norm_sqr();
    return probs;
}

namespace {

void enumerate_paths(PathSumEngine& engine, const BasisState& state, ComplexAmp amp,
                     std::uint32_t pc, double path_prob, std::vector<double>& dist) {
    if (pc == engine.circuit().op_count()) {
        dist[state.bits] += path_prob;
        return;
    }
    bohm::SuccessorSet s = bohm::successor_distribution(engine, state, amp, pc);
    for (std::size_t i = 0; i < s.states.size(); ++i) {
        if (s.probs[i] == 0.0)
            continue;
        enumerate_paths(engine, s.states[i], s.amps[i], pc + 1, path_prob * s.probs[i], dist);
    }
}

} // namespace

std::vector<double> exhaustive_trajectory_distribution(const Circuit& circuit,
                                                       const BasisState& input) {
    if (input.width > 5 || circuit.op_count() > 12)
        throw CapacityError("trajectory enumeration is guarded to width <= 5 and <= 12 "
                            "operations");
    PathSumEngine engine(circuit, input,
                         EngineOptions{Kernel::Iterative, std::size_t{1} << 16});
    std::vector<double> dist(std::uint64_t{1} << input.width, 0.0);
    enumerate_paths(engine, input, {1.0, 0.0}, 0, 1.0, dist);
    return dist;
}

} // namespace seqcsim::oracle
