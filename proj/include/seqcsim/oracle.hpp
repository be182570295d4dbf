#ifndef SEQCSIM_ORACLE_HPP
#define SEQCSIM_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "seqcsim/circuit.hpp"
#include "seqcsim/complex.hpp"

namespace seqcsim::oracle {

/// Reference simulation keeps the plain serial sweep; the OpenMP sweep runs
/// the same per-block arithmetic across blocks and is bitwise identical.
enum class Exec { Serial, Parallel };

/// Full state vector over all 2^width basis states.
struct DenseState {
    std::uint32_t width = 1;
    std::vector<ComplexAmp> amps;

    double norm_sqr() const;
};

inline constexpr std::uint64_t kDefaultDenseBudgetBytes = std::uint64_t{1} << 30; // 1 GiB

/// Amplitude 1 at the input pattern, 0 elsewhere. Refuses widths whose
/// 2^width * 16-byte vector exceeds the budget.
DenseState init_dense(const BasisState& input,
                      std::uint64_t budget_bytes = kDefaultDenseBudgetBytes);

/// Applies one operation: for every setting of the non-operand bits, the
/// 2^m-subvector indexed by the operand bits (first operand = most
/// significant local-index bit) is multiplied by the operator matrix.
void apply_op(DenseState& dense, const Circuit& circuit, const Operation& op,
              Exec exec = Exec::Serial);

/// Applies ops[0..upto_pc) to the input state.
DenseState simulate_dense(const Circuit& circuit, const BasisState& input, std::uint32_t upto_pc,
                          Exec exec = Exec::Serial,
                          std::uint64_t budget_bytes = kDefaultDenseBudgetBytes);

/// probs[x] = |amps[x]|^2.
std::vector<double> born_distribution(const DenseState& dense);

/// Enumerates every trajectory of the stochastic walk with its exact
/// transition probabilities and accumulates the induced distribution over
/// final basis states. Guarded to width <= 5 and <= 12 operations.
std::vector<double> exhaustive_trajectory_distribution(const Circuit& circuit,
                                                       const BasisState& input);

} // namespace seqcsim::oracle

#endif
