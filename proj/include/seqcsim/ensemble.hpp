#ifndef SEQCSIM_ENSEMBLE_HPP
#define SEQCSIM_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "seqcsim/oracle.hpp"
#include "seqcsim/pathsum.hpp"

namespace seqcsim::ensemble {

/// Runs `count` independent trajectories with per-index seeds derived from
/// `base_seed` and returns each final basis state, ordered by index. Every
/// trajectory gets its own engine over the shared immutable circuit, so the
/// parallel sweep returns exactly what the serial one does.
std::vector<std::uint64_t> final_states(const Circuit& circuit, const BasisState& input,
                                        std::size_t count, std::uint64_t base_seed,
                                        const EngineOptions& options,
                                        oracle::Exec exec = oracle::Exec::Serial);

/// Histogram of final_states over all 2^width outcomes (width <= 30).
std::vector<std::uint64_t> outcome_counts(const Circuit& circuit, const BasisState& input,
                                          std::size_t count, std::uint64_t base_seed,
                                          const EngineOptions& options,
                                          oracle::Exec exec = oracle::Exec::Serial);

/// Total variation distance between a sample histogram and a reference
/// distribution over the same outcomes.
double total_variation(const std::vector<std::uint64_t>& counts,
                       const std::vector<double>& reference);

} // namespace seqcsim::ensemble

#endif
