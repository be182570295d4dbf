#include "seqcsim/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "seqcsim/bohm.hpp"
#include "seqcsim/rng.hpp"

namespace seqcsim::ensemble {

std::vector<std::uint64_t> final_states(const Circuit& circuit, const BasisState& input,
                                        std::size_t count, std::uint64_t base_seed,
                                        const EngineOptions& options, oracle::Exec exec) {
    std::vector<std::uint64_t> finals(count);

    auto run_one = [&](std::size_t i) {
        PathSumEngine engine(circuit, input, options);
        Rng rng(Rng::stream_seed(base_seed, i));
        finals[i] = bohm::run(engine, rng).final.state.bits;
    };

    if (exec == oracle::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
            run_one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i)
            run_one(i);
    }
    return finals;
}

std::vector<std::uint64_t> outcome_counts(const Circuit& circuit, const BasisState& input,
                                          std::size_t count, std::uint64_t base_seed,
                                          const EngineOptions& options, oracle::Exec exec) {
    if (circuit.width() > 30)
        throw std::invalid_argument("outcome histogram is limited to width <= 30");
    std::vector<std::uint64_t> counts(std::uint64_t{1} << circuit.width(), 0);
    for (std::uint64_t bits : final_states(circuit, input, count, base_seed, options, exec))
        ++counts[bits];
    return counts;
}

double total_variation(const std::vector<std::uint64_t>& counts,
                       const std::vector<double>& reference) {
    if (counts.size() != reference.size())
        throw std::invalid_argument("histogram and reference sizes differ");
    std::uint64_t n = 0;
    for (auto c : counts)
        n += c;
    if (n == 0)
        throw std::invalid_argument("empty histogram");
    double tv = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        tv += std::fabs(static_cast<double>(counts[i]) / static_cast<double>(n) - reference[i]);
    return tv / 2.0;
}

} // namespace seqcsim::ensemble
