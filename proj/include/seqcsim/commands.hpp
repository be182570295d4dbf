#ifndef SEQCSIM_COMMANDS_HPP
#define SEQCSIM_COMMANDS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqcsim/pathsum.hpp"

namespace seqcsim::cli {

// Process exit codes: 0 success, 1 usage, 2 input-file parse error,
// 3 numerical degeneracy, 4 capacity guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCapacity = 4;

/// Where the four circuit files come from: a directory holding the
/// canonical names, or four explicit paths.
struct BundleSource {
    std::string dir;
    std::array<std::string, 4> files; // qconfig, qinput, qoperators, qopseq
    bool use_files = false;
};

struct RunConfig {
    BundleSource source;
    std::uint64_t seed = 0;
    Kernel mode = Kernel::Iterative;
    std::size_t cache_capacity = kDefaultCacheCapacity;
    std::optional<std::uint32_t> hybrid_prefix; // mutually exclusive with
    std::optional<std::uint64_t> mem_budget;    // each other
    bool trace = true;
    std::string metrics_path; // empty: no metrics file
};

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_amp(const RunConfig& config, const std::string& state_bits, std::uint32_t pc,
            std::ostream& out, std::ostream& err);

int cmd_oracle(const RunConfig& config, std::optional<std::uint32_t> upto_pc, std::ostream& out,
               std::ostream& err);

int cmd_gen(const std::string& kind, std::uint32_t n, std::uint64_t a, std::uint64_t b,
            const std::string& out_dir, std::ostream& out, std::ostream& err);

int cmd_bench(std::uint32_t min_n, std::uint32_t max_n, const std::string& out_csv,
              std::uint64_t seed, std::ostream& out, std::ostream& err);

/// Full argv-level entry point (everything after the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace seqcsim::cli

#endif
