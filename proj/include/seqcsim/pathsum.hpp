#ifndef SEQCSIM_PATHSUM_HPP
#define SEQCSIM_PATHSUM_HPP

#include <cstdint>
#include <list>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "seqcsim/circuit.hpp"
#include "seqcsim/complex.hpp"

namespace seqcsim {

/// Deterministic work counters, the portable stand-in for wall-clock and
/// kilobyte measurements.
///
///   calc_amp_calls     amplitude computations performed (cache hits excluded)
///   max_depth          deepest recursion / stack level reached
///   matrix_mults       matrix-row times vector products (a diagonal
///                      fast-path multiply counts as one)
///   cache_hits/misses  amplitude cache outcomes (zero with the cache off)
///   peak_stack_entries high-water mark of the iterative kernel's stack
struct Metrics {
    std::uint64_t calc_amp_calls = 0;
    std::uint64_t max_depth = 0;
    std::uint64_t matrix_mults = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::uint64_t peak_stack_entries = 0;
};

/// (pc, basis state) -> amplitude map with strict least-recently-used
/// eviction. Capacity is an entry count; 0 disables the cache.
class AmpCache {
public:
    explicit AmpCache(std::size_t capacity = 0) : capacity_(capacity) {}

    bool enabled() const { return capacity_ > 0; }
    std::size_t size() const { return order_.size(); }
    std::size_t capacity() const { return capacity_; }

    const ComplexAmp* find(std::uint32_t pc, std::uint64_t bits);
    void store(std::uint32_t pc, std::uint64_t bits, ComplexAmp value);
    void clear();

private:
    using Key = std::pair<std::uint32_t, std::uint64_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.second * 0x9e3779b97f4a7c15ULL;
            h ^= (h >> 29) ^ (static_cast<std::uint64_t>(k.first) * 0xbf58476d1ce4e5b9ULL);
            return static_cast<std::size_t>(h);
        }
    };
    using Entry = std::pair<Key, ComplexAmp>;

    std::size_t capacity_;
    std::list<Entry> order_; // front = most recently used
    std::unordered_map<Key, std::list<Entry>::iterator, KeyHash> map_;
};

enum class Kernel { Recursive, Iterative };

struct EngineOptions {
    Kernel kernel = Kernel::Iterative;
    std::size_t cache_capacity = 0;
};

inline constexpr std::size_t kDefaultCacheCapacity = std::size_t{1} << 20;

/// The recursive kernel piggybacks on the host stack; deeper circuits must
/// use the iterative kernel.
inline constexpr std::size_t kRecursiveOpLimit = 10000;

/// Per-level record of the iterative kernel: the amplitude accumulated so
/// far at this level of the predecessor tree plus the branch bookkeeping.
struct StackFrame {
    ComplexAmp acc;
    std::uint8_t self_index;  // local index of this level's own state
    std::uint8_t next_pred;   // next predecessor branch to descend into
    bool trivial;             // diagonal fast path, single predecessor
};
static_assert(sizeof(StackFrame) <= 32);

/// Ordinary matrix-vector product new = M * old; counted in `metrics` when
/// one is supplied.
std::vector<ComplexAmp> step_amplitudes(std::span<const ComplexAmp> amps, const OperatorMatrix& m,
                                        Metrics* metrics = nullptr);

/// The 2^m neighbor states of `state` under `op`, in local-index order;
/// `state` itself appears at position local_index(state, operands).
std::vector<BasisState> neighbors(const BasisState& state, const Operation& op,
                                  const Circuit& circuit);

/// Computes basis-state amplitudes after any prefix of a circuit by summing
/// over predecessor states, using memory linear in the circuit length
/// instead of exponential in its width.
///
/// calc_amp(state, pc) is the amplitude of `state` after the first `pc`
/// operations. The base case is the classical input state at pc = 0, or a
/// dense snapshot at pc = base_pc in hybrid mode. Predecessor sums run in
/// ascending local-index order so the recursive and iterative kernels agree
/// bitwise.
class PathSumEngine {
public:
    PathSumEngine(const Circuit& circuit, BasisState input, EngineOptions options = {});

    const Circuit& circuit() const { return *circuit_; }
    const BasisState& input() const { return input_; }
    const EngineOptions& options() const { return options_; }
    const Metrics& metrics() const { return metrics_; }
    Metrics& metrics() { return metrics_; }
    void reset_metrics() { metrics_ = Metrics{}; }
    void clear_cache() { cache_.clear(); }
    const AmpCache& cache() const { return cache_; }

    /// Installs a dense amplitude snapshot of the state after `base_pc`
    /// operations; calc_amp then bottoms out there instead of at pc = 0.
    void set_hybrid_base(std::uint32_t base_pc, std::vector<ComplexAmp> snapshot);
    std::uint32_t base_pc() const { return base_pc_; }
    bool hybrid() const { return !base_snapshot_.empty(); }

    /// Dispatches to the configured kernel.
    ComplexAmp amplitude(const BasisState& state, std::uint32_t pc);

    ComplexAmp calc_amp(const BasisState& state, std::uint32_t pc);
    ComplexAmp calc_amp_iterative(const BasisState& state, std::uint32_t pc);

private:
    ComplexAmp base_amplitude(std::uint64_t bits) const;
    ComplexAmp recurse(std::uint64_t bits, std::uint32_t pc, std::uint64_t depth);
    void check_pc(std::uint32_t pc) const;

    const Circuit* circuit_;
    BasisState input_;
    EngineOptions options_;
    AmpCache cache_;
    Metrics metrics_;
    std::uint32_t base_pc_ = 0;
    std::vector<ComplexAmp> base_snapshot_;
    std::vector<StackFrame> stack_;
};

} // namespace seqcsim

#endif
