// Compares the serial reference sweeps against their OpenMP twins: the
// dense subvector update and the trajectory ensemble. Both parallel paths
// are required to reproduce the serial results exactly; this target reports
// the throughput difference.

#include <chrono>
#include <cstdint>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqcsim/adder.hpp"
#include "seqcsim/ensemble.hpp"
#include "seqcsim/oracle.hpp"

using namespace seqcsim;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void bench_dense(std::uint32_t n) {
    CircuitBundle bundle = adder::gen_draper({n, 1, 1});
    const auto pc = static_cast<std::uint32_t>(bundle.circuit.op_count());

    auto t0 = std::chrono::steady_clock::now();
    auto serial = oracle::simulate_dense(bundle.circuit, bundle.input, pc, oracle::Exec::Serial);
    double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel =
        oracle::simulate_dense(bundle.circuit, bundle.input, pc, oracle::Exec::Parallel);
    double parallel_ms = ms_since(t0);

    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < serial.amps.size(); ++i)
        if (!(serial.amps[i] == parallel.amps[i]))
            ++mismatches;

    std::cout << "dense sweep      width=" << 2 * n << " ops=" << pc << "  serial " << serial_ms
              << " ms  parallel " << parallel_ms << " ms  speedup "
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "  mismatches "
              << mismatches << "\n";
}

void bench_ensemble(std::uint32_t n, std::size_t count) {
    CircuitBundle bundle = adder::gen_draper({n, 1, 1});
    EngineOptions options{Kernel::Iterative, kDefaultCacheCapacity};

    auto t0 = std::chrono::steady_clock::now();
    auto serial = ensemble::final_states(bundle.circuit, bundle.input, count, 7, options,
                                         oracle::Exec::Serial);
    double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = ensemble::final_states(bundle.circuit, bundle.input, count, 7, options,
                                           oracle::Exec::Parallel);
    double parallel_ms = ms_since(t0);

    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < serial.size(); ++i)
        if (serial[i] != parallel[i])
            ++mismatches;

    std::cout << "trajectory batch n=" << n << " count=" << count << "  serial " << serial_ms
              << " ms  parallel " << parallel_ms << " ms  speedup "
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "  mismatches "
              << mismatches << "\n";
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; parallel paths run serially\n";
#endif
    bench_dense(8);
    bench_dense(10);
    bench_ensemble(4, 4000);
    bench_ensemble(5, 2000);
    return 0;
}
