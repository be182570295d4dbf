#ifndef SEQCSIM_ADDER_HPP
#define SEQCSIM_ADDER_HPP

#include <cstdint>
#include <string>

#include "seqcsim/circuit.hpp"

namespace seqcsim::adder {

/// In-place quantum adder over two n-bit registers: Fourier transform of a,
/// phase increments by b, inverse transform. 3n(n+1)/2 operations, no
/// ancilla bits.
struct AdderSpec {
    std::uint32_t n = 1;
    std::uint64_t a_value = 0;
    std::uint64_t b_value = 0;
};

/// Conventional name for the controlled-phase family: 180/2^d degrees maps
/// to "cPi", "cPiOver2", "cPiOver4", ...; negative angles (other than -180,
/// which is the same gate as 180) get an "inv_" prefix.
std::string operator_name(double angle_degrees);

/// Builds the circuit with registers a[n] @ 0 and b[n] @ n and the input
/// a = a_value, b = b_value.
CircuitBundle gen_draper(const AdderSpec& spec);

} // namespace seqcsim::adder

#endif
