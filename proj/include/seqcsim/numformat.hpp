#ifndef SEQCSIM_NUMFORMAT_HPP
#define SEQCSIM_NUMFORMAT_HPP

#include <string>

#include "seqcsim/basis_state.hpp"
#include "seqcsim/complex.hpp"

namespace seqcsim {

/// Shortest decimal form within `sig_digits` significant digits; integral
/// values print without a decimal point and "-0" is normalized to "0".
std::string fmt_real(double v, int sig_digits);

/// "(RE + i*IM)" with signed magnitudes, e.g. "(0 + i*-1)".
std::string fmt_complex(ComplexAmp a, int sig_digits);

/// Trace-style state display: "7->00010001<-0 (8 bits)".
std::string fmt_state_arrows(const BasisState& s);

} // namespace seqcsim

#endif
