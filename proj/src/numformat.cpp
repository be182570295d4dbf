#include "seqcsim/numformat.hpp"

#include <cstdio>

namespace seqcsim {

std::string fmt_real(double v, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, v);
    std::string s(buf);
    if (s == "-0")
        s = "0";
    return s;
}

std::string fmt_complex(ComplexAmp a, int sig_digits) {
    return "(" + fmt_real(a.re, sig_digits) + " + i*" + fmt_real(a.im, sig_digits) + ")";
}

std::string fmt_state_arrows(const BasisState& s) {
    return std::to_string(s.width - 1) + "->" + s.to_binary() + "<-0 (" +
           std::to_string(s.width) + " bits)";
}

} // namespace seqcsim
