#ifndef SEQCSIM_COMPLEX_HPP
#define SEQCSIM_COMPLEX_HPP

#include <cmath>

namespace seqcsim {

/// Complex amplitude with two 64-bit floating components.
///
/// Hand-rolled instead of std::complex so that every kernel shares one
/// explicit multiply/add formula; the recursive and iterative amplitude
/// kernels are required to produce bitwise-identical sums.
struct ComplexAmp {
    double re = 0.0;
    double im = 0.0;

    friend constexpr ComplexAmp operator+(ComplexAmp a, ComplexAmp b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr ComplexAmp operator-(ComplexAmp a, ComplexAmp b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr ComplexAmp operator*(ComplexAmp a, ComplexAmp b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr ComplexAmp operator*(double s, ComplexAmp a) {
        return {s * a.re, s * a.im};
    }
    constexpr ComplexAmp& operator+=(ComplexAmp o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend constexpr bool operator==(ComplexAmp a, ComplexAmp b) {
        return a.re == b.re && a.im == b.im;
    }

    constexpr ComplexAmp conj() const { return {re, -im}; }
    constexpr double norm_sqr() const { return re * re + im * im; }
    double abs() const { return std::hypot(re, im); }
    bool finite() const { return std::isfinite(re) && std::isfinite(im); }
};

inline double abs_diff(ComplexAmp a, ComplexAmp b) { return (a - b).abs(); }

} // namespace seqcsim

#endif
