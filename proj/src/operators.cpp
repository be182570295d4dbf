#include "seqcsim/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace seqcsim {

namespace {

bool diagonal_within(const std::vector<ComplexAmp>& e, std::uint64_t dim, double tol) {
    for (std::uint64_t r = 0; r < dim; ++r)
        for (std::uint64_t c = 0; c < dim; ++c)
            if (r != c && e[r * dim + c].abs() > tol)
                return false;
    return true;
}

} // namespace

OperatorMatrix::OperatorMatrix(std::string name, std::uint32_t arity_bits,
                               std::vector<ComplexAmp> entries)
    : name_(std::move(name)), arity_(arity_bits), entries_(std::move(entries)) {
    if (arity_ < 1 || arity_ > 4)
        throw std::invalid_argument("operator arity must be in [1, 4] bits");
    const std::uint64_t d = dim();
    if (entries_.size() != d * d)
        throw std::invalid_argument("operator matrix entry count does not match 2^arity squared");
    trivial_ = diagonal_within(entries_, d, kTrivialTol);
}

bool check_unitary(const OperatorMatrix& m, double tol) {
    const std::uint64_t d = m.dim();
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            ComplexAmp acc{0.0, 0.0};
            for (std::uint64_t k = 0; k < d; ++k)
                acc += m.at(r, k) * m.at(c, k).conj();
            ComplexAmp expect{r == c ? 1.0 : 0.0, 0.0};
            if (abs_diff(acc, expect) > tol)
                return false;
        }
    }
    return true;
}

OperatorMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return OperatorMatrix("H", 1, {{h, 0}, {h, 0}, {h, 0}, {-h, 0}});
}

namespace {

// exp(i*pi*k/180) with exact values at multiples of 90 degrees, so phase
// tables serialize as clean unit entries.
ComplexAmp phase_factor(double k_degrees) {
    double k = std::fmod(k_degrees, 360.0);
    if (k < 0)
        k += 360.0;
    if (k == 0.0)
        return {1.0, 0.0};
    if (k == 90.0)
        return {0.0, 1.0};
    if (k == 180.0)
        return {-1.0, 0.0};
    if (k == 270.0)
        return {0.0, -1.0};
    const double rad = k * M_PI / 180.0;
    return {std::cos(rad), std::sin(rad)};
}

} // namespace

OperatorMatrix controlled_phase(double k_degrees, std::string name) {
    if (name.empty())
        name = "cphase" + std::to_string(k_degrees);
    std::vector<ComplexAmp> e(16, ComplexAmp{0.0, 0.0});
    e[0 * 4 + 0] = {1.0, 0.0};
    e[1 * 4 + 1] = {1.0, 0.0};
    e[2 * 4 + 2] = {1.0, 0.0};
    e[3 * 4 + 3] = phase_factor(k_degrees);
    return OperatorMatrix(std::move(name), 2, std::move(e));
}

} // namespace seqcsim
