#ifndef SEQCSIM_OPERATORS_HPP
#define SEQCSIM_OPERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seqcsim/complex.hpp"

namespace seqcsim {

// A gate is "trivial" when its matrix is diagonal in the computational
// basis; every basis state then has exactly one predecessor.
inline constexpr double kTrivialTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-9;

/// Named unitary of dimension 2^arity_bits, row-major storage.
class OperatorMatrix {
public:
    OperatorMatrix(std::string name, std::uint32_t arity_bits, std::vector<ComplexAmp> entries);

    const std::string& name() const { return name_; }
    std::uint32_t arity_bits() const { return arity_; }
    std::uint64_t dim() const { return std::uint64_t{1} << arity_; }
    bool trivial() const { return trivial_; }

    const ComplexAmp& at(std::uint64_t row, std::uint64_t col) const {
        return entries_[row * dim() + col];
    }
    const std::vector<ComplexAmp>& entries() const { return entries_; }

private:
    std::string name_;
    std::uint32_t arity_;
    std::vector<ComplexAmp> entries_;
    bool trivial_;
};

/// max-norm of M*M^dagger - I is at most tol.
bool check_unitary(const OperatorMatrix& m, double tol);

/// 2x2 Hadamard (1/sqrt 2) [[1,1],[1,-1]], named "H".
OperatorMatrix hadamard();

/// 4x4 controlled-phase diag(1,1,1,exp(i*pi*k/180)) for a rotation of k
/// degrees. The first tensor factor is the control, so the first-listed
/// operand maps to the most significant local-index bit. Multiples of 90
/// degrees produce exact unit entries.
OperatorMatrix controlled_phase(double k_degrees, std::string name = {});

} // namespace seqcsim

#endif
