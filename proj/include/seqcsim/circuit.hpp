#ifndef SEQCSIM_CIRCUIT_HPP
#define SEQCSIM_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seqcsim/basis_state.hpp"
#include "seqcsim/operators.hpp"

namespace seqcsim {

/// Named bit field within the circuit; bit 0 of the register is the global
/// bit at `offset` (least significant end).
struct Register {
    std::string name;
    std::uint32_t width = 0;
    std::uint32_t offset = 0;
};

/// One gate instance: an operator table index plus the ordered global bit
/// positions it acts on. The first-listed operand is the most significant
/// bit of the operator's local index.
struct Operation {
    std::uint32_t operator_index = 0;
    std::vector<std::uint32_t> operands;
};

class Circuit {
public:
    Circuit(std::uint32_t width, std::vector<Register> registers,
            std::vector<OperatorMatrix> operators, std::vector<Operation> ops);

    std::uint32_t width() const { return width_; }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<OperatorMatrix>& operators() const { return operators_; }
    const std::vector<Operation>& ops() const { return ops_; }
    std::size_t op_count() const { return ops_.size(); }

    const OperatorMatrix& op_matrix(const Operation& op) const {
        return operators_[op.operator_index];
    }
    std::size_t nontrivial_op_count() const;

    /// Register that covers the given global bit, or nullptr.
    const Register* register_of_bit(std::uint32_t global_bit) const;

private:
    std::uint32_t width_;
    std::vector<Register> registers_;
    std::vector<OperatorMatrix> operators_;
    std::vector<Operation> ops_;
};

/// Circuit plus its classical input state and the identities of the four
/// source files it came from (or will be written to).
struct CircuitBundle {
    Circuit circuit;
    BasisState input;
    std::string qconfig_path = "qconfig.txt";
    std::string qinput_path = "qinput.txt";
    std::string qoperators_path = "qoperators.txt";
    std::string qopseq_path = "qopseq.txt";
};

} // namespace seqcsim

#endif
