#include "seqcsim/circuit.hpp"

#include <set>
#include <stdexcept>

namespace seqcsim {

Circuit::Circuit(std::uint32_t width, std::vector<Register> registers,
                 std::vector<OperatorMatrix> operators, std::vector<Operation> ops)
    : width_(width), registers_(std::move(registers)), operators_(std::move(operators)),
      ops_(std::move(ops)) {
    if (width_ < 1 || width_ > 64)
        throw std::invalid_argument("circuit width must be in [1, 64]");
    for (const auto& r : registers_) {
        if (r.width == 0 || r.offset + r.width > width_)
            throw std::invalid_argument("register '" + r.name + "' exceeds circuit width");
    }
    for (std::size_t i = 0; i + 1 < registers_.size(); ++i)
        for (std::size_t j = i + 1; j < registers_.size(); ++j) {
            const auto& a = registers_[i];
            const auto& b = registers_[j];
            if (a.offset < b.offset + b.width && b.offset < a.offset + a.width)
                throw std::invalid_argument("registers '" + a.name + "' and '" + b.name +
                                            "' overlap");
        }
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        const auto& op = ops_[k];
        if (op.operator_index >= operators_.size())
            throw std::invalid_argument("operation #" + std::to_string(k) +
                                        " references an unknown operator");
        const auto& mat = operators_[op.operator_index];
        if (op.operands.size() != mat.arity_bits())
            throw std::invalid_argument("operation #" + std::to_string(k) +
                                        " operand count does not match operator arity");
        std::set<std::uint32_t> seen;
        for (auto b : op.operands) {
            if (b >= width_)
                throw std::invalid_argument("operation #" + std::to_string(k) +
                                            " operand bit out of range");
            if (!seen.insert(b).second)
                throw std::invalid_argument("operation #" + std::to_string(k) +
                                            " repeats an operand bit");
        }
    }
}

std::size_t Circuit::nontrivial_op_count() const {
    std::size_t n = 0;
    for (const auto& op : ops_)
        if (!op_matrix(op).trivial())
            ++n;
    return n;
}

const Register* Circuit::register_of_bit(std::uint32_t global_bit) const {
    for (const auto& r : registers_)
        if (global_bit >= r.offset && global_bit < r.offset + r.width)
            return &r;
    return nullptr;
}

} // namespace seqcsim
