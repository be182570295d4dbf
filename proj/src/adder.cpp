#include "seqcsim/adder.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace seqcsim::adder {

std::string operator_name(double angle_degrees) {
    double mag = std::fabs(angle_degrees);
    for (int d = 0; d <= 40; ++d) {
        if (mag == 180.0 / static_cast<double>(std::uint64_t{1} << d)) {
            std::string base =
                d == 0 ? "cPi" : "cPiOver" + std::to_string(std::uint64_t{1} << d);
            // -180 and 180 are the same rotation, so cPi has no inverse twin.
            if (angle_degrees < 0 && d != 0)
                return "inv_" + base;
            return base;
        }
    }
    throw std::invalid_argument("no conventional name for a " + std::to_string(angle_degrees) +
                                "-degree phase gate");
}

namespace {

struct OperatorTable {
    std::vector<OperatorMatrix> operators;
    std::map<std::string, std::uint32_t> by_name;

    std::uint32_t hadamard_index() {
        auto it = by_name.find("H");
        if (it != by_name.end())
            return it->second;
        operators.push_back(seqcsim::hadamard());
        by_name["H"] = static_cast<std::uint32_t>(operators.size() - 1);
        return by_name["H"];
    }

    std::uint32_t phase_index(double angle_degrees) {
        std::string name = operator_name(angle_degrees);
        auto it = by_name.find(name);
        if (it != by_name.end())
            return it->second;
        operators.push_back(controlled_phase(angle_degrees, name));
        by_name[name] = static_cast<std::uint32_t>(operators.size() - 1);
        return by_name[name];
    }
};

} // namespace

CircuitBundle gen_draper(const AdderSpec& spec) {
    const std::uint32_t n = spec.n;
    if (n < 1 || n > 32)
        throw std::invalid_argument("adder operand width must be in [1, 32] bits");
    const std::uint64_t reg_max = n == 64 ? 0 : (std::uint64_t{1} << n);
    if (spec.a_value >= reg_max || spec.b_value >= reg_max)
        throw std::invalid_argument("addend value does not fit in " + std::to_string(n) +
                                    " bits");

    auto a_bit = [&](std::uint32_t i) { return i; };
    auto b_bit = [&](std::uint32_t i) { return n + i; };
    auto angle = [](std::uint32_t d) { return 180.0 / static_cast<double>(std::uint64_t{1} << d); };

    OperatorTable table;
    std::vector<Operation> ops;

    // Fourier stage: each a[i] gets a Hadamard, then phase rotations
    // conditioned on the lower a bits; a[i] ends up carrying the value of a
    // as a phase of weight 1/2^(i+1) turns. Remember the rotation exponents
    // so the inverse stage can flip them.
    struct QftOp {
        bool is_h;
        std::uint32_t d;
        std::vector<std::uint32_t> operands;
    };
    std::vector<QftOp> qft;
    for (std::uint32_t ii = n; ii-- > 0;) {
        qft.push_back({true, 0, {a_bit(ii)}});
        for (std::uint32_t ll = ii; ll-- > 0;)
            qft.push_back({false, ii - ll, {a_bit(ii), a_bit(ll)}});
    }
    for (const auto& q : qft)
        ops.push_back({q.is_h ? table.hadamard_index() : table.phase_index(angle(q.d)),
                       q.operands});

    // Addition stage: b[j] contributes 2^j, which on a[i] is a rotation of
    // 180/2^(i-j) degrees; pairs with j > i are whole turns and are omitted.
    for (std::uint32_t ii = n; ii-- > 0;)
        for (std::uint32_t jj = ii + 1; jj-- > 0;)
            ops.push_back({table.phase_index(angle(ii - jj)), {a_bit(ii), b_bit(jj)}});

    // Inverse Fourier stage: the first stage reversed, with each rotation
    // inverted.
    for (std::size_t k = qft.size(); k-- > 0;) {
        const auto& q = qft[k];
        ops.push_back({q.is_h ? table.hadamard_index() : table.phase_index(-angle(q.d)),
                       q.operands});
    }

    std::vector<Register> registers{{"a", n, 0}, {"b", n, n}};
    Circuit circuit(2 * n, std::move(registers), std::move(table.operators), std::move(ops));
    BasisState input(spec.a_value | (spec.b_value << n), 2 * n);
    return CircuitBundle{std::move(circuit), input};
}

} // namespace seqcsim::adder
