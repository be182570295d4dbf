#include "seqcsim/qfile.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "seqcsim/numformat.hpp"

namespace seqcsim::qfile {

namespace {

constexpr int kMatrixDigits = 10;

const char* arity_word(std::uint32_t bits) {
    switch (bits) {
    case 1: return "unary";
    case 2: return "binary";
    case 3: return "ternary";
    case 4: return "quaternary";
    default: throw std::logic_error("operator arity out of range");
    }
}

std::string bit_ref(const Circuit& c, std::uint32_t global_bit) {
    const Register* reg = c.register_of_bit(global_bit);
    if (!reg)
        throw std::logic_error("operand bit " + std::to_string(global_bit) +
                               " is not covered by any register; cannot serialize");
    return reg->name + "[" + std::to_string(global_bit - reg->offset) + "]";
}

} // namespace

BundleTexts serialize_bundle(const CircuitBundle& bundle) {
    const Circuit& c = bundle.circuit;
    BundleTexts out;

    {
        std::ostringstream s;
        s << "qconfig.txt format version 1\n";
        s << "bits: " << c.width() << "\n";
        for (const auto& r : c.registers())
            s << "named bitarray: " << r.name << "[" << r.width << "] @ " << r.offset << "\n";
        out.qconfig = s.str();
    }

    {
        std::ostringstream s;
        s << "qinput.txt format version 1\n";
        std::uint64_t covered = 0;
        for (const auto& r : c.registers()) {
            std::uint64_t mask =
                r.width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r.width) - 1;
            std::uint64_t value = (bundle.input.bits >> r.offset) & mask;
            covered |= mask << r.offset;
            s << r.name << ": " << value << "\n";
        }
        if ((bundle.input.bits & ~covered) != 0)
            throw std::logic_error("input state sets bits outside every register; "
                                   "cannot serialize");
        out.qinput = s.str();
    }

    {
        std::ostringstream s;
        s << "qoperators.txt format version 1\n";
        s << "operators: " << c.operators().size() << "\n";
        for (std::size_t k = 0; k < c.operators().size(); ++k) {
            const auto& m = c.operators()[k];
            s << "operator #: " << k << "\n";
            s << "name: " << m.name() << "\n";
            s << "size: " << m.arity_bits() << " bits\n";
            s << "matrix:\n";
            const std::uint64_t dim = m.dim();
            for (std::uint64_t r = 0; r < dim; ++r) {
                for (std::uint64_t col = 0; col < dim; ++col) {
                    if (col)
                        s << " ";
                    s << fmt_complex(m.at(r, col), kMatrixDigits);
                }
                s << "\n";
            }
        }
        out.qoperators = s.str();
    }

    {
        std::ostringstream s;
        s << "qopseq.txt format version 1\n";
        s << "operations: " << c.op_count() << "\n";
        for (std::size_t k = 0; k < c.op_count(); ++k) {
            const auto& op = c.ops()[k];
            const auto& m = c.op_matrix(op);
            s << "operation #" << k << ": apply " << arity_word(m.arity_bits()) << " operator "
              << m.name() << " to bits ";
            for (std::size_t i = 0; i < op.operands.size(); ++i) {
                if (i)
                    s << ", ";
                s << bit_ref(c, op.operands[i]);
            }
            s << "\n";
        }
        out.qopseq = s.str();
    }

    return out;
}

void write_bundle_dir(const CircuitBundle& bundle, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    BundleTexts texts = serialize_bundle(bundle);
    auto write = [&](const char* name, const std::string& body) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f)
            throw std::runtime_error(std::string("cannot write ") + name + " in " + dir);
        f << body;
    };
    write("qconfig.txt", texts.qconfig);
    write("qinput.txt", texts.qinput);
    write("qoperators.txt", texts.qoperators);
    write("qopseq.txt", texts.qopseq);
}

} // namespace seqcsim::qfile
