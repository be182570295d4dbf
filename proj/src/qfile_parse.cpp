#include "seqcsim/qfile.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace seqcsim::qfile {

namespace {

struct Line {
    int number;
    std::string text;
};

// Content lines only: blank lines and "comment:"-prefixed lines dropped,
// CR stripped.
std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string::npos) {
            std::string trimmed = line.substr(first);
            bool comment = trimmed.rfind("comment:", 0) == 0;
            if (!comment)
                out.push_back({number, trimmed});
        }
        if (nl == std::string::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

// Whitespace-split, with a trailing ':' or ',' peeled off each token.
std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        while (!t.empty() && (t.back() == ':' || t.back() == ','))
            t.pop_back();
        if (!t.empty())
            toks.push_back(t);
    }
    return toks;
}

// Keywords may be truncated to any prefix of length >= 4; shorter keywords
// must appear in full.
bool kw(const std::string& tok, const std::string& full) {
    if (tok == full)
        return true;
    if (tok.size() < 4 || tok.size() >= full.size())
        return false;
    return full.compare(0, tok.size(), tok) == 0;
}

std::uint64_t parse_uint(const std::string& tok, const std::string& file, int line,
                         const std::string& what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(file, line, "expected " + what + ", got '" + tok + "'");
    return std::strtoull(tok.c_str(), nullptr, 10);
}

void check_version_line(const std::vector<Line>& lines, const std::string& file) {
    if (lines.empty())
        throw ParseError(file, 1, "missing format-version line");
    auto toks = tokens_of(lines[0].text);
    if (toks.size() < 4 || !kw(toks[1], "format") || !kw(toks[2], "version"))
        throw ParseError(file, lines[0].number,
                         "first line must be '<name> format version 1'");
    if (toks[3] != "1")
        throw ParseError(file, lines[0].number,
                         "unsupported format version '" + toks[3] + "' (only version 1)");
}

// "name[index]" reference, e.g. "a[3]".
struct BitRef {
    std::string reg;
    std::uint32_t index;
};

BitRef parse_bit_ref(const std::string& tok, const std::string& file, int line) {
    std::size_t lb = tok.find('[');
    std::size_t rb = tok.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb || rb + 1 != tok.size())
        throw ParseError(file, line, "malformed bit reference '" + tok + "'");
    std::string name = tok.substr(0, lb);
    std::string idx = tok.substr(lb + 1, rb - lb - 1);
    return {name, static_cast<std::uint32_t>(parse_uint(idx, file, line, "bit index"))};
}

// Character cursor across content lines, for matrix entries.
class Cursor {
public:
    Cursor(const std::vector<Line>& lines, std::size_t line_idx)
        : lines_(lines), li_(line_idx), ci_(0) {}

    bool skip_ws() {
        while (li_ < lines_.size()) {
            const std::string& s = lines_[li_].text;
            while (ci_ < s.size() && std::isspace(static_cast<unsigned char>(s[ci_])))
                ++ci_;
            if (ci_ < s.size())
                return true;
            ++li_;
            ci_ = 0;
        }
        return false;
    }

    bool at_end() { return !skip_ws(); }
    char peek() { return lines_[li_].text[ci_]; }
    char take() { return lines_[li_].text[ci_++]; }
    int line_number() const {
        return li_ < lines_.size() ? lines_[li_].number : lines_.back().number;
    }

    /// First content line not (partially) consumed by this cursor.
    std::size_t resume_line_index() {
        if (!skip_ws())
            return lines_.size();
        return ci_ == 0 ? li_ : li_ + 1;
    }

    double read_real(const std::string& file) {
        skip_ws();
        const std::string& s = lines_[li_].text;
        const char* start = s.c_str() + ci_;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start)
            throw ParseError(file, line_number(), "expected a numeric literal");
        ci_ += static_cast<std::size_t>(end - start);
        return v;
    }

private:
    const std::vector<Line>& lines_;
    std::size_t li_;
    std::size_t ci_;
};

// "(R +/- i*R)" with optional signs on both components.
ComplexAmp read_complex(Cursor& cur, const std::string& file) {
    if (cur.at_end() || cur.peek() != '(')
        throw ParseError(file, cur.line_number(), "expected '(' starting a complex literal");
    cur.take();
    double re = cur.read_real(file);
    if (cur.at_end())
        throw ParseError(file, cur.line_number(), "unterminated complex literal");
    char sign = cur.take();
    if (sign != '+' && sign != '-')
        throw ParseError(file, cur.line_number(), "expected '+' or '-' in complex literal");
    cur.skip_ws();
    if (cur.at_end() || (cur.peek() != 'i' && cur.peek() != 'I'))
        throw ParseError(file, cur.line_number(), "expected 'i*' in complex literal");
    cur.take();
    if (cur.at_end() || cur.peek() != '*')
        throw ParseError(file, cur.line_number(), "expected '*' after 'i'");
    cur.take();
    double im = cur.read_real(file);
    if (sign == '-')
        im = -im;
    cur.skip_ws();
    if (cur.at_end() || cur.peek() != ')')
        throw ParseError(file, cur.line_number(), "expected ')' closing a complex literal");
    cur.take();
    return {re, im};
}

const std::map<std::string, std::uint32_t>& arity_words() {
    static const std::map<std::string, std::uint32_t> words = {
        {"unary", 1}, {"binary", 2}, {"ternary", 3}, {"quaternary", 4}};
    return words;
}

} // namespace

QConfig parse_qconfig(const std::string& text, const std::string& file) {
    auto lines = content_lines(text);
    check_version_line(lines, file);

    QConfig cfg;
    bool have_width = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto toks = tokens_of(lines[i].text);
        if (toks.empty())
            continue;
        if (kw(toks[0], "bits")) {
            if (toks.size() < 2)
                throw ParseError(file, lines[i].number, "'bits:' needs a count");
            cfg.width = static_cast<std::uint32_t>(
                parse_uint(toks[1], file, lines[i].number, "bit count"));
            if (cfg.width < 1 || cfg.width > 64)
                throw ParseError(file, lines[i].number, "bit count must be in [1, 64]");
            have_width = true;
        } else if (kw(toks[0], "named")) {
            if (toks.size() < 4 || !kw(toks[1], "bitarray") || toks[3] != "@")
                throw ParseError(file, lines[i].number,
                                 "expected 'named bitarray: NAME[W] @ OFFSET'");
            if (!have_width)
                throw ParseError(file, lines[i].number, "register declared before 'bits:'");
            BitRef ref = parse_bit_ref(toks[2], file, lines[i].number);
            Register r{ref.reg, ref.index,
                       static_cast<std::uint32_t>(
                           parse_uint(toks[4], file, lines[i].number, "register offset"))};
            if (r.width == 0)
                throw ParseError(file, lines[i].number, "register width must be positive");
            if (r.offset + r.width > cfg.width)
                throw ParseError(file, lines[i].number,
                                 "register '" + r.name + "' exceeds the declared width");
            for (const auto& prev : cfg.registers) {
                if (prev.name == r.name)
                    throw ParseError(file, lines[i].number,
                                     "duplicate register name '" + r.name + "'");
                if (prev.offset < r.offset + r.width && r.offset < prev.offset + prev.width)
                    throw ParseError(file, lines[i].number,
                                     "register '" + r.name + "' overlaps '" + prev.name + "'");
            }
            cfg.registers.push_back(std::move(r));
        } else {
            throw ParseError(file, lines[i].number,
                             "unrecognized directive '" + toks[0] + "'");
        }
    }
    if (!have_width)
        throw ParseError(file, lines.empty() ? 1 : lines.back().number, "missing 'bits:' line");
    return cfg;
}

BasisState parse_qinput(const std::string& text, std::uint32_t width,
                        const std::vector<Register>& registers, const std::string& file) {
    auto lines = content_lines(text);
    check_version_line(lines, file);

    std::uint64_t bits = 0;
    std::vector<std::string> assigned;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto toks = tokens_of(lines[i].text);
        if (toks.empty())
            continue;
        if (toks.size() != 2)
            throw ParseError(file, lines[i].number, "expected 'NAME: DECIMALVALUE'");
        const Register* reg = nullptr;
        for (const auto& r : registers)
            if (r.name == toks[0])
                reg = &r;
        if (!reg)
            throw ParseError(file, lines[i].number, "unknown register '" + toks[0] + "'");
        for (const auto& a : assigned)
            if (a == reg->name)
                throw ParseError(file, lines[i].number,
                                 "register '" + reg->name + "' assigned twice");
        std::uint64_t value = parse_uint(toks[1], file, lines[i].number, "register value");
        if (reg->width < 64 && value >= (std::uint64_t{1} << reg->width))
            throw ParseError(file, lines[i].number,
                             "value " + toks[1] + " does not fit register '" + reg->name +
                                 "' of " + std::to_string(reg->width) + " bits");
        bits |= value << reg->offset;
        assigned.push_back(reg->name);
    }
    return BasisState(bits, width);
}

std::vector<OperatorMatrix> parse_qoperators(const std::string& text, const std::string& file) {
    auto lines = content_lines(text);
    check_version_line(lines, file);

    std::size_t li = 1;
    if (li >= lines.size())
        throw ParseError(file, lines[0].number, "missing 'operators:' line");
    auto head = tokens_of(lines[li].text);
    if (head.size() < 2 || !kw(head[0], "operators"))
        throw ParseError(file, lines[li].number, "expected 'operators: N'");
    std::size_t count = parse_uint(head[1], file, lines[li].number, "operator count");
    ++li;

    std::vector<OperatorMatrix> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        auto need_line = [&](const char* what) -> std::vector<std::string> {
            if (li >= lines.size())
                throw ParseError(file, lines.back().number,
                                 std::string("operator count mismatch: expected ") + what +
                                     " for operator " + std::to_string(k));
            return tokens_of(lines[li].text);
        };

        auto toks = need_line("'operator #:'");
        if (toks.empty() || !kw(toks[0], "operator"))
            throw ParseError(file, lines[li].number, "expected 'operator #: K'");
        int block_line = lines[li].number;
        ++li;

        toks = need_line("'name:'");
        if (toks.size() < 2 || !kw(toks[0], "name"))
            throw ParseError(file, lines[li].number, "expected 'name: NAME'");
        std::string name = toks[1];
        for (const auto& prev : out)
            if (prev.name() == name)
                throw ParseError(file, lines[li].number, "duplicate operator name '" + name + "'");
        ++li;

        toks = need_line("'size:'");
        if (toks.size() < 2 || !kw(toks[0], "size"))
            throw ParseError(file, lines[li].number, "expected 'size: M bits'");
        std::uint64_t arity = parse_uint(toks[1], file, lines[li].number, "operator size");
        if (arity < 1 || arity > 4)
            throw ParseError(file, lines[li].number,
                             "operator '" + name + "' size must be 1..4 bits");
        ++li;

        toks = need_line("'matrix:'");
        if (toks.empty() || !kw(toks[0], "matrix"))
            throw ParseError(file, lines[li].number, "expected 'matrix:'");
        ++li;

        const std::uint64_t dim = std::uint64_t{1} << arity;
        Cursor cur(lines, li);
        std::vector<ComplexAmp> entries;
        entries.reserve(dim * dim);
        for (std::uint64_t e = 0; e < dim * dim; ++e)
            entries.push_back(read_complex(cur, file));
        // A stray entry right after the declared matrix means the dimension
        // was wrong.
        if (!cur.at_end() && cur.peek() == '(')
            throw ParseError(file, cur.line_number(),
                             "operator '" + name + "' has more matrix entries than its " +
                                 std::to_string(arity) + "-bit size allows");
        li = cur.resume_line_index();

        OperatorMatrix mat(name, static_cast<std::uint32_t>(arity), std::move(entries));
        if (!check_unitary(mat, kUnitaryTol))
            throw ParseError(file, block_line,
                             "operator '" + name + "' is not unitary within 1e-9");
        out.push_back(std::move(mat));
    }
    return out;
}

std::vector<Operation> parse_qopseq(const std::string& text,
                                    const std::vector<Register>& registers,
                                    const std::vector<OperatorMatrix>& operators,
                                    const std::string& file,
                                    std::vector<std::string>* warnings) {
    auto lines = content_lines(text);
    check_version_line(lines, file);

    std::size_t li = 1;
    if (li >= lines.size())
        throw ParseError(file, lines[0].number, "missing 'operations:' line");
    auto head = tokens_of(lines[li].text);
    if (head.size() < 2 || !kw(head[0], "operations"))
        throw ParseError(file, lines[li].number, "expected 'operations: N'");
    std::size_t count = parse_uint(head[1], file, lines[li].number, "operation count");
    ++li;

    std::vector<Operation> ops;
    ops.reserve(count);
    for (std::size_t k = 0; k < count; ++k, ++li) {
        if (li >= lines.size())
            throw ParseError(file, lines.back().number,
                             "operation count mismatch: got " + std::to_string(k) + " of " +
                                 std::to_string(count));
        int ln = lines[li].number;
        auto toks = tokens_of(lines[li].text);
        // operation #K: apply ARITY operator NAME to bits R[
        if (toks.size() < 8 || !kw(toks[0], "operation"))
            throw ParseError(file, ln, "expected 'operation #K: apply ...'");
        if (toks[1].size() < 2 || toks[1][0] != '#')
            throw ParseError(file, ln, "expected '#K' after 'operation'");
        std::uint64_t index = parse_uint(toks[1].substr(1), file, ln, "operation index");
        if (index != k && warnings)
            warnings->push_back(file + ":" + std::to_string(ln) + ": operation index #" +
                                std::to_string(index) + " is out of sequence (expected #" +
                                std::to_string(k) + ")");
        if (!kw(toks[2], "apply"))
            throw ParseError(file, ln, "expected 'apply'");

        std::uint32_t word_arity = 0;
        for (const auto& [word, n] : arity_words())
            if (kw(toks[3], word))
                word_arity = n;
        if (word_arity == 0)
            throw ParseError(file, ln, "unknown arity word '" + toks[3] + "'");

        if (!kw(toks[4], "operator"))
            throw ParseError(file, ln, "expected 'operator'");
        const std::string& name = toks[5];
        std::uint32_t op_index = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < operators.size(); ++i)
            if (operators[i].name() == name) {
                op_index = i;
                found = true;
            }
        if (!found)
            throw ParseError(file, ln, "unknown operator '" + name + "'");
        if (operators[op_index].arity_bits() != word_arity)
            throw ParseError(file, ln, "'" + toks[3] + "' does not match operator '" + name +
                                           "' of " +
                                           std::to_string(operators[op_index].arity_bits()) +
                                           " bits");

        if (toks[6] != "to" || !kw(toks[7], "bits"))
            throw ParseError(file, ln, "expected 'to bits'");

        Operation op;
        op.operator_index = op_index;
        for (std::size_t t = 8; t < toks.size(); ++t) {
            BitRef ref = parse_bit_ref(toks[t], file, ln);
            const Register* reg = nullptr;
            for (const auto& r : registers)
                if (r.name == ref.reg)
                    reg = &r;
            if (!reg)
                throw ParseError(file, ln, "unknown register '" + ref.reg + "'");
            if (ref.index >= reg->width)
                throw ParseError(file, ln, "bit " + std::to_string(ref.index) +
                                               " is outside register '" + reg->name + "'");
            op.operands.push_back(reg->offset + ref.index);
        }
        if (op.operands.size() != word_arity)
            throw ParseError(file, ln, "expected " + std::to_string(word_arity) +
                                           " operand bits, got " +
                                           std::to_string(op.operands.size()));
        ops.push_back(std::move(op));
    }
    return ops;
}

CircuitBundle parse_bundle_texts(const std::string& qconfig_text, const std::string& qinput_text,
                                 const std::string& qoperators_text,
                                 const std::string& qopseq_text,
                                 std::vector<std::string>* warnings) {
    QConfig cfg = parse_qconfig(qconfig_text);
    BasisState input = parse_qinput(qinput_text, cfg.width, cfg.registers);
    auto operators = parse_qoperators(qoperators_text);
    auto ops = parse_qopseq(qopseq_text, cfg.registers, operators, "qopseq.txt", warnings);
    Circuit circuit(cfg.width, std::move(cfg.registers), std::move(operators), std::move(ops));
    return CircuitBundle{std::move(circuit), input};
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

CircuitBundle load_bundle_files(const std::string& qconfig_path, const std::string& qinput_path,
                                const std::string& qoperators_path,
                                const std::string& qopseq_path,
                                std::vector<std::string>* warnings) {
    QConfig cfg = parse_qconfig(slurp(qconfig_path), qconfig_path);
    BasisState input = parse_qinput(slurp(qinput_path), cfg.width, cfg.registers, qinput_path);
    auto operators = parse_qoperators(slurp(qoperators_path), qoperators_path);
    auto ops = parse_qopseq(slurp(qopseq_path), cfg.registers, operators, qopseq_path, warnings);
    Circuit circuit(cfg.width, std::move(cfg.registers), std::move(operators), std::move(ops));
    CircuitBundle bundle{std::move(circuit), input};
    bundle.qconfig_path = qconfig_path;
    bundle.qinput_path = qinput_path;
    bundle.qoperators_path = qoperators_path;
    bundle.qopseq_path = qopseq_path;
    return bundle;
}

CircuitBundle load_bundle_dir(const std::string& dir, std::vector<std::string>* warnings) {
    namespace fs = std::filesystem;
    fs::path base(dir);
    return load_bundle_files((base / "qconfig.txt").string(), (base / "qinput.txt").string(),
                             (base / "qoperators.txt").string(), (base / "qopseq.txt").string(),
                             warnings);
}

} // namespace seqcsim::qfile
