#include "doctest.h"

#include <cctype>

#include "seqcsim/adder.hpp"
#include "seqcsim/qfile.hpp"
#include "test_support.hpp"

using namespace seqcsim;
using test_support::golden_path;
using test_support::read_file;

TEST_CASE("qconfig parses the reference example") {
    auto cfg = qfile::parse_qconfig(read_file(golden_path("reference_qconfig.txt")));
    CHECK(cfg.width == 8);
    REQUIRE(cfg.registers.size() == 2);
    CHECK(cfg.registers[0].name == "a");
    CHECK(cfg.registers[0].width == 4);
    CHECK(cfg.registers[0].offset == 0);
    CHECK(cfg.registers[1].name == "b");
    CHECK(cfg.registers[1].width == 4);
    CHECK(cfg.registers[1].offset == 4);
}

TEST_CASE("qconfig edge cases") {
    auto cfg = qfile::parse_qconfig("qconfig.txt format version 1\nbits: 1\n");
    CHECK(cfg.width == 1);
    CHECK(cfg.registers.empty());

    CHECK_THROWS_AS(qfile::parse_qconfig(""), ParseError);
    CHECK_THROWS_AS(qfile::parse_qconfig("qconfig.txt format version 2\nbits: 1\n"), ParseError);
    CHECK_THROWS_AS(qfile::parse_qconfig("bits: 4\n"), ParseError);

    const std::string dup = "qconfig.txt format version 1\nbits: 8\n"
                            "named bitarray: a[4] @ 0\nnamed bitarray: a[4] @ 0\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qconfig(dup), doctest::Contains("duplicate"), ParseError);

    const std::string overlap = "qconfig.txt format version 1\nbits: 8\n"
                                "named bitarray: a[4] @ 0\nnamed bitarray: b[4] @ 3\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qconfig(overlap), doctest::Contains("overlap"), ParseError);

    const std::string wide = "qconfig.txt format version 1\nbits: 8\n"
                             "named bitarray: a[9] @ 0\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qconfig(wide), doctest::Contains("exceeds"), ParseError);

    // Parse errors carry file and line.
    try {
        qfile::parse_qconfig(dup, "somewhere/qconfig.txt");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.file() == "somewhere/qconfig.txt");
        CHECK(e.line() == 4);
    }
}

TEST_CASE("qinput assigns register values") {
    auto cfg = qfile::parse_qconfig(read_file(golden_path("reference_qconfig.txt")));
    auto input = qfile::parse_qinput(read_file(golden_path("reference_qinput.txt")), cfg.width,
                                     cfg.registers);
    CHECK(input.to_binary() == "00010001");

    auto zero = qfile::parse_qinput("qinput.txt format version 1\n", cfg.width, cfg.registers);
    CHECK(zero.bits == 0);

    CHECK_THROWS_WITH_AS(qfile::parse_qinput("qinput.txt format version 1\na: 16\n", cfg.width,
                                             cfg.registers),
                         doctest::Contains("fit"), ParseError);
    CHECK_THROWS_WITH_AS(qfile::parse_qinput("qinput.txt format version 1\nc: 1\n", cfg.width,
                                             cfg.registers),
                         doctest::Contains("unknown register"), ParseError);
    CHECK_THROWS_WITH_AS(qfile::parse_qinput("qinput.txt format version 1\na: 1\na: 2\n",
                                             cfg.width, cfg.registers),
                         doctest::Contains("twice"), ParseError);
}

TEST_CASE("qoperators parses the reference example") {
    auto operators = qfile::parse_qoperators(read_file(golden_path("reference_qoperators.txt")));
    REQUIRE(operators.size() == 8);

    // The reference text carries ten significant digits.
    auto h = hadamard();
    CHECK(operators[0].name() == "H");
    for (std::uint64_t r = 0; r < 2; ++r)
        for (std::uint64_t c = 0; c < 2; ++c)
            CHECK(abs_diff(operators[0].at(r, c), h.at(r, c)) <= 1e-9);
    CHECK_FALSE(operators[0].trivial());

    auto p90 = controlled_phase(90);
    CHECK(operators[1].name() == "cPiOver2");
    for (std::uint64_t r = 0; r < 4; ++r)
        for (std::uint64_t c = 0; c < 4; ++c)
            CHECK(abs_diff(operators[1].at(r, c), p90.at(r, c)) <= 1e-12);
    CHECK(operators[1].trivial());
}

TEST_CASE("qoperators error paths") {
    const std::string wrong_dim = "qoperators.txt format version 1\n"
                                  "operators: 1\n"
                                  "operator #: 0\n"
                                  "name: X\n"
                                  "size: 1 bits\n"
                                  "matrix:\n"
                                  "(1 + i*0) (0 + i*0) (0 + i*0) (0 + i*0)\n"
                                  "(0 + i*0) (1 + i*0) (0 + i*0) (0 + i*0)\n"
                                  "(0 + i*0) (0 + i*0) (1 + i*0) (0 + i*0)\n"
                                  "(0 + i*0) (0 + i*0) (0 + i*0) (1 + i*0)\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qoperators(wrong_dim), doctest::Contains("more matrix"),
                         ParseError);

    const std::string not_unitary = "qoperators.txt format version 1\n"
                                    "operators: 1\n"
                                    "operator #: 0\n"
                                    "name: droop\n"
                                    "size: 1 bits\n"
                                    "matrix:\n"
                                    "(1 + i*0) (0 + i*0)\n"
                                    "(0 + i*0) (0.5 + i*0)\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qoperators(not_unitary), doctest::Contains("droop"),
                         ParseError);

    const std::string short_count = "qoperators.txt format version 1\n"
                                    "operators: 2\n"
                                    "operator #: 0\n"
                                    "name: H\n"
                                    "size: 1 bits\n"
                                    "matrix:\n"
                                    "(0.7071067812 + i*0)(0.7071067812 + i*0)\n"
                                    "(0.7071067812 + i*0)(-0.7071067812 + i*0)\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qoperators(short_count),
                         doctest::Contains("count mismatch"), ParseError);
}

TEST_CASE("complex literal sign forms") {
    const std::string text = "qoperators.txt format version 1\n"
                             "operators: 2\n"
                             "operator #: 0\n"
                             "name: down\n"
                             "size: 1 bits\n"
                             "matrix:\n"
                             "(1 + i*0) (0 + i*0)\n"
                             "(0 + i*0) (0 + i*-1)\n"
                             "operator #: 1\n"
                             "name: also_down\n"
                             "size: 1 bits\n"
                             "matrix:\n"
                             "(1 + i*0) (0 + i*0)\n"
                             "(0 + i*0) (0 - i*1)\n";
    auto ops = qfile::parse_qoperators(text);
    CHECK(ops[0].at(1, 1) == ComplexAmp{0.0, -1.0});
    CHECK(ops[1].at(1, 1) == ComplexAmp{0.0, -1.0});
}

TEST_CASE("qopseq parses and validates") {
    auto cfg = qfile::parse_qconfig(read_file(golden_path("reference_qconfig.txt")));
    auto operators = qfile::parse_qoperators(read_file(golden_path("reference_qoperators.txt")));

    const std::string two_ops = "qopseq.txt format version 1\n"
                                "operations: 2\n"
                                "operation #0: apply unary operator H to bits a[3]\n"
                                "operation #1: apply binary operator cPiOver2 to bits a[3], a[2]\n";
    auto ops = qfile::parse_qopseq(two_ops, cfg.registers, operators);
    REQUIRE(ops.size() == 2);
    CHECK(operators[ops[0].operator_index].name() == "H");
    CHECK(ops[0].operands == std::vector<std::uint32_t>{3});
    CHECK(operators[ops[1].operator_index].name() == "cPiOver2");
    CHECK(ops[1].operands == std::vector<std::uint32_t>{3, 2});

    const std::string arity_clash = "qopseq.txt format version 1\noperations: 1\n"
                                    "operation #0: apply binary operator H to bits a[3], a[2]\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qopseq(arity_clash, cfg.registers, operators),
                         doctest::Contains("does not match"), ParseError);

    const std::string bad_bit = "qopseq.txt format version 1\noperations: 1\n"
                                "operation #0: apply unary operator H to bits a[4]\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qopseq(bad_bit, cfg.registers, operators),
                         doctest::Contains("outside register"), ParseError);

    const std::string unknown = "qopseq.txt format version 1\noperations: 1\n"
                                "operation #0: apply unary operator Q to bits a[0]\n";
    CHECK_THROWS_WITH_AS(qfile::parse_qopseq(unknown, cfg.registers, operators),
                         doctest::Contains("unknown operator"), ParseError);

    // Out-of-sequence indices warn but do not fail.
    const std::string weird_index = "qopseq.txt format version 1\noperations: 1\n"
                                    "operation #7: apply unary operator H to bits a[0]\n";
    std::vector<std::string> warnings;
    auto parsed = qfile::parse_qopseq(weird_index, cfg.registers, operators, "qopseq.txt",
                                      &warnings);
    CHECK(parsed.size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("out of sequence") != std::string::npos);
}

TEST_CASE("content beyond declared counts is not read") {
    auto cfg = qfile::parse_qconfig(read_file(golden_path("reference_qconfig.txt")));
    auto operators = qfile::parse_qoperators(read_file(golden_path("reference_qoperators.txt")));

    const std::string trailing = "qopseq.txt format version 1\n"
                                 "operations: 1\n"
                                 "operation #0: apply unary operator H to bits a[3]\n"
                                 "comment: trailing notes\n"
                                 "anything after the declared count is ignored\n";
    auto ops = qfile::parse_qopseq(trailing, cfg.registers, operators);
    CHECK(ops.size() == 1);
}

TEST_CASE("comments and CRLF are tolerated") {
    const std::string text = "qconfig.txt format version 1\r\n"
                             "comment: anything at all\r\n"
                             "bits: 2\r\n"
                             "comment: more\r\n"
                             "named bitarray: q[2] @ 0\r\n";
    auto cfg = qfile::parse_qconfig(text);
    CHECK(cfg.width == 2);
    CHECK(cfg.registers.size() == 1);
}

namespace {

// Truncates every alphabetic keyword to 4 characters; register and operator
// names in these fixtures are single letters or contain digits, so only
// keywords are touched.
std::string truncate_keywords(const std::string& text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '.' || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            bool keyword = word.size() > 4 && word.find('.') == std::string::npos &&
                           word.find('_') == std::string::npos && word != "cPiOver";
            out += keyword ? word.substr(0, 4) : word;
            i = j;
        } else {
            out += text[i];
            ++i;
        }
    }
    return out;
}

} // namespace

TEST_CASE("keywords abbreviate to four characters") {
    auto bundle = adder::gen_draper({2, 1, 1});
    auto texts = qfile::serialize_bundle(bundle);

    auto reparsed = qfile::parse_bundle_texts(
        truncate_keywords(texts.qconfig), truncate_keywords(texts.qinput),
        truncate_keywords(texts.qoperators), truncate_keywords(texts.qopseq));
    CHECK(reparsed.circuit.width() == bundle.circuit.width());
    CHECK(reparsed.circuit.op_count() == bundle.circuit.op_count());
    CHECK(reparsed.input == bundle.input);
}

TEST_CASE("serialize then parse reproduces the bundle") {
    for (std::uint32_t n : {1u, 2u, 4u}) {
        auto bundle = adder::gen_draper({n, 1 & ((1u << n) - 1), 1 & ((1u << n) - 1)});
        auto texts = qfile::serialize_bundle(bundle);
        auto reparsed = qfile::parse_bundle_texts(texts.qconfig, texts.qinput, texts.qoperators,
                                                  texts.qopseq);

        CHECK(reparsed.circuit.width() == bundle.circuit.width());
        CHECK(reparsed.input == bundle.input);
        // Ten significant digits bound the first round trip; a second parse
        // of the reserialized text must reproduce entries exactly.
        REQUIRE(reparsed.circuit.operators().size() == bundle.circuit.operators().size());
        for (std::size_t k = 0; k < bundle.circuit.operators().size(); ++k) {
            const auto& a = bundle.circuit.operators()[k];
            const auto& b = reparsed.circuit.operators()[k];
            CHECK(a.name() == b.name());
            CHECK(a.trivial() == b.trivial());
            for (std::uint64_t r = 0; r < a.dim(); ++r)
                for (std::uint64_t c = 0; c < a.dim(); ++c)
                    CHECK(abs_diff(a.at(r, c), b.at(r, c)) <= 1e-9);
        }
        {
            auto texts_again = qfile::serialize_bundle(reparsed);
            auto reparsed_again =
                qfile::parse_bundle_texts(texts_again.qconfig, texts_again.qinput,
                                          texts_again.qoperators, texts_again.qopseq);
            for (std::size_t k = 0; k < reparsed.circuit.operators().size(); ++k) {
                const auto& a = reparsed.circuit.operators()[k];
                const auto& b = reparsed_again.circuit.operators()[k];
                for (std::uint64_t r = 0; r < a.dim(); ++r)
                    for (std::uint64_t c = 0; c < a.dim(); ++c)
                        CHECK(a.at(r, c) == b.at(r, c)); // bitwise
            }
        }
        REQUIRE(reparsed.circuit.op_count() == bundle.circuit.op_count());
        for (std::size_t k = 0; k < bundle.circuit.op_count(); ++k) {
            CHECK(reparsed.circuit.ops()[k].operator_index ==
                  bundle.circuit.ops()[k].operator_index);
            CHECK(reparsed.circuit.ops()[k].operands == bundle.circuit.ops()[k].operands);
        }

        // A second round trip is textually identical.
        auto texts2 = qfile::serialize_bundle(reparsed);
        CHECK(texts2.qconfig == texts.qconfig);
        CHECK(texts2.qinput == texts.qinput);
        CHECK(texts2.qoperators == texts.qoperators);
        CHECK(texts2.qopseq == texts.qopseq);
    }
}

TEST_CASE("serializer emits the reference hadamard literal") {
    auto texts = qfile::serialize_bundle(adder::gen_draper({4, 1, 1}));
    CHECK(texts.qoperators.find("0.7071067812") != std::string::npos);
    CHECK(texts.qopseq.find("operations: 30") != std::string::npos);
}

TEST_CASE("empty circuit serializes") {
    Circuit circuit(1, {{"q", 1, 0}}, {hadamard()}, {});
    CircuitBundle bundle{std::move(circuit), BasisState(0, 1)};
    auto texts = qfile::serialize_bundle(bundle);
    CHECK(texts.qopseq.find("operations: 0") != std::string::npos);
    auto reparsed = qfile::parse_bundle_texts(texts.qconfig, texts.qinput, texts.qoperators,
                                              texts.qopseq);
    CHECK(reparsed.circuit.op_count() == 0);
}
