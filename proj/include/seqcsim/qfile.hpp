#ifndef SEQCSIM_QFILE_HPP
#define SEQCSIM_QFILE_HPP

#include <string>
#include <vector>

#include "seqcsim/circuit.hpp"
#include "seqcsim/errors.hpp"

namespace seqcsim::qfile {

// Four-file ASCII circuit description: qconfig.txt (width and registers),
// qinput.txt (decimal register values), qoperators.txt (gate matrices),
// qopseq.txt (gate sequence). Keywords may be abbreviated to any prefix of
// at least 4 characters, whitespace is free-form, CRLF is accepted, and
// lines beginning with "comment:" are ignored. Only format version 1 of
// each file is understood.

struct QConfig {
    std::uint32_t width = 0;
    std::vector<Register> registers;
};

QConfig parse_qconfig(const std::string& text, const std::string& file_id = "qconfig.txt");

BasisState parse_qinput(const std::string& text, std::uint32_t width,
                        const std::vector<Register>& registers,
                        const std::string& file_id = "qinput.txt");

std::vector<OperatorMatrix> parse_qoperators(const std::string& text,
                                             const std::string& file_id = "qoperators.txt");

std::vector<Operation> parse_qopseq(const std::string& text,
                                    const std::vector<Register>& registers,
                                    const std::vector<OperatorMatrix>& operators,
                                    const std::string& file_id = "qopseq.txt",
                                    std::vector<std::string>* warnings = nullptr);

CircuitBundle parse_bundle_texts(const std::string& qconfig_text, const std::string& qinput_text,
                                 const std::string& qoperators_text,
                                 const std::string& qopseq_text,
                                 std::vector<std::string>* warnings = nullptr);

/// Loads <dir>/qconfig.txt, qinput.txt, qoperators.txt, qopseq.txt.
CircuitBundle load_bundle_dir(const std::string& dir,
                              std::vector<std::string>* warnings = nullptr);

CircuitBundle load_bundle_files(const std::string& qconfig_path, const std::string& qinput_path,
                                const std::string& qoperators_path,
                                const std::string& qopseq_path,
                                std::vector<std::string>* warnings = nullptr);

struct BundleTexts {
    std::string qconfig;
    std::string qinput;
    std::string qoperators;
    std::string qopseq;
};

/// Emits the four files in canonical layout (full keywords, LF endings,
/// complex entries at 10 significant digits). parse of the result
/// reproduces the bundle, matrices within 1e-12.
BundleTexts serialize_bundle(const CircuitBundle& bundle);

/// Serializes into <dir>/{qconfig,qinput,qoperators,qopseq}.txt.
void write_bundle_dir(const CircuitBundle& bundle, const std::string& dir);

} // namespace seqcsim::qfile

#endif
