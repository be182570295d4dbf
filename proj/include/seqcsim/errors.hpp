#ifndef SEQCSIM_ERRORS_HPP
#define SEQCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace seqcsim {

/// Input-file rejection, carrying the file identity and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

/// A request exceeds a memory or enumeration guard.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical degeneracy (e.g. a vanishing probability mass, which a valid
/// unitary circuit cannot produce).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace seqcsim

#endif
