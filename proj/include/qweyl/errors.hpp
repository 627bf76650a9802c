#ifndef QWEYL_ERRORS_HPP
#define QWEYL_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace qweyl {

enum class ErrorKind {
    Domain,          // invalid argument value (z = 0, q outside (0,1), ...)
    Config,          // inconsistent object configuration / schema violation
    NotInSubalgebra, // element outside A_+ where A_+ is required
    WrongRegime,     // wrong classification regime for the requested check
    Resonance,       // t = q^{-2k} hit where the inversion needs t != q^{-2k}
    Pole,            // evaluation point too close to a pole
    Convergence,     // iteration failed to converge
    Inconsistency,   // numeric result contradicts a structural assumption
    RootFinding,     // simultaneous iteration failed
    NoPositiveTrace, // sl2: Casimir value outside the unitarizable range
};

const char* error_kind_name(ErrorKind k);

// true for failures of the computation itself (CLI exit 3), false for
// input/validation problems (CLI exit 2)
bool is_numeric_failure(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ResonanceError : public Error {
public:
    ResonanceError(int k, const std::string& detail)
        : Error(ErrorKind::Resonance, detail + " (k = " + std::to_string(k) + ")"), k_(k) {}
    int exponent() const noexcept { return k_; }

private:
    int k_;
};

class PoleError : public Error {
public:
    PoleError(std::complex<double> where, const std::string& detail)
        : Error(ErrorKind::Pole, detail), where_(where) {}
    std::complex<double> where() const noexcept { return where_; }

private:
    std::complex<double> where_;
};

} // namespace qweyl

#endif
