#include "qweyl/errors.hpp"

namespace qweyl {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Config: return "config";
    case ErrorKind::NotInSubalgebra: return "not-in-subalgebra";
    case ErrorKind::WrongRegime: return "wrong-regime";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::RootFinding: return "root-finding";
    case ErrorKind::NoPositiveTrace: return "no-positive-trace";
    }
    return "unknown";
}

bool is_numeric_failure(ErrorKind k) {
    switch (k) {
    case ErrorKind::Resonance:
    case ErrorKind::Pole:
    case ErrorKind::Convergence:
    case ErrorKind::Inconsistency:
    case ErrorKind::RootFinding:
        return true;
    default:
        return false;
    }
}

} // namespace qweyl
