#ifndef QUADLCM_ERROR_HPP
#define QUADLCM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace quadlcm {

enum class ErrorCode {
    ConstantPolynomial,
    CoefficientTooLarge,
    BadPolynomialFormat,
    NotNormalizable,
    NotDependent,
    NotApplicable,
    LimitTooLarge,
    ZeroBottom,
    BadResidueClass,
    ModeMismatch,
    EmptySet,
    TooLarge,
    BadOrder,
    PrecisionUnreachable,
    BadDensity,
    RegimeTooSparse,
    DegenerateFactor,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace quadlcm

#endif
