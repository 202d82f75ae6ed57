#ifndef HWM_ERRORS_HPP
#define HWM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hwm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroVector : Error {
    using Error::Error;
};
struct NotNull : Error {
    using Error::Error;
};
struct NotOrthogonal : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct PoleCollision : Error {
    using Error::Error;
};
struct NotAdmissible : Error {
    using Error::Error;
};
struct DegenerateSpin : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    NoConvergence(const std::string& msg, double residual)
        : Error(msg), last_residual(residual) {}
    double last_residual;
};
struct SamplingExhausted : Error {
    using Error::Error;
};
struct NonRealEnergy : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct Instability : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct IOError : Error {
    using Error::Error;
};

} // namespace hwm

#endif
