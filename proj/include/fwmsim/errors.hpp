#ifndef FWMSIM_ERRORS_HPP
#define FWMSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fwmsim {

// Error categories map to the CLI exit codes: config -> 2, numerical -> 3, io -> 4.
enum class ErrorKind { config, numerical, io };

class SimError : public std::runtime_error {
public:
    SimError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : SimError {
    explicit ValidationError(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct ParseError : SimError {
    explicit ParseError(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct IndexOutOfRange : SimError {
    explicit IndexOutOfRange(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct SingularSystem : SimError {
    explicit SingularSystem(const std::string& msg)
        : SimError(ErrorKind::numerical, msg) {}
};

struct NotConverged : SimError {
    NotConverged(const std::string& msg, double residual)
        : SimError(ErrorKind::numerical, msg), residual(residual) {}
    double residual;
};

struct PerturbativeBreakdown : SimError {
    explicit PerturbativeBreakdown(const std::string& msg)
        : SimError(ErrorKind::numerical, msg) {}
};

struct EmptySpectrum : SimError {
    explicit EmptySpectrum(const std::string& msg)
        : SimError(ErrorKind::numerical, msg) {}
};

struct NoHalfCrossing : SimError {
    explicit NoHalfCrossing(const std::string& msg)
        : SimError(ErrorKind::numerical, msg) {}
};

struct EdgeOutsideGrid : SimError {
    explicit EdgeOutsideGrid(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct GridMismatch : SimError {
    explicit GridMismatch(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct WindowOutsideGrid : SimError {
    explicit WindowOutsideGrid(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

// Circular-convolution guard in generate_signal.
struct BoundaryWraparound : SimError {
    explicit BoundaryWraparound(const std::string& msg)
        : SimError(ErrorKind::numerical, msg) {}
};

struct NoOffGap : SimError {
    explicit NoOffGap(const std::string& msg)
        : SimError(ErrorKind::config, msg) {}
};

struct IoError : SimError {
    explicit IoError(const std::string& msg)
        : SimError(ErrorKind::io, msg) {}
};

} // namespace fwmsim

#endif
