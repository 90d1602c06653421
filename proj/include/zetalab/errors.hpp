#ifndef ZETALAB_ERRORS_HPP
#define ZETALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zetalab {

// Evaluation-layer failures. Each maps to one contract violation so callers
// can catch exactly what they can recover from.

struct PoleAtOne : std::runtime_error {
    explicit PoleAtOne(const std::string& msg) : std::runtime_error(msg) {}
};

struct AccuracyUnreachable : std::runtime_error {
    explicit AccuracyUnreachable(const std::string& msg) : std::runtime_error(msg) {}
};

struct BranchObstruction : std::runtime_error {
    explicit BranchObstruction(const std::string& msg) : std::runtime_error(msg) {}
};

struct ContourThroughZero : std::runtime_error {
    explicit ContourThroughZero(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleInRegion : std::runtime_error {
    explicit PoleInRegion(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateShift : std::runtime_error {
    explicit DegenerateShift(const std::string& msg) : std::runtime_error(msg) {}
};

struct SigmaOutOfRange : std::runtime_error {
    explicit SigmaOutOfRange(const std::string& msg) : std::runtime_error(msg) {}
};

struct SetOutsideStrip : std::runtime_error {
    explicit SetOutsideStrip(const std::string& msg) : std::runtime_error(msg) {}
};

struct SkippedTau : std::runtime_error {
    explicit SkippedTau(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionNearZero : std::runtime_error {
    explicit DivisionNearZero(const std::string& msg) : std::runtime_error(msg) {}
};

struct MalformedResult : std::runtime_error {
    explicit MalformedResult(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zetalab

#endif
