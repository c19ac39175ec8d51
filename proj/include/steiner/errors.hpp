#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

// A caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Parameters outside the supported range (n above the enumeration cap, d < 3 for sphere work...).
class UnsupportedError : public std::invalid_argument {
public:
    explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the pathology constructor when a stage cannot be completed.
class StageAbort : public std::runtime_error {
public:
    StageAbort(int stage, const std::string& what)
        : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
    int stage() const noexcept { return stage_; }

private:
    int stage_;
};

}  // namespace steiner
