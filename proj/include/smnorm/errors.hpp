#pragma once

#include <stdexcept>
#include <string>

namespace smnorm {

/// Invalid parameter combinations and malformed configuration input.
/// Maps to CLI exit code 1.
class ParamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File and stream failures, malformed or non-finite payloads.
/// Maps to CLI exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Domain/grid mismatches and geometry that cannot support the request.
/// Maps to CLI exit code 3.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ball's quadrature nodes cannot resolve the requested polynomial order.
/// Carries the rank that was achieved so callers can degrade the order.
class DegenerateBall : public GeometryError {
public:
    DegenerateBall(const std::string& what, int achieved_rank)
        : GeometryError(what), achieved_rank_(achieved_rank) {}

    int achieved_rank() const noexcept { return achieved_rank_; }

private:
    int achieved_rank_;
};

} // namespace smnorm
