#pragma once

#include <stdexcept>
#include <string>

namespace skinbabble {

// Invalid configuration: bad fields, dimension mismatches, unknown names.
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A query the sample database cannot answer (empty model, too few neighbors).
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CMA-ES found every candidate of a generation non-finite.
struct OptimizerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constrained random babbling hit its iteration cap before seeding the database.
struct BootstrapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point has no well-defined projection (it lies on the cylinder axis).
struct ProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace skinbabble
