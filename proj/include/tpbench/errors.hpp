#pragma once

#include <stdexcept>
#include <string>

namespace tpbench {

// Dataset generation gave up (retry cap hit).
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File missing/corrupt beyond recovery.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Transport kept failing after all retries.
struct BackendUnavailable : BackendError {
    using BackendError::BackendError;
};

// The service refused the request (non-retryable status, unknown script entry).
struct BackendRejected : BackendError {
    using BackendError::BackendError;
};

// The simulated backend saw a prompt it cannot attribute to this harness;
// that is a bug in the calling test, not model noise.
struct OracleParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stored record fields disagree with revalidation of the raw path.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tpbench
