// Error taxonomy shared across the library. Every failure mode callers are
// expected to handle gets its own exception type so tests can assert on them.
#pragma once

#include <stdexcept>
#include <string>

namespace probelab {

// Insert of a key that is already present.
struct DuplicateKeyError : std::runtime_error {
  explicit DuplicateKeyError(const std::string& what) : std::runtime_error(what) {}
};

// Delete or lookup-dependent operation on a key that is not present.
struct KeyNotFoundError : std::runtime_error {
  explicit KeyNotFoundError(const std::string& what) : std::runtime_error(what) {}
};

// Insert that would exceed the configured live-load cap.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed serialized table snapshot, trace, config file, or CSV input.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid experiment configuration (unknown key, bad grid, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A monotone path that violates its representation's legality rules.
struct IllegalPathError : std::runtime_error {
  explicit IllegalPathError(const std::string& what) : std::runtime_error(what) {}
};

// Trace fed to an accounting rule of the other table mode.
struct ModeMismatchError : std::runtime_error {
  explicit ModeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Trace lacks the per-deletion annotations an operation requires.
struct MissingAnnotationError : std::runtime_error {
  explicit MissingAnnotationError(const std::string& what) : std::runtime_error(what) {}
};

// Workload generator ran out of eligible keys (window longer than the
// distinct key population allows).
struct ExhaustedKeysError : std::runtime_error {
  explicit ExhaustedKeysError(const std::string& what) : std::runtime_error(what) {}
};

// Experiment name not in the catalog.
struct UnknownExperimentError : std::runtime_error {
  explicit UnknownExperimentError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive oracle asked to handle an instance above its hard size cap.
struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant breach (audit failures, replay mismatches).
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace probelab
