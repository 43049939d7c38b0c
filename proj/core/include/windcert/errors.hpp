#pragma once

#include <stdexcept>

namespace windcert {

// Error taxonomy shared across the library.  The CLI maps these onto process
// exit codes: invalid input -> 2, integrity -> 3, theorem contradiction -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed data files, parameters out of contract, failed invariant checks.
struct InvalidInputError : Error {
  using Error::Error;
};

// A unitary eigenvalue sits on the log branch cut (phase within tolerance of pi).
struct BranchCutError : Error {
  using Error::Error;
};

// A user rewriting system exceeded its step bound; non-confluence suspected.
struct RewriteLimitError : Error {
  using Error::Error;
};

// An operation needs word equality but the group has no normal form and the
// chain carries no structural certificate.
struct CannotVerifyError : Error {
  using Error::Error;
};

// A quantization gap or self-check failure that signals a bug or a broken
// cycle certificate rather than bad user input.
struct IntegrityError : Error {
  using Error::Error;
};

// An empirical result that would contradict the winding obstruction; always a
// release-blocking implementation bug.
struct TheoremContradictionError : Error {
  using Error::Error;
};

}  // namespace windcert
