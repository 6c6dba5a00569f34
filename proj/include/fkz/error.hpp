#pragma once

#include <stdexcept>
#include <string>

namespace fkz {

enum class Errc {
  io_error,
  format_error,
  invalid_argument,
  dimension_mismatch,
  truncated_stream,
  malformed_code_table,
  corrupt_payload,
  bad_magic,
  unsupported_version,
};

// Every failure the library can produce is thrown as one of these; callers
// that must not die on arbitrary input (CLI, fuzzing) catch fkz::Error.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fkz
