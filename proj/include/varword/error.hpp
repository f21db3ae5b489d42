// Shared error taxonomy for the variable-words toolkit.
#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace varword {

using BigInt = boost::multiprecision::cpp_int;

// Machine-readable failure classes. `detail` carries the offending index,
// variable number, line number or required size where one applies.
enum class Errc {
  empty_word,
  missing_variable,
  block_violation,
  letter_out_of_range,
  length_mismatch,
  index_out_of_range,
  ground_set_overflow,
  size_guard,
  shape_mismatch,
  parse_error,
  incomplete_cover,
  color_out_of_range,
  duplicate_word,
  too_large,
  length_too_small,
  budget_exceeded,
  missing_h_value,
  arithmetic,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, long long detail = -1)
      : std::runtime_error(message), code_(code), detail_(detail) {}

  Errc code() const { return code_; }
  long long detail() const { return detail_; }

 private:
  Errc code_;
  long long detail_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message, long long detail = -1) {
  throw Error(code, message, detail);
}

}  // namespace varword
