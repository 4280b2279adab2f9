// SPDX-License-Identifier: MIT
#pragma once
/// \file error.hpp
/// \brief Error taxonomy shared by all scalekit modules.

#include <stdexcept>
#include <string>

namespace scalekit {

enum class errc {
  zero_column,      ///< a column norm is indistinguishable from zero
  invalid_norm,     ///< a column norm differs from 1 beyond tolerance
  not_a_frame,      ///< columns do not span the ambient space
  dimension_error,  ///< shape mismatch (m < n, wrong vector length, ...)
  negative_weight,  ///< a weight required to be non-negative is not
  max_iterations,   ///< an iterative solver exhausted its budget
  trace_mismatch,   ///< a prescribed shape matrix does not have trace n
  not_spd,          ///< a matrix required to be positive definite is not
  domain_error,     ///< a scalar argument is outside its domain
  parse_error,      ///< malformed input text
  io_error,         ///< file could not be read or written
};

constexpr const char* errc_name(errc code) {
  switch (code) {
    case errc::zero_column: return "zero_column";
    case errc::invalid_norm: return "invalid_norm";
    case errc::not_a_frame: return "not_a_frame";
    case errc::dimension_error: return "dimension_error";
    case errc::negative_weight: return "negative_weight";
    case errc::max_iterations: return "max_iterations";
    case errc::trace_mismatch: return "trace_mismatch";
    case errc::not_spd: return "not_spd";
    case errc::domain_error: return "domain_error";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

/// Exception carrying an errc; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace scalekit
