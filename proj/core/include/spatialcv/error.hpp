/* Copyright 2026 The spatialcv Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spatialcv {

enum class ErrorCode {
  invalid_argument,
  support_overflow,
  order_too_large,
  grid_mismatch,
  scale_mismatch,
  representation,
  unnormalized,
  nyquist_violation,
  not_symplectic,
  non_gaussian_gate,
  realizability,
  unknown_mask,
  unsupported_topology,
  label_error,
  zero_probability,
  singular_angle,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by apply_program; wraps the failing gate's error with its index.
class ProgramError : public Error {
 public:
  ProgramError(std::size_t step, const Error& cause);

  std::size_t step() const noexcept { return step_; }
  ErrorCode cause_code() const noexcept { return cause_; }

 private:
  std::size_t step_;
  ErrorCode cause_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Non-fatal diagnostics (renormalization, aliasing). The default sink writes
// to stderr; tests and the CLI install their own.
using WarningSink = std::function<void(std::string_view)>;

void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace spatialcv
