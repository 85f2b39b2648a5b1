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

#include "spatialcv/error.hpp"

#include <iostream>
#include <mutex>

namespace spatialcv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::support_overflow: return "support_overflow";
    case ErrorCode::order_too_large: return "order_too_large";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::scale_mismatch: return "scale_mismatch";
    case ErrorCode::representation: return "representation";
    case ErrorCode::unnormalized: return "unnormalized";
    case ErrorCode::nyquist_violation: return "nyquist_violation";
    case ErrorCode::not_symplectic: return "not_symplectic";
    case ErrorCode::non_gaussian_gate: return "non_gaussian_gate";
    case ErrorCode::realizability: return "realizability";
    case ErrorCode::unknown_mask: return "unknown_mask";
    case ErrorCode::unsupported_topology: return "unsupported_topology";
    case ErrorCode::label_error: return "label_error";
    case ErrorCode::zero_probability: return "zero_probability";
    case ErrorCode::singular_angle: return "singular_angle";
  }
  return "unknown";
}

ProgramError::ProgramError(std::size_t step, const Error& cause)
    : Error(cause.code(),
            "step " + std::to_string(step) + ": " + cause.what()),
      step_(step),
      cause_(cause.code()) {}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](std::string_view msg) {
    std::cerr << "spatialcv warning: " << msg << '\n';
  };
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

}  // namespace spatialcv
