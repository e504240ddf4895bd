// Copyright 2026 The noisekit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEKIT_ERROR_HPP
#define NOISEKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace noisekit {

/// Base class for all library failures. The taxonomy below maps onto the
/// CLI exit codes (see tools/main.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable, truncated, or unsupported input files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (schema violations, degenerate ranges).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace noisekit

#endif  // NOISEKIT_ERROR_HPP
