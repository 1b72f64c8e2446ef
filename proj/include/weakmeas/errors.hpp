// Copyright 2026 The weakmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace weakmeas {

/**
 * @brief Base class of every error raised by the library.
 *
 * `field()` names the offending scenario field when the error comes from
 * input validation, and is empty otherwise.
 */
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what, std::string field = {})
        : std::runtime_error(what), field_(std::move(field)) {}

    [[nodiscard]] auto field() const -> const std::string & { return field_; }
    [[nodiscard]] virtual auto code() const -> const char * { return "Error"; }

  private:
    std::string field_;
};

#define WEAKMEAS_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                                \
      public:                                                                  \
        using Error::Error;                                                    \
        [[nodiscard]] auto code() const -> const char * override {             \
            return #Name;                                                      \
        }                                                                      \
    }

WEAKMEAS_DEFINE_ERROR(DimensionError);
WEAKMEAS_DEFINE_ERROR(NotHermitianError);
WEAKMEAS_DEFINE_ERROR(NormalizationError);
WEAKMEAS_DEFINE_ERROR(GridExtentError);
WEAKMEAS_DEFINE_ERROR(MissingAxisError);
WEAKMEAS_DEFINE_ERROR(OrthogonalSelectionError);
WEAKMEAS_DEFINE_ERROR(EmptyPostSelectionError);
// Malformed or out-of-range scenario input that has no more specific type.
WEAKMEAS_DEFINE_ERROR(ValidationError);

#undef WEAKMEAS_DEFINE_ERROR

} // namespace weakmeas
