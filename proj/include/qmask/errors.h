// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMASK_ERRORS_H
#define QMASK_ERRORS_H

#include <stdexcept>
#include <string>

namespace qmask {

/// Shapes or subsystem indices that do not fit together.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operator expected to satisfy V^dagger V = I does not.
struct NotIsometric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A density operator or state vector failed its normalization or positivity check.
struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotPrimePower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Orders 2 and 6 admit no pair of orthogonal Latin squares.
struct NoMolsExists : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pairs exist but are outside what the built-in constructions produce.
struct UnsupportedOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMols : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CoefficientMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KLViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The masking check and the erasure-correction check returned different verdicts.
struct DisagreementAtTolerance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed JSON payload. `path()` is a JSON pointer to the offending field.
class SchemaError : public std::runtime_error {
   public:
    SchemaError(std::string path, const std::string &what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {
    }
    const std::string &path() const {
        return path_;
    }

   private:
    std::string path_;
};

}  // namespace qmask

#endif
