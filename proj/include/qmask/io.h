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

#ifndef QMASK_IO_H
#define QMASK_IO_H

// JSON persistence. Complex scalars are [re, im]; matrices are nested row-major
// arrays of complex scalars; states are flat arrays. Every decoder throws
// SchemaError carrying a JSON pointer to the first bad field.

#include <string>

#include "json.hpp"
#include "qmask/erasure.h"
#include "qmask/masker.h"
#include "qmask/mols.h"
#include "qmask/nogo.h"
#include "qmask/verifier.h"

namespace qmask::io {

using Json = nlohmann::json;

Json encode(Complex z);
Json encode(const ComplexMatrix &m);
Json encode_state(const StateVector &v);
Json encode(const LatinSquare &square);
Json encode(const MolsPair &pair);
Json encode(const Masker &s);
Json encode(const CodeSubspace &code);
Json encode(const StateSet &set);
Json encode(const KrausChannel &ch);

Json encode(const MaskingReport &r);
Json encode(const KLReport &r);
Json encode(const EquivalenceReport &r);
Json encode(const FidelityStats &f);
Json encode(const SearchResult &r);

Complex decode_complex(const Json &j, const std::string &path = "");
ComplexMatrix decode_matrix(const Json &j, const std::string &path = "");
StateVector decode_state(const Json &j, const std::string &path = "");
/// Accepts an optional "base": 0 | 1 field; 1-based entries are shifted to 0-based.
LatinSquare decode_square(const Json &j, const std::string &path = "");
MolsPair decode_pair(const Json &j, const std::string &path = "");
Masker decode_masker(const Json &j, const std::string &path = "");
CodeSubspace decode_code(const Json &j, const std::string &path = "");
StateSet decode_state_set(const Json &j, const std::string &path = "");
KrausChannel decode_channel(const Json &j, const std::string &path = "");

/// Throws SchemaError with an empty path on unreadable or unparsable files.
Json read_file(const std::string &path);
void write_file(const std::string &path, const Json &payload);

}  // namespace qmask::io

#endif
