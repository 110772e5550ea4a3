// Copyright 2026 The qcap Authors
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

#ifndef QCAP_CHANNEL_IO_HPP
#define QCAP_CHANNEL_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcap/channels.hpp"

namespace qcap {

// Channel JSON:
//   {"label": "...", "dim_in": 2, "dim_out": 2,
//    "kraus": [ [[[re, im], [re, im]], [[re, im], [re, im]]], ... ]}
// Each matrix is an array of rows; each entry is a [re, im] pair.

nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// `where` names the value in error messages (a JSON pointer).
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where = "");

nlohmann::json channel_to_json(const KrausChannel& ch);

/// A shape-checked channel document whose Kraus operators have not yet been
/// tested for completeness.
struct ChannelDocument {
  std::string label;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<ComplexMatrix> kraus;
};

ChannelDocument channel_document_from_json(const nlohmann::json& j);

/// Parses text; syntax errors report "source:line:column: message".
ChannelDocument parse_channel_document(std::string_view text, std::string_view source = "<input>");

ChannelDocument read_channel_document(const std::filesystem::path& path);

/// Parse and CPTP-validate.
KrausChannel channel_from_json(const nlohmann::json& j, const Tolerances& tol = kDefaultTolerances);
KrausChannel load_channel(const std::filesystem::path& path,
                          const Tolerances& tol = kDefaultTolerances);

}  // namespace qcap

#endif  // QCAP_CHANNEL_IO_HPP
