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

#include "qcap/channel_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcap {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error((where.empty() ? std::string("/") : where) + ": " + what);
}

std::size_t read_dim(const json& j, const char* key) {
  const std::string where = std::string("/") + key;
  if (!j.contains(key)) fail(where, "missing field");
  const json& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(where, "must be an integer");
  const auto d = v.get<long long>();
  if (d < 1) fail(where, "must be positive");
  return static_cast<std::size_t>(d);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(where + "/0", "row must be a non-empty array");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(rw, "row must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      const std::string ew = rw + "/" + std::to_string(c);
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(ew, "entry must be [re, im]");
      }
      const Complex z(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ew, "entry is not finite");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
    }
  }
  return m;
}

json channel_to_json(const KrausChannel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return json{{"label", ch.label()},
              {"dim_in", ch.dim_in()},
              {"dim_out", ch.dim_out()},
              {"kraus", std::move(kraus)}};
}

ChannelDocument channel_document_from_json(const json& j) {
  if (!j.is_object()) fail("", "channel document must be a JSON object");
  ChannelDocument doc;
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("/label", "must be a string");
    doc.label = j["label"].get<std::string>();
  }
  doc.dim_in = read_dim(j, "dim_in");
  doc.dim_out = read_dim(j, "dim_out");
  if (!j.contains("kraus")) fail("/kraus", "missing field");
  const json& ks = j["kraus"];
  if (!ks.is_array() || ks.empty()) fail("/kraus", "must be a non-empty array of matrices");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const std::string where = "/kraus/" + std::to_string(i);
    ComplexMatrix k = matrix_from_json(ks[i], where);
    if (static_cast<std::size_t>(k.rows()) != doc.dim_out ||
        static_cast<std::size_t>(k.cols()) != doc.dim_in) {
      std::ostringstream os;
      os << "Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << doc.dim_out
         << "x" << doc.dim_in << " (dim_out x dim_in)";
      fail(where, os.str());
    }
    doc.kraus.push_back(std::move(k));
  }
  return doc;
}

ChannelDocument parse_channel_document(std::string_view text, std::string_view source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    // Drop nlohmann's own "[json.exception...] parse error at line L, column C: " prefix.
    if (const auto pos = msg.find(": ", msg.find("parse error")); pos != std::string::npos) {
      msg = msg.substr(pos + 2);
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": " << msg;
    throw Error(os.str());
  }
  try {
    return channel_document_from_json(j);
  } catch (const Error& e) {
    throw Error(std::string(source) + ": " + e.what());
  }
}

ChannelDocument read_channel_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_document(buf.str(), path.string());
}

KrausChannel channel_from_json(const json& j, const Tolerances& tol) {
  ChannelDocument doc = channel_document_from_json(j);
  return validate_cptp(std::move(doc.kraus), doc.dim_in, doc.dim_out, std::move(doc.label), tol);
}

KrausChannel load_channel(const std::filesystem::path& path, const Tolerances& tol) {
  ChannelDocument doc = read_channel_document(path);
  try {
    return validate_cptp(std::move(doc.kraus), doc.dim_in, doc.dim_out, std::move(doc.label),
                         tol);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace qcap
