// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynsub/stream.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dynsub/errors.h"

namespace dynsub {

bool Stream::InsertionOnly() const { return DeleteCount() == 0; }

std::size_t Stream::DeleteCount() const {
  std::size_t n = 0;
  for (const auto& op : ops) n += op.kind == OpKind::kDelete;
  return n;
}

void Stream::Validate() const {
  // 0 = never seen, 1 = live, 2 = deleted
  std::unordered_map<std::uint64_t, int> state;
  for (std::size_t t = 0; t < ops.size(); ++t) {
    const auto& op = ops[t];
    int& s = state[op.element];
    if (op.kind == OpKind::kInsert) {
      if (s != 0) {
        throw std::invalid_argument("stream op " + std::to_string(t + 1) +
                                    ": element " + std::to_string(op.element) +
                                    " inserted twice");
      }
      s = 1;
    } else {
      if (s != 1) {
        throw std::invalid_argument("stream op " + std::to_string(t + 1) +
                                    ": delete of element " +
                                    std::to_string(op.element) +
                                    " which is not live");
      }
      s = 2;
    }
  }
}

Stream ReadStream(std::istream& in) {
  Stream stream;
  std::string line;
  bool seen_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!seen_header) {
      std::string version;
      if (tag != "stream" || !(ls >> version) || version != "v1") {
        throw std::invalid_argument("stream: expected header 'stream v1'");
      }
      seen_header = true;
      continue;
    }
    std::uint64_t value = 0;
    if (!(ls >> value)) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": missing id");
    }
    if (tag == "I") {
      stream.ops.push_back({OpKind::kInsert, value});
    } else if (tag == "D") {
      stream.ops.push_back({OpKind::kDelete, value});
    } else if (tag == "ground") {
      stream.ground_hint = value;
    } else {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": unknown tag '" + tag + "'");
    }
  }
  if (!seen_header) {
    throw std::invalid_argument("stream: expected header 'stream v1'");
  }
  stream.Validate();
  return stream;
}

Stream ReadStreamFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stream file " + path);
  return ReadStream(in);
}

void WriteStream(const Stream& stream, std::ostream& out) {
  out << "stream v1\n";
  if (stream.ground_hint) out << "ground " << *stream.ground_hint << "\n";
  for (const auto& op : stream.ops) {
    out << (op.kind == OpKind::kInsert ? "I " : "D ") << op.element << "\n";
  }
}

void WriteStreamFile(const Stream& stream, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write stream file " + path);
  WriteStream(stream, out);
  if (!out) throw IoError("write failed for " + path);
}

Stream InsertAll(std::size_t n) {
  Stream s;
  s.ground_hint = n;
  s.ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.ops.push_back({OpKind::kInsert, i});
  return s;
}

}  // namespace dynsub
