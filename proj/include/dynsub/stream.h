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

#ifndef DYNSUB_STREAM_H_
#define DYNSUB_STREAM_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynsub/set_function.h"

namespace dynsub {

enum class OpKind { kInsert, kDelete };

struct StreamOp {
  OpKind kind;
  std::uint64_t element;

  friend bool operator==(const StreamOp&, const StreamOp&) = default;
};

// Ordered insert/delete events. Element ids here are external ids; the
// harness maps them onto the dense ground set of the oracle.
struct Stream {
  std::vector<StreamOp> ops;
  std::optional<std::uint64_t> ground_hint;

  std::size_t size() const { return ops.size(); }
  bool InsertionOnly() const;
  std::size_t DeleteCount() const;

  // Throws std::invalid_argument if a Delete has no live matching Insert or
  // an id is inserted twice (ids are never reused within one run).
  void Validate() const;
};

// Text format: "stream v1", optional "ground <n>", then "I <id>" / "D <id>"
// lines. Blank lines and '#' comments are ignored.
Stream ReadStream(std::istream& in);
Stream ReadStreamFile(const std::string& path);
void WriteStream(const Stream& stream, std::ostream& out);
void WriteStreamFile(const Stream& stream, const std::string& path);

// Insertion-only stream over 0..n-1 in ascending order.
Stream InsertAll(std::size_t n);

}  // namespace dynsub

#endif  // DYNSUB_STREAM_H_
