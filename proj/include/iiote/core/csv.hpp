// Copyright 2026 The iiote Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace iiote {

// Shortest decimal string that parses back to exactly `v`
// (std::to_chars, locale independent).
std::string format_double(double v);

// Minimal CSV writer: fields are written as given, rows end with '\n'.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);

  CsvWriter& field(std::string_view s);
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
  CsvWriter& field(long v) { return field(static_cast<long long>(v)); }
  CsvWriter& field(unsigned long v) { return field(static_cast<long long>(v)); }
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace iiote
