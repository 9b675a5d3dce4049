// Copyright 2026 The cfgperf Authors
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

#ifndef CFGPERF_FORMAT_H_
#define CFGPERF_FORMAT_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cfgperf {

// Shortest decimal text that parses back to the same double; "inf"/"-inf"/
// "nan" for non-finite values.
std::string FormatDouble(double value);

// Strict full-string parse; throws Error(kInvalidData) on trailing garbage.
double ParseDouble(std::string_view text);

// Minimal CSV support: comma separated, optional double-quoted fields with ""
// escapes, no embedded newlines.
std::vector<std::string> SplitCsvLine(std::string_view line);
std::string CsvField(std::string_view raw);

}  // namespace cfgperf

#endif  // CFGPERF_FORMAT_H_
