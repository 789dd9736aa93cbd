// Copyright 2026 The Printscore Authors.
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

#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace printscore {

/** Formats a double exactly as it would appear in a JSON report, so that
 *  numbers shown in text output and numbers embedded in JSON are
 *  byte-identical (shortest round-trip representation). */
inline std::string fmt_double(double value) {
  return nlohmann::json(value).dump();
}

}  // namespace printscore
