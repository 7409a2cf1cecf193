// Copyright 2026 The cqa Authors.
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

#pragma once

#include <string>

#include "cqa/constraint_detection.h"
#include "cqa/lf_generation.h"
#include "cqa/ranking.h"

namespace cqa {

struct Config {
  std::string lexicon_path;
  std::string embeddings_path;
  DetectionConfig detection;
  double link_floor = 0.5;
  GenerationConfig generation;
  RankerWeights ranker;
};

// Reads a JSON config. Missing keys keep their defaults; relative file paths
// resolve against the config file's directory. Throws std::runtime_error on
// malformed input or out-of-range values.
Config load_config(const std::string& path);
Config parse_config(std::string_view json_text, const std::string& base_dir = ".");

// Throws std::invalid_argument describing the first bad value.
void check_config(const Config& c);

}  // namespace cqa
