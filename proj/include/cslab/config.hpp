// Copyright 2026 The cslab Authors
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
#include <utility>
#include <vector>

#include "cslab/experiments.hpp"

namespace cslab {

/// Applies one `key = value` setting to `cfg`. Keys are the kebab-case
/// ExperimentConfig field names. Throws ConfigError naming the key.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses flat `key = value` text, one per line, `#` starting a comment.
/// Settings are applied on top of `base`.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});

/// Reads a config file; a missing file raises ConfigError with key "config".
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// Splits `key=value`; throws ConfigError when there is no '='.
std::pair<std::string, std::string> split_override(const std::string& text);

/// Every recognised key, in documentation order.
const std::vector<std::string>& config_keys();

std::string policy_name(DecodePolicy p);

}  // namespace cslab
