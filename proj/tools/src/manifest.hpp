// Copyright 2026 The dhdcert Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dhdcert::cli {

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);
/// SHA-256 of a file's contents; kIo if it cannot be read.
std::string sha256_file(const std::string &path);

/// Provenance record written next to every output file as
/// `<output>.manifest.json`. Re-running `argv` reproduces the outputs
/// byte for byte; `dhdcert replay` does exactly that and checks the digests.
struct RunManifest {
    std::vector<std::string> argv;
    nlohmann::ordered_json config;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double wall_time_seconds = 0.0;
};

nlohmann::ordered_json manifest_json(const RunManifest &manifest);

/// Writes one manifest per output and returns their paths.
std::vector<std::string> write_manifests(const RunManifest &manifest);

}  // namespace dhdcert::cli
