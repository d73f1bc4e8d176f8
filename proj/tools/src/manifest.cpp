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

#include "manifest.hpp"

#include <array>
#include <fstream>
#include <iterator>

#include <Eigen/Core>
#include <openssl/evp.h>

#include "dhdcert/error.hpp"
#include "dhdcert/version.hpp"

namespace dhdcert::cli {

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::kIo, "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kIo, "cannot read " + path + " for hashing");
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

nlohmann::ordered_json manifest_json(const RunManifest &m) {
    nlohmann::ordered_json j;
    j["command_line"] = m.argv;
    j["config"] = m.config;
    j["config_hash"] = sha256_hex(m.config.dump());
    if (m.seed) {
        j["seed"] = *m.seed;
    } else {
        j["seed"] = nullptr;
    }
    nlohmann::ordered_json versions;
    versions["dhdcert"] = DHDCERT_VERSION_STRING;
    versions["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION);
    versions["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    versions["compiler"] = __VERSION__;
    j["versions"] = versions;
    auto digests = [](const std::vector<std::string> &paths) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &p : paths) {
            arr.push_back({{"path", p}, {"sha256", sha256_file(p)}});
        }
        return arr;
    };
    j["inputs"] = digests(m.inputs);
    j["outputs"] = digests(m.outputs);
    j["wall_time_seconds"] = m.wall_time_seconds;
    return j;
}

std::vector<std::string> write_manifests(const RunManifest &m) {
    const std::string text = manifest_json(m).dump(2) + "\n";
    std::vector<std::string> written;
    for (const auto &out : m.outputs) {
        std::string path = out + ".manifest.json";
        std::ofstream f(path);
        if (!f || !(f << text)) {
            throw Error(ErrorCode::kIo, "cannot write manifest " + path);
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace dhdcert::cli
