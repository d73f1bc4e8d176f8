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

#include "dhdcert/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dhdcert/error.hpp"

namespace dhdcert {

void write_state_json(const TruncatedState &state, std::ostream &out) {
    const int dim = state.dim();
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (int i = 0; i < dim; ++i) {
        nlohmann::ordered_json rr = nlohmann::ordered_json::array();
        nlohmann::ordered_json ri = nlohmann::ordered_json::array();
        for (int j = 0; j < dim; ++j) {
            rr.push_back(state(i, j).real());
            ri.push_back(state(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    nlohmann::ordered_json j;
    j["dim"] = dim;
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    j["trace_deficit"] = state.trace_deficit();
    out << j.dump() << '\n';
}

TruncatedState read_state_json(std::istream &in) {
    nlohmann::json j;
    try {
        in >> j;
        const int dim = j.at("dim").get<int>();
        if (dim < 1) {
            throw Error(ErrorCode::kIo, "state file: dim must be positive");
        }
        const auto &re = j.at("re");
        const auto &im = j.at("im");
        if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(dim) ||
            im.size() != static_cast<std::size_t>(dim)) {
            throw Error(ErrorCode::kIo, "state file: re/im must be dim x dim arrays");
        }
        Eigen::MatrixXcd m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const auto &rr = re[static_cast<std::size_t>(r)];
            const auto &ri = im[static_cast<std::size_t>(r)];
            if (rr.size() != static_cast<std::size_t>(dim) ||
                ri.size() != static_cast<std::size_t>(dim)) {
                throw Error(ErrorCode::kIo, "state file: ragged matrix row " + std::to_string(r));
            }
            for (int c = 0; c < dim; ++c) {
                m(r, c) = cplx{rr[static_cast<std::size_t>(c)].get<double>(),
                               ri[static_cast<std::size_t>(c)].get<double>()};
            }
        }
        return TruncatedState(std::move(m), j.at("trace_deficit").get<double>());
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kIo, std::string("state file: ") + e.what());
    }
}

TruncatedState load_state(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIo, "cannot open state file " + path);
    }
    return read_state_json(in);
}

void save_state(const TruncatedState &state, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::kIo, "cannot write state file " + path);
    }
    write_state_json(state, out);
    if (!out) {
        throw Error(ErrorCode::kIo, "write failed for " + path);
    }
}

}  // namespace dhdcert
