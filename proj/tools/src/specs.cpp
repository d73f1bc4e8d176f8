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

#include "specs.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "dhdcert/error.hpp"
#include "dhdcert/negativity.hpp"

namespace dhdcert::cli {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string &pointer, const std::string &what) {
    throw Error(ErrorCode::kUsage, "state spec " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json &field(const json &obj, const char *key, const std::string &pointer) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_error(pointer + "/" + key, "missing required field");
    }
    return *it;
}

double number(const json &obj, const char *key, const std::string &pointer) {
    const json &v = field(obj, key, pointer);
    if (!v.is_number()) {
        schema_error(pointer + "/" + key, "expected a number");
    }
    return v.get<double>();
}

double number_or(const json &obj, const char *key, double fallback, const std::string &pointer) {
    return obj.contains(key) ? number(obj, key, pointer) : fallback;
}

int integer(const json &obj, const char *key, const std::string &pointer) {
    const json &v = field(obj, key, pointer);
    if (!v.is_number_integer()) {
        schema_error(pointer + "/" + key, "expected an integer");
    }
    return v.get<int>();
}

std::vector<cplx> coefficient_list(const json &arr, const std::string &pointer) {
    if (!arr.is_array() || arr.empty()) {
        schema_error(pointer, "expected a non-empty array of coefficients");
    }
    std::vector<cplx> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json &c = arr[i];
        if (c.is_number()) {
            out.emplace_back(c.get<double>(), 0.0);
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            out.emplace_back(c[0].get<double>(), c[1].get<double>());
        } else {
            schema_error(pointer + "/" + std::to_string(i), "expected a number or [re, im]");
        }
    }
    return out;
}

// Unpacks a single-key object {"name": {params}}.
std::pair<std::string, const json *> stage(const json &spec, const std::string &pointer) {
    if (!spec.is_object() || spec.size() != 1) {
        schema_error(pointer, "each stage must be an object with exactly one constructor key");
    }
    auto it = spec.begin();
    if (!it.value().is_object()) {
        schema_error(pointer + "/" + it.key(), "parameters must be an object");
    }
    return {it.key(), &it.value()};
}

TruncatedState construct(const std::string &name, const json &p, const std::string &ptr) {
    if (name == "fock") {
        return make_fock(integer(p, "n", ptr), integer(p, "dim", ptr));
    }
    if (name == "lossy_fock") {
        return make_lossy_fock(integer(p, "n", ptr), number(p, "eta", ptr),
                               integer(p, "dim", ptr));
    }
    if (name == "squeezed_thermal") {
        double r = 0.0;
        if (p.contains("db")) {
            r = squeeze_r_from_db(number(p, "db", ptr));
        } else {
            r = number(p, "r", ptr);
        }
        return make_squeezed_thermal(r, number_or(p, "theta", 0.0, ptr),
                                     number_or(p, "purity", 1.0, ptr), integer(p, "dim", ptr));
    }
    if (name == "core") {
        GaussianUnitaryParams frame;
        if (p.contains("frame")) {
            frame = parse_frame(p.at("frame"), ptr + "/frame");
        }
        CoreState core = CoreState::normalized(coefficient_list(field(p, "coeffs", ptr), ptr + "/coeffs"),
                                               frame);
        return make_pure(core, integer(p, "dim", ptr));
    }
    schema_error(ptr, "unknown constructor '" + name + "'");
}

TruncatedState transform(const TruncatedState &in, const std::string &name, const json &p,
                         const std::string &ptr) {
    if (name == "photon_subtract") {
        return photon_subtract(in);
    }
    if (name == "photon_add") {
        return photon_add(in);
    }
    if (name == "gaussian") {
        GaussianUnitaryParams g = parse_frame(p, ptr);
        int dim = p.contains("dim") ? integer(p, "dim", ptr) : gaussian_output_dim(in, g);
        return apply_gaussian(in, g, dim);
    }
    schema_error(ptr, "unknown transform '" + name + "'");
}

bool is_transform(const std::string &name) {
    return name == "photon_subtract" || name == "photon_add" || name == "gaussian";
}

}  // namespace

GaussianUnitaryParams parse_frame(const json &frame, const std::string &pointer) {
    if (!frame.is_object()) {
        schema_error(pointer, "expected an object with r, theta, re_beta, im_beta");
    }
    GaussianUnitaryParams g;
    g.squeeze_r = number_or(frame, "r", 0.0, pointer);
    g.squeeze_theta = number_or(frame, "theta", 0.0, pointer);
    g.displacement = cplx{number_or(frame, "re_beta", 0.0, pointer),
                          number_or(frame, "im_beta", 0.0, pointer)};
    return g;
}

TruncatedState build_state(const json &spec) {
    if (spec.is_object()) {
        auto [name, params] = stage(spec, "");
        if (is_transform(name)) {
            schema_error("/" + name, "a transform needs an input state; use a pipeline array");
        }
        return construct(name, *params, "/" + name);
    }
    if (!spec.is_array() || spec.empty()) {
        schema_error("", "expected a constructor object or a non-empty pipeline array");
    }
    std::optional<TruncatedState> state;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const std::string base = "/" + std::to_string(i);
        auto [name, params] = stage(spec[i], base);
        const std::string ptr = base + "/" + name;
        if (i == 0) {
            if (is_transform(name)) {
                schema_error(ptr, "the first stage must construct a state");
            }
            state = construct(name, *params, ptr);
        } else {
            if (!is_transform(name)) {
                schema_error(ptr, "only transforms may follow the first stage");
            }
            state = transform(*state, name, *params, ptr);
        }
    }
    return *state;
}

namespace {

int parse_int(std::string_view s, const std::string &what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error(ErrorCode::kUsage, "cannot parse " + what + " from '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s) {
    std::string tmp(s);
    char *end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::kUsage, "cannot parse a number from '" + tmp + "'");
    }
    return v;
}

}  // namespace

cplx parse_complex(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return {parse_double(text), 0.0};
    }
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

TargetSpec parse_target(std::string_view text) {
    TargetSpec t;
    t.text = std::string(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::kUsage, "target must look like kind:args, got '" + t.text + "'");
    }
    std::string_view kind = text.substr(0, colon);
    std::string_view args = text.substr(colon + 1);
    if (kind == "fock") {
        int n = parse_int(args, "Fock index");
        if (n < 0) {
            throw Error(ErrorCode::kUsage, "Fock index must be non-negative");
        }
        t.fock_n = n;
        t.core = CoreState::fock(n);
        t.op = TargetOperator::fock_projector(n);
    } else if (kind == "witness") {
        if (args.rfind("n=", 0) == 0) {
            args.remove_prefix(2);
        }
        int n = parse_int(args, "witness order");
        if (n < 1) {
            throw Error(ErrorCode::kUsage, "witness order must be >= 1");
        }
        t.witness_n = n;
        t.op = witness_operator(n);
    } else if (kind == "element") {
        auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw Error(ErrorCode::kUsage, "element target needs K,L");
        }
        int k = parse_int(args.substr(0, comma), "row index");
        int l = parse_int(args.substr(comma + 1), "column index");
        if (k < 0 || l < 0) {
            throw Error(ErrorCode::kUsage, "element indices must be non-negative");
        }
        t.op = TargetOperator::element(k, l);
    } else if (kind == "core") {
        json j = json::parse(args, nullptr, false);
        if (j.is_discarded()) {
            throw Error(ErrorCode::kUsage, "core target must be a JSON array or object");
        }
        GaussianUnitaryParams frame;
        std::vector<cplx> coeffs;
        if (j.is_object()) {
            coeffs = coefficient_list(field(j, "coeffs", ""), "/coeffs");
            if (j.contains("frame")) {
                frame = parse_frame(j.at("frame"), "/frame");
            }
        } else {
            coeffs = coefficient_list(j, "");
        }
        t.core = CoreState::normalized(std::move(coeffs), frame);
        if (frame.is_identity()) {
            t.op = TargetOperator::from_core(*t.core);
        }
    } else {
        throw Error(ErrorCode::kUsage, "unknown target kind '" + std::string(kind) + "'");
    }
    return t;
}

}  // namespace dhdcert::cli
