// Copyright 2026 The cosetmoe Authors
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

#include "cosetmoe/report.h"

#include <openssl/sha.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace cosetmoe {

std::string sha256_hex(const std::string &data) {
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char *>(data.data()), data.size(), md);
    std::string out;
    char buf[3];
    for (unsigned char c : md) {
        std::snprintf(buf, sizeof buf, "%02x", c);
        out += buf;
    }
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json round_floats(const nlohmann::json &j) {
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            return nullptr;
        }
        return std::strtod(format_number(v).c_str(), nullptr);
    }
    if (j.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (auto it = j.begin(); it != j.end(); ++it) {
            out[it.key()] = round_floats(it.value());
        }
        return out;
    }
    if (j.is_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &v : j) {
            out.push_back(round_floats(v));
        }
        return out;
    }
    return j;
}

std::string canonical_dump(const nlohmann::json &j) { return round_floats(j).dump(); }

nlohmann::json make_envelope(const std::string &command, const nlohmann::json &config,
                             uint64_t seed, const nlohmann::json &result) {
    return {{"version", kVersion},
            {"command", command},
            {"config", config},
            {"config_hash", sha256_hex(canonical_dump(config))},
            {"seed", seed},
            {"result", result}};
}

std::string render_json(const nlohmann::json &j) { return round_floats(j).dump(2) + "\n"; }

std::string CsvTable::render() const {
    std::string out;
    for (size_t i = 0; i < header.size(); i++) {
        out += (i ? "," : "") + header[i];
    }
    out += '\n';
    for (const auto &row : rows) {
        for (size_t i = 0; i < row.size(); i++) {
            if (i) {
                out += ',';
            }
            const nlohmann::json &v = row[i];
            if (v.is_number_float()) {
                out += format_number(v.get<double>());
            } else if (v.is_string()) {
                out += v.get<std::string>();
            } else if (!v.is_null()) {
                out += v.dump();
            }
        }
        out += '\n';
    }
    return out;
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << content;
    if (!f) {
        throw std::runtime_error("failed writing " + path);
    }
}

}  // namespace cosetmoe
