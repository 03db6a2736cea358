// Copyright 2026 The cfforge Authors
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

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfforge/filling.hpp"
#include "cfforge/forcing.hpp"
#include "cfforge/orbit.hpp"

namespace cfforge::io {

using json = nlohmann::json;

/// Malformed input; the message names the offending field path.
class JsonError : public std::runtime_error {
public:
    JsonError(const std::string& path, const std::string& what);
    std::string path;
};

json to_json(const Rat& r);
json to_json(const Vec& v);
json to_json(const BoxSet& b);
json to_json(const CFSchedule& s);
json to_json(const Cylinder& c);
json to_json(const GridMax& g);
json to_json(const Certificate& c);
json to_json(const AuxFlowSpec& a);
json to_json(const SweepRow& r);
/// N, Q, work level, parts and per-part masses of a fill.
json to_json(const FillingResult& r, const CFSchedule& s);
json to_json(const BuildReport& r);

Rat rat_from(const json& j, const std::string& path = "$");
Vec vec_from(const json& j, const std::string& path = "$");
BoxSet boxset_from(const json& j, const std::string& path = "$");
/// Parses and validates; throws ValidationError for invalid schedules.
CFSchedule schedule_from(const json& j, const std::string& path = "$");
Cylinder cylinder_from(const json& j, const std::string& path = "$");
GridMax gridmax_from(const json& j, const std::string& path = "$");
Certificate certificate_from(const json& j, const std::string& path = "$");
AuxFlowSpec aux_from(const json& j, const std::string& path = "$");
/// A single spec object or an array of per-step specs.
std::vector<AuxFlowSpec> aux_list_from(const json& j, const std::string& path = "$");

/// Schedule plus forcing bookkeeping, as written by `forge build`.
struct FlowFile {
    CFSchedule schedule = CFSchedule::validate(1, {CFLevel{Rat(1), {}}}, false);
    std::vector<int> markers;
    std::vector<int> p_seq;
    std::vector<int> d_values;
};

json flow_to_json(const ForcingState& st);
/// Accepts a plain schedule file (markers etc. left empty) or a flow file.
FlowFile flow_from(const json& j, const std::string& path = "$");

json certificates_to_json(const std::vector<Certificate>& certs);
std::vector<Certificate> certificates_from(const json& j, const std::string& path = "$");

json read_file(const std::string& file);
/// Two-space indented dump with a trailing newline.
void write_file(const std::string& file, const json& j);
std::string dump(const json& j);

}  // namespace cfforge::io
