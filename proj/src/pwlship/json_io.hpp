// Copyright 2026 pwlship contributors
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

#ifndef PWLSHIP_JSON_IO_HPP
#define PWLSHIP_JSON_IO_HPP

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "pwlship/lswrc.hpp"
#include "pwlship/model.hpp"

namespace pwlship {

// A loaded instance file: either a route-evaluation instance or a lot
// sizing instance; meta carries the generator fingerprint verbatim.
struct InstanceFile {
  std::variant<Instance, LotSizingInstance> payload;
  nlohmann::json meta;

  bool is_lswrc() const {
    return std::holds_alternative<LotSizingInstance>(payload);
  }
  const Instance& areltp() const { return std::get<Instance>(payload); }
  const LotSizingInstance& lswrc() const {
    return std::get<LotSizingInstance>(payload);
  }
};

// Wire format (format 1): {type, n, cost, time?, qmax, tmax, profit,
// demand?, holding?, metric?, meta?}; forbidden arcs are nulls; time
// absent means time = cost; numbers integral where the data is.
nlohmann::json instance_to_json(const InstanceFile& file);
InstanceFile instance_from_json(const nlohmann::json& j);

std::string save_instance(const InstanceFile& file);  // serialized, 2-space
InstanceFile load_instance_file(const std::string& path);
void save_instance_file(const InstanceFile& file, const std::string& path);

nlohmann::json solution_to_json(const Solution& sol);
Solution solution_from_json(const nlohmann::json& j, int n);

// Emits integral doubles as JSON integers so integer instances round-trip
// bit-exactly.
nlohmann::json number(double v);

}  // namespace pwlship

#endif  // PWLSHIP_JSON_IO_HPP
