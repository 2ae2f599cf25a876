// Copyright 2026 The netbargain Authors
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


#include "netbargain/io.h"

#include <algorithm>

#include "json.hpp"
#include "netbargain/error.h"

namespace netbargain {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, path + ": " + what);
}

Json ParseDocument(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const size_t offset = std::min<size_t>(e.byte, text.size());
    const size_t line = 1 + std::count(text.begin(), text.begin() + offset, '\n');
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + e.what());
  }
}

const Json& Field(const Json& object, const char* key, const std::string& path) {
  if (!object.is_object()) Fail(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) Fail(path + "." + key, "missing");
  return *it;
}

std::string String(const Json& value, const std::string& path) {
  if (!value.is_string()) Fail(path, "expected a string");
  return value.get<std::string>();
}

Rational RationalField(const Json& value, const std::string& path) {
  if (value.is_number_integer()) {
    return Rational(value.dump());
  }
  if (!value.is_string()) Fail(path, "expected a \"p/q\" string");
  const std::string text = value.get<std::string>();
  auto parsed = ParseRational(text);
  if (!parsed) Fail(path, "'" + text + "' is not an exact rational \"p/q\"");
  return *parsed;
}

}  // namespace

InstanceDescription ParseInstanceDescription(std::string_view text) {
  Json doc = ParseDocument(text);
  if (doc.is_object() && !doc.contains("mode") && doc.contains("instance")) {
    doc = Json(doc["instance"]);
  }
  InstanceDescription d;
  const std::string mode = String(Field(doc, "mode", "$"), "$.mode");
  auto parsed_mode = ParseMode(mode);
  if (!parsed_mode) Fail("$.mode", "unknown mode '" + mode + "'");
  d.mode = *parsed_mode;

  const Json& agents = Field(doc, "agents", "$");
  if (!agents.is_array()) Fail("$.agents", "expected an array");
  for (size_t k = 0; k < agents.size(); ++k) {
    const std::string path = "$.agents[" + std::to_string(k) + "]";
    const Json& a = agents[k];
    AgentSpec spec;
    spec.id = String(Field(a, "id", path), path + ".id");
    if (auto it = a.find("side"); it != a.end() && !it->is_null()) {
      const std::string side = String(*it, path + ".side");
      if (side == "A") {
        spec.side = Side::kA;
      } else if (side == "B") {
        spec.side = Side::kB;
      } else {
        Fail(path + ".side", "expected \"A\", \"B\" or null");
      }
    }
    if (auto it = a.find("capacity"); it != a.end()) {
      if (!it->is_number_integer()) Fail(path + ".capacity", "expected an integer");
      const auto capacity = it->get<long long>();
      if (capacity < 1 || capacity > 1'000'000) Fail(path + ".capacity", "out of range");
      spec.capacity = static_cast<int>(capacity);
    }
    d.agents.push_back(std::move(spec));
  }

  const Json& edges = Field(doc, "edges", "$");
  if (!edges.is_array()) Fail("$.edges", "expected an array");
  for (size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "$.edges[" + std::to_string(k) + "]";
    const Json& e = edges[k];
    d.edges.push_back({String(Field(e, "u", path), path + ".u"),
                       String(Field(e, "v", path), path + ".v"),
                       RationalField(Field(e, "w", path), path + ".w")});
  }
  return d;
}

Instance ParseInstance(std::string_view text) {
  return Instance::Build(ParseInstanceDescription(text));
}

std::string SerializeInstance(const Instance& inst) {
  Json doc;
  doc["mode"] = std::string(ModeName(inst.mode()));
  doc["agents"] = Json::array();
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    Json agent;
    agent["id"] = inst.id(a);
    agent["side"] = inst.side(a) == Side::kNone ? Json(nullptr) : Json(std::string(SideName(inst.side(a))));
    agent["capacity"] = inst.capacity(a);
    doc["agents"].push_back(std::move(agent));
  }
  doc["edges"] = Json::array();
  for (const Edge& e : inst.edges()) {
    doc["edges"].push_back({{"u", inst.id(e.u)}, {"v", inst.id(e.v)}, {"w", FormatRational(e.weight)}});
  }
  return doc.dump(2) + "\n";
}

Allocation ParseAllocation(std::string_view text, const Instance& inst) {
  const Json doc = ParseDocument(text);
  std::string path = "$";
  const Json* body = &doc;
  if (doc.is_object() && doc.contains("allocation")) {
    body = &doc["allocation"];
    path = "$.allocation";
  }
  if (!body->is_object()) Fail(path, "expected an object of agent payoffs");
  Allocation x(inst.num_agents());
  std::vector<bool> seen(inst.num_agents(), false);
  for (const auto& [id, value] : body->items()) {
    auto a = inst.IndexOf(id);
    if (!a) Fail(path + "." + id, "unknown agent");
    x[*a] = RationalField(value, path + "." + id);
    seen[*a] = true;
  }
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (!seen[a]) Fail(path + "." + inst.id(a), "missing");
  }
  return x;
}

std::string SerializeAllocation(const Instance& inst, const Allocation& x) {
  if (x.size() != static_cast<size_t>(inst.num_agents())) {
    throw Error(ErrorCode::kLengthMismatch, "allocation length differs from the agent count");
  }
  Json body = Json::object();
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) body[inst.id(a)] = FormatRational(x[a]);
  return Json{{"allocation", body}}.dump(2) + "\n";
}

}  // namespace netbargain
