/*
 * Copyright (c) 2026 The osr-rbac Authors. All rights reserved.
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#include "osr/json_codec.h"

#include "osr/error.h"

namespace osr::json {
namespace {

[[noreturn]] void mismatch(const std::string& what, const Json& j) {
  throw OsrError(ErrorCode::kTypeMismatch,
                 "expected " + what + ", got " + j.dump(), j.dump());
}

[[noreturn]] void bad_args(const std::string& msg) {
  throw OsrError(ErrorCode::kBadArguments, msg);
}

TokenSet tokens_from_json(const Json& j) {
  if (!j.is_array()) mismatch("array of strings", j);
  TokenSet out;
  for (const auto& t : j) {
    if (!t.is_string()) mismatch("array of strings", j);
    out.insert(t.get<std::string>());
  }
  return out;
}

std::string string_field(const Json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) bad_args(std::string("missing field '") + key + "'");
    return {};
  }
  if (!j.at(key).is_string()) mismatch(std::string("string for '") + key + "'", j.at(key));
  return j.at(key).get<std::string>();
}

}  // namespace

Json to_json(const AttrValue& v) {
  struct Visitor {
    Json operator()(bool b) const { return b; }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(const TokenSet& s) const {
      Json a = Json::array();
      for (const auto& t : s) a.push_back(t);
      return a;
    }
    Json operator()(const PermissionBitVector& b) const { return b.to_string(); }
    Json operator()(const RightsTable& t) const {
      Json o = Json::object();
      for (const auto& [type, bits] : t) o[type.str()] = bits.to_string();
      return o;
    }
  };
  return std::visit(Visitor{}, v);
}

AttrValue attr_from_json(const AttrValue& like, const Json& j) {
  if (j.is_string() && !std::holds_alternative<std::string>(like)) {
    return parse_attr_value(like, j.get<std::string>());
  }
  if (std::holds_alternative<bool>(like)) {
    if (!j.is_boolean()) mismatch("boolean", j);
    return j.get<bool>();
  }
  if (std::holds_alternative<std::string>(like)) {
    if (!j.is_string()) mismatch("string", j);
    return j.get<std::string>();
  }
  if (std::holds_alternative<TokenSet>(like)) return tokens_from_json(j);
  if (std::holds_alternative<PermissionBitVector>(like)) mismatch("bit string", j);
  if (!j.is_object()) mismatch("object of type -> bit string", j);
  RightsTable table;
  for (const auto& [type, bits] : j.items()) {
    if (!bits.is_string()) mismatch("bit string", bits);
    table[TypeId{type}] = PermissionBitVector::from_string(bits.get<std::string>());
  }
  return table;
}

Json entity_to_json(const StoreImage& image, const EntityRef& entity) {
  Json out = Json::object();
  out["id"] = entity.id;
  for (const auto& name : attribute_names(image, entity)) {
    out[name] = to_json(get_attr(image, entity, name));
  }
  return out;
}

RoleRecord role_from_json(const Json& j, const RightsRegistry& registry) {
  if (!j.is_object()) mismatch("role object", j);
  RoleRecord r;
  r.permissions = PermissionSet::empty(registry);
  for (const auto& [key, value] : j.items()) {
    if (key == "id") {
      r.id = RoleId{string_field(j, "id", true)};
    } else if (key == "name") {
      r.name = string_field(j, "name", true);
    } else if (key == "child_roles") {
      r.child_roles = from_strings<RoleId>(tokens_from_json(value));
    } else if (key == "static_conflict_roles") {
      r.static_conflict_roles = from_strings<RoleId>(tokens_from_json(value));
    } else if (key == "dynamic_conflict_roles") {
      r.dynamic_conflict_roles = from_strings<RoleId>(tokens_from_json(value));
    } else {
      bool matched = false;
      for (auto c : kAllRightsCategories) {
        if (key == role_attribute_name(c)) {
          r.permissions.table(c) = std::get<RightsTable>(attr_from_json(RightsTable{}, value));
          matched = true;
        }
      }
      for (auto c : kAllPrivilegeClasses) {
        if (key == role_attribute_name(c)) {
          if (!value.is_string()) mismatch("bit string", value);
          r.permissions.privilege(c) =
              PermissionBitVector::from_string(value.get<std::string>());
          matched = true;
        }
      }
      if (!matched) {
        throw OsrError(ErrorCode::kUnknownAttribute,
                       "unknown role field '" + key + "'", key);
      }
    }
  }
  if (r.id.empty()) bad_args("role needs an 'id'");
  if (r.name.empty()) r.name = r.id.str();
  return r;
}

Json registry_to_json(const RightsRegistry& reg) {
  Json out;
  Json ordinary = Json::object();
  for (auto c : kAllRightsCategories) {
    ordinary[std::string(to_string(c))] = reg.ordinary[static_cast<size_t>(c)];
  }
  out["ordinary"] = std::move(ordinary);
  Json privileges = Json::object();
  for (auto c : kAllPrivilegeClasses) {
    privileges[std::string(to_string(c))] = reg.privileges[static_cast<size_t>(c)];
  }
  out["privileges"] = std::move(privileges);
  Json types = Json::array();
  for (const auto& t : reg.object_types) {
    types.push_back({{"id", t.id.str()}, {"name", t.name}});
  }
  out["object_types"] = std::move(types);
  out["scd_types"] = reg.scd_types;
  return out;
}

Json decision_to_json(const Decision& d) {
  Json out;
  out["verdict"] = std::string(to_string(d.verdict));
  out["reason"] = d.reason;
  out["detail"] = d.detail;
  Json post = Json::array();
  for (auto a : d.post_actions) post.push_back(std::string(to_string(a)));
  out["post_actions"] = std::move(post);
  Json mods = Json::array();
  for (const auto& m : d.module_verdicts) {
    mods.push_back({{"module", m.module}, {"verdict", std::string(to_string(m.verdict))}});
  }
  out["module_verdicts"] = std::move(mods);
  return out;
}

Json request_to_json(const AccessRequest& r) {
  Json out;
  out["subject"] = r.subject.str();
  out["request"] = std::string(to_string(r.type));
  out["target_kind"] = std::string(to_string(r.target.kind));
  out["target"] = r.target.id;
  Json p = Json::object();
  if (r.params.new_owner) p["new_owner"] = r.params.new_owner->str();
  if (r.params.exec_file) p["exec_file"] = r.params.exec_file->str();
  if (r.params.explicit_type) p["type"] = r.params.explicit_type->str();
  if (r.params.app_right) p["app_right"] = *r.params.app_right;
  out["params"] = std::move(p);
  return out;
}

AccessRequest request_from_json(const Json& j) {
  if (!j.is_object()) mismatch("request object", j);
  AccessRequest r;
  r.subject = ProcessId{string_field(j, "subject", true)};
  const std::string type = string_field(j, "request", true);
  auto rt = parse_request_type(type);
  if (!rt) throw OsrError(ErrorCode::kUnknownRequest, "unknown request '" + type + "'", type);
  r.type = *rt;
  std::string kind = string_field(j, "target_kind", false);
  if (kind.empty()) kind = "T_NONE";
  auto tk = parse_target_kind(kind);
  if (!tk) {
    throw OsrError(ErrorCode::kUnknownTargetKind, "unknown target kind '" + kind + "'",
                   kind);
  }
  r.target = {*tk, string_field(j, "target", false)};
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (!p.is_object()) mismatch("params object", p);
    for (const auto& [key, value] : p.items()) {
      if (!value.is_string()) mismatch("string for param '" + key + "'", value);
      std::string v = value.get<std::string>();
      if (key == "new_owner") r.params.new_owner = UserId{v};
      else if (key == "exec_file") r.params.exec_file = ObjectId{v};
      else if (key == "type") r.params.explicit_type = TypeId{v};
      else if (key == "app_right") r.params.app_right = v;
      else bad_args("unknown param '" + key + "'");
    }
  }
  return r;
}

}  // namespace osr::json
