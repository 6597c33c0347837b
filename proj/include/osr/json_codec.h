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

#pragma once

#include <nlohmann/json.hpp>

#include "osr/aci.h"
#include "osr/attributes.h"
#include "osr/request.h"

// JSON shapes shared by the admin service, the HTTP layer and osrctl.
// Documented in docs/http-api.md.
namespace osr::json {

using Json = nlohmann::ordered_json;

Json to_json(const AttrValue& v);
// Converts to the alternative held by `like`; strings are accepted for every
// alternative using the text forms of parse_attr_value. Throws kTypeMismatch.
AttrValue attr_from_json(const AttrValue& like, const Json& j);

// Every attribute of the entity, keyed by attribute name.
Json entity_to_json(const StoreImage& image, const EntityRef& entity);

// Missing fields default to empty lists / zero vectors. Unknown keys are
// rejected with kUnknownAttribute.
RoleRecord role_from_json(const Json& j, const RightsRegistry& registry);

Json registry_to_json(const RightsRegistry& registry);
Json decision_to_json(const Decision& d);
Json request_to_json(const AccessRequest& r);

// {"subject","request","target_kind","target", "params": {...}}.
// Throws kBadArguments, kUnknownRequest, kUnknownTargetKind.
AccessRequest request_from_json(const Json& j);

}  // namespace osr::json
