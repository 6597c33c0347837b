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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "osr/aci.h"

namespace osr {

enum class EntityKind { kRole, kUser, kProcess, kObject };
std::string_view to_string(EntityKind k);
std::optional<EntityKind> parse_entity_kind(std::string_view s);

struct EntityRef {
  EntityKind kind = EntityKind::kObject;
  std::string id;
};

using TokenSet = std::set<std::string>;

// Value of one security attribute. Role and type lists are token sets;
// privilege vectors are bit vectors; ordinary rights lists are tables.
using AttrValue =
    std::variant<bool, std::string, TokenSet, PermissionBitVector, RightsTable>;

std::string describe(const AttrValue& v);

// Parses the text form produced by describe() (braces optional) into the
// alternative held by `like`. Throws kTypeMismatch.
AttrValue parse_attr_value(const AttrValue& like, std::string_view text);

// Attribute names are matched case-insensitively ("Active_roles" works).
// Throws kNotFound, kUnknownAttribute.
AttrValue get_attr(const StoreImage& image, const EntityRef& entity,
                   std::string_view attr_name);

// Routes to the validated model mutation for the attribute; never writes raw.
// Throws the model errors, kUnknownAttribute, kTypeMismatch.
void set_attr(StoreImage& image, const EntityRef& entity,
              std::string_view attr_name, const AttrValue& value,
              Journal* journal = nullptr);

// Attribute names readable on an entity (lower-case canonical names).
std::vector<std::string> attribute_names(const StoreImage& image,
                                         const EntityRef& entity);

}  // namespace osr
