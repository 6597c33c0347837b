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

#include "osr/persistence.h"

#include <openssl/evp.h>
#include <sys/stat.h>

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "osr/codec.h"
#include "osr/error.h"
#include "osr/model.h"

namespace osr::persistence {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kStagingDir = ".staging";
constexpr std::string_view kCompleteMarker = "COMPLETE";
constexpr std::string_view kFormatName = "osr-aci";

// --- encoding ---------------------------------------------------------------

std::string encode(std::string_view s) { return codec::percent_encode(s); }
std::optional<std::string> decode(std::string_view s) {
  return codec::percent_decode(s);
}

template <typename Set>
std::string encode_list(const Set& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_same_v<std::decay_t<decltype(item)>, std::string>) {
      out += encode(item);
    } else {
      out += encode(item.str());
    }
  }
  return out;
}

std::string encode_table(const RightsTable& table) {
  std::string out;
  for (const auto& [type, bits] : table) {
    if (bits.none()) continue;
    if (!out.empty()) out += ';';
    out += encode(type.str()) + ':' + bits.to_string();
  }
  return out;
}

// --- line records -------------------------------------------------------------

struct Record {
  int line = 0;
  std::string kind;
  std::map<std::string, std::string> fields;
};

class RecordReader {
 public:
  RecordReader(std::string file, std::string_view text)
      : file_(std::move(file)) {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      size_t start = line.find_first_not_of(' ');
      if (start == std::string::npos || line[start] == '#') continue;
      records_.push_back(parse_line(line.substr(start), number));
    }
  }

  const std::vector<Record>& records() const { return records_; }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw OsrError(ErrorCode::kParseError,
                   file_ + ":" + std::to_string(line) + ": " + msg,
                   file_ + ":" + std::to_string(line));
  }

  // Consumes a field; reports it missing when required.
  std::string take(Record& r, const std::string& key) const {
    auto it = r.fields.find(key);
    if (it == r.fields.end()) fail(r.line, "missing field '" + key + "'");
    std::string v = std::move(it->second);
    r.fields.erase(it);
    return v;
  }

  std::string take_value(Record& r, const std::string& key) const {
    std::string raw = take(r, key);
    auto v = decode(raw);
    if (!v) fail(r.line, "bad percent-encoding in field '" + key + "'");
    return *v;
  }

  std::vector<std::string> take_list(Record& r, const std::string& key) const {
    std::string raw = take(r, key);
    std::vector<std::string> out;
    if (raw.empty()) return out;
    size_t pos = 0;
    for (;;) {
      size_t comma = raw.find(',', pos);
      auto piece = decode(std::string_view(raw).substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (!piece || piece->empty()) fail(r.line, "bad list in field '" + key + "'");
      out.push_back(*piece);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  template <typename IdT>
  std::set<IdT> take_ids(Record& r, const std::string& key) const {
    std::set<IdT> out;
    for (auto& s : take_list(r, key)) {
      if (!out.emplace(s).second) fail(r.line, "duplicate '" + s + "' in '" + key + "'");
    }
    return out;
  }

  bool take_bool(Record& r, const std::string& key) const {
    std::string v = take(r, key);
    if (v == "1") return true;
    if (v == "0") return false;
    fail(r.line, "field '" + key + "' must be 0 or 1");
  }

  uint64_t take_u64(Record& r, const std::string& key) const {
    std::string v = take(r, key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      fail(r.line, "field '" + key + "' must be a decimal integer");
    }
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      fail(r.line, "field '" + key + "' out of range");
    }
  }

  PermissionBitVector take_bits(Record& r, const std::string& key,
                                size_t width) const {
    std::string v = take(r, key);
    if (v.size() != width || v.find_first_not_of("01") != std::string::npos) {
      fail(r.line, "field '" + key + "' must be " + std::to_string(width) +
                       " bits of 0/1");
    }
    return PermissionBitVector::from_string(v);
  }

  RightsTable take_table(Record& r, const std::string& key, size_t width) const {
    std::string raw = take(r, key);
    RightsTable out;
    if (raw.empty()) return out;
    std::istringstream in(raw);
    std::string entry;
    while (std::getline(in, entry, ';')) {
      size_t colon = entry.find(':');
      if (colon == std::string::npos) fail(r.line, "bad table entry in '" + key + "'");
      auto type = decode(entry.substr(0, colon));
      std::string bits = entry.substr(colon + 1);
      if (!type || type->empty()) fail(r.line, "bad type key in '" + key + "'");
      if (bits.size() != width || bits.find_first_not_of("01") != std::string::npos) {
        fail(r.line, "entry '" + *type + "' in '" + key + "' must be " +
                         std::to_string(width) + " bits of 0/1");
      }
      if (!out.emplace(TypeId{*type}, PermissionBitVector::from_string(bits)).second) {
        fail(r.line, "duplicate type '" + *type + "' in '" + key + "'");
      }
    }
    return out;
  }

  void finish(const Record& r) const {
    if (!r.fields.empty()) {
      fail(r.line, "unknown field '" + r.fields.begin()->first + "' in " + r.kind);
    }
  }

 private:
  Record parse_line(const std::string& line, int number) const {
    Record r;
    r.line = number;
    std::istringstream in(line);
    in >> r.kind;
    std::string token;
    while (in >> token) {
      size_t eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail(number, "expected key=value, got '" + token + "'");
      }
      std::string key = token.substr(0, eq);
      if (!r.fields.emplace(key, token.substr(eq + 1)).second) {
        fail(number, "duplicate field '" + key + "'");
      }
    }
    return r;
  }

  std::string file_;
  std::vector<Record> records_;
};

// --- checksums and files ---------------------------------------------------

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw OsrError(ErrorCode::kIoFailure, "sha256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  }
  return out.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw OsrError(ErrorCode::kIoFailure, "cannot read " + p.string(), p.string());
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw OsrError(ErrorCode::kIoFailure, "read error on " + p.string(), p.string());
  return out.str();
}

void write_file_synced(const fs::path& p, std::string_view data) {
  int fd = ::open(p.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw OsrError(ErrorCode::kIoFailure, "cannot create " + p.string(), p.string());
  size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      ::close(fd);
      throw OsrError(ErrorCode::kIoFailure, "write error on " + p.string(), p.string());
    }
    done += static_cast<size_t>(n);
  }
  bool ok = ::fsync(fd) == 0;
  ok = (::close(fd) == 0) && ok;
  if (!ok) throw OsrError(ErrorCode::kIoFailure, "sync error on " + p.string(), p.string());
}

void sync_dir(const fs::path& dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

const std::array<std::string_view, 3> kDataFiles = {kRolesFile, kUsersFile,
                                                    kObjectsFile};

std::string& slot(StoreFiles& f, std::string_view name) {
  if (name == kRolesFile) return f.roles;
  if (name == kUsersFile) return f.users;
  if (name == kObjectsFile) return f.objects;
  return f.manifest;
}

std::string manifest_text(uint64_t generation, const ProcessId& system_process,
                          const StoreFiles& files) {
  std::ostringstream out;
  out << "# osr-rbac store manifest\n";
  out << "format name=" << kFormatName << " version=" << kFormatVersion
      << " generation=" << generation
      << " system_process=" << encode(system_process.str()) << "\n";
  StoreFiles copy = files;
  for (auto name : kDataFiles) {
    out << "file name=" << name << " sha256=" << sha256_hex(slot(copy, name)) << "\n";
  }
  return out.str();
}

struct Manifest {
  uint64_t generation = 0;
  ProcessId system_process;
  std::map<std::string, std::string> checksums;
};

Manifest parse_manifest(const std::string& origin, const std::string& text) {
  RecordReader rd(origin + "/" + std::string(kManifestFile), text);
  Manifest m;
  bool seen_format = false;
  for (Record r : rd.records()) {
    if (r.kind == "format") {
      if (seen_format) rd.fail(r.line, "duplicate format record");
      seen_format = true;
      if (rd.take(r, "name") != kFormatName) rd.fail(r.line, "unknown format name");
      uint64_t version = rd.take_u64(r, "version");
      if (version != static_cast<uint64_t>(kFormatVersion)) {
        rd.fail(r.line, "unsupported format version " + std::to_string(version));
      }
      m.generation = rd.take_u64(r, "generation");
      m.system_process = ProcessId{rd.take_value(r, "system_process")};
    } else if (r.kind == "file") {
      std::string name = rd.take(r, "name");
      std::string sum = rd.take(r, "sha256");
      if (std::find(kDataFiles.begin(), kDataFiles.end(), name) == kDataFiles.end()) {
        rd.fail(r.line, "unknown store file '" + name + "'");
      }
      if (!m.checksums.emplace(name, sum).second) {
        rd.fail(r.line, "duplicate file record '" + name + "'");
      }
    } else {
      rd.fail(r.line, "unknown record '" + r.kind + "'");
    }
    rd.finish(r);
  }
  if (!seen_format) rd.fail(1, "missing format record (version is mandatory)");
  for (auto name : kDataFiles) {
    if (!m.checksums.contains(std::string(name))) {
      rd.fail(1, "missing file record for " + std::string(name));
    }
  }
  return m;
}

// --- image sections -------------------------------------------------------

std::string serialize_roles(const StoreImage& image) {
  const auto& reg = image.registry;
  std::ostringstream out;
  out << "# rights registry, bit order\n";
  for (auto c : kAllRightsCategories) {
    out << "rights category=" << to_string(c)
        << " names=" << encode_list(reg.ordinary[static_cast<size_t>(c)]) << "\n";
  }
  for (auto c : kAllPrivilegeClasses) {
    out << "privileges class=" << to_string(c)
        << " names=" << encode_list(reg.privileges[static_cast<size_t>(c)]) << "\n";
  }
  for (const auto& t : reg.object_types) {
    out << "type id=" << encode(t.id.str()) << " name=" << encode(t.name) << "\n";
  }
  out << "scd_types names=" << encode_list(reg.scd_types) << "\n";
  out << "# roles\n";
  for (const auto& [id, r] : image.roles) {
    out << "role id=" << encode(id.str()) << " name=" << encode(r.name)
        << " child_roles=" << encode_list(r.child_roles)
        << " static_conflict_roles=" << encode_list(r.static_conflict_roles)
        << " dynamic_conflict_roles=" << encode_list(r.dynamic_conflict_roles)
        << " mutable=" << (r.mutable_permissions ? 1 : 0)
        << " kernel_only=" << (r.kernel_only ? 1 : 0);
    for (auto c : kAllRightsCategories) {
      out << " " << to_string(c) << "=" << encode_table(r.permissions.table(c));
    }
    for (auto c : kAllPrivilegeClasses) {
      out << " " << to_string(c) << "=" << r.permissions.privilege(c).to_string();
    }
    out << "\n";
  }
  return out.str();
}

std::string serialize_users(const StoreImage& image) {
  std::ostringstream out;
  out << "# users\n";
  for (const auto& [id, u] : image.users) {
    out << "user id=" << encode(id.str())
        << " max_roles=" << encode_list(u.max_roles)
        << " active_roles=" << encode_list(u.active_roles)
        << " default_object_type=" << encode(u.default_object_type.str())
        << " process_types_override=" << encode_list(u.process_types_override)
        << "\n";
  }
  return out.str();
}

std::string serialize_objects(const StoreImage& image) {
  std::ostringstream out;
  for (const auto& [device, objects] : image.objects_by_device()) {
    bool header = false;
    for (const ObjectAci* o : objects) {
      if (o->kind == ObjectKind::kIpc) continue;
      if (!header) {
        out << "# device " << encode(device) << "\n";
        header = true;
      }
      out << "object id=" << encode(o->id.str()) << " kind=" << to_string(o->kind)
          << " device=" << encode(o->device_id)
          << " rac_types=" << encode_list(o->rac_types)
          << " executable=" << (o->executable ? 1 : 0)
          << " exec_file_roles=" << encode_list(o->exec_file_roles) << "\n";
    }
  }
  return out.str();
}

void parse_registry_and_roles(const std::string& origin, const std::string& text,
                              StoreImage& image) {
  RecordReader rd(origin + "/" + std::string(kRolesFile), text);
  auto& reg = image.registry;
  std::set<std::string> seen_sections;
  std::vector<Record> role_records;

  for (Record r : rd.records()) {
    if (r.kind == "rights") {
      std::string cat = rd.take(r, "category");
      auto c = parse_rights_category(cat);
      if (!c) rd.fail(r.line, "unknown rights category '" + cat + "'");
      if (!seen_sections.insert("rights:" + cat).second) rd.fail(r.line, "duplicate rights record");
      reg.ordinary[static_cast<size_t>(*c)] = rd.take_list(r, "names");
    } else if (r.kind == "privileges") {
      std::string cls = rd.take(r, "class");
      auto c = parse_privilege_class(cls);
      if (!c) rd.fail(r.line, "unknown privilege class '" + cls + "'");
      if (!seen_sections.insert("privileges:" + cls).second) rd.fail(r.line, "duplicate privileges record");
      reg.privileges[static_cast<size_t>(*c)] = rd.take_list(r, "names");
    } else if (r.kind == "type") {
      ObjectTypeInfo t{TypeId{rd.take_value(r, "id")}, rd.take_value(r, "name")};
      if (reg.has_object_type(t.id)) rd.fail(r.line, "duplicate type '" + t.id.str() + "'");
      reg.object_types.push_back(std::move(t));
    } else if (r.kind == "scd_types") {
      if (!seen_sections.insert("scd").second) rd.fail(r.line, "duplicate scd_types record");
      reg.scd_types = rd.take_list(r, "names");
    } else if (r.kind == "role") {
      role_records.push_back(std::move(r));
      continue;
    } else {
      rd.fail(r.line, "unknown record '" + r.kind + "'");
    }
    rd.finish(r);
  }
  try {
    reg.validate();
  } catch (const OsrError& e) {
    rd.fail(1, e.what());
  }

  // Roles after the registry so widths are known regardless of line order.
  std::map<RoleId, int> lines;
  for (Record& r : role_records) {
    RoleRecord rec;
    rec.id = RoleId{rd.take_value(r, "id")};
    rec.name = rd.take_value(r, "name");
    rec.child_roles = rd.take_ids<RoleId>(r, "child_roles");
    rec.static_conflict_roles = rd.take_ids<RoleId>(r, "static_conflict_roles");
    rec.dynamic_conflict_roles = rd.take_ids<RoleId>(r, "dynamic_conflict_roles");
    rec.mutable_permissions = rd.take_bool(r, "mutable");
    rec.kernel_only = rd.take_bool(r, "kernel_only");
    rec.permissions = PermissionSet::empty(reg);
    for (auto c : kAllRightsCategories) {
      auto table = rd.take_table(r, std::string(to_string(c)), reg.width(c));
      for (const auto& [type, bits] : table) {
        if (!reg.valid_type_key(c, type)) {
          rd.fail(r.line, "undeclared type '" + type.str() + "' in " +
                              std::string(to_string(c)));
        }
      }
      rec.permissions.table(c) = std::move(table);
    }
    for (auto c : kAllPrivilegeClasses) {
      rec.permissions.privilege(c) =
          rd.take_bits(r, std::string(to_string(c)), reg.width(c));
    }
    rd.finish(r);
    rec.permissions.normalize();
    if (!lines.emplace(rec.id, r.line).second) {
      rd.fail(r.line, "duplicate role id '" + rec.id.str() + "'");
    }
    image.roles.emplace(rec.id, std::move(rec));
  }
  for (const auto& [id, rec] : image.roles) {
    for (const auto* set : {&rec.child_roles, &rec.static_conflict_roles,
                            &rec.dynamic_conflict_roles}) {
      for (const auto& ref : *set) {
        if (!image.roles.contains(ref)) {
          rd.fail(lines.at(id), "role '" + id.str() + "' references unknown role '" +
                                    ref.str() + "'");
        }
      }
    }
  }
}

void check_roles_exist(const RecordReader& rd, const StoreImage& image,
                       const RoleSet& roles, int line) {
  for (const auto& r : roles) {
    if (!image.roles.contains(r)) rd.fail(line, "unknown role '" + r.str() + "'");
  }
}

void check_types_exist(const RecordReader& rd, const StoreImage& image,
                       const TypeSet& types, int line) {
  for (const auto& t : types) {
    if (!image.registry.has_object_type(t)) {
      rd.fail(line, "undeclared type '" + t.str() + "'");
    }
  }
}

void parse_users(const std::string& origin, const std::string& text,
                 StoreImage& image) {
  RecordReader rd(origin + "/" + std::string(kUsersFile), text);
  for (Record r : rd.records()) {
    if (r.kind != "user") rd.fail(r.line, "unknown record '" + r.kind + "'");
    UserAci u;
    u.id = UserId{rd.take_value(r, "id")};
    u.max_roles = rd.take_ids<RoleId>(r, "max_roles");
    u.active_roles = rd.take_ids<RoleId>(r, "active_roles");
    u.default_object_type = TypeId{rd.take_value(r, "default_object_type")};
    u.process_types_override = rd.take_ids<TypeId>(r, "process_types_override");
    rd.finish(r);
    check_roles_exist(rd, image, u.max_roles, r.line);
    check_roles_exist(rd, image, u.active_roles, r.line);
    check_types_exist(rd, image, {u.default_object_type}, r.line);
    check_types_exist(rd, image, u.process_types_override, r.line);
    if (!image.users.emplace(u.id, u).second) {
      rd.fail(r.line, "duplicate user id '" + u.id.str() + "'");
    }
  }
}

void parse_objects(const std::string& origin, const std::string& text,
                   StoreImage& image) {
  RecordReader rd(origin + "/" + std::string(kObjectsFile), text);
  for (Record r : rd.records()) {
    if (r.kind != "object") rd.fail(r.line, "unknown record '" + r.kind + "'");
    ObjectAci o;
    o.id = ObjectId{rd.take_value(r, "id")};
    std::string kind = rd.take(r, "kind");
    auto k = parse_object_kind(kind);
    if (!k || *k == ObjectKind::kIpc) rd.fail(r.line, "bad object kind '" + kind + "'");
    o.kind = *k;
    o.device_id = rd.take_value(r, "device");
    o.rac_types = rd.take_ids<TypeId>(r, "rac_types");
    o.executable = rd.take_bool(r, "executable");
    o.exec_file_roles = rd.take_ids<RoleId>(r, "exec_file_roles");
    rd.finish(r);
    check_types_exist(rd, image, o.rac_types, r.line);
    check_roles_exist(rd, image, o.exec_file_roles, r.line);
    if (!image.objects.emplace(o.id, o).second) {
      rd.fail(r.line, "duplicate object id '" + o.id.str() + "'");
    }
  }
}

// Where each file of the current store lives: a completed staging area takes
// precedence for the files it still holds.
fs::path locate(const fs::path& dir, std::string_view name) {
  fs::path staged = dir / kStagingDir / name;
  if (fs::exists(dir / kStagingDir / kCompleteMarker) && fs::exists(staged)) {
    return staged;
  }
  return dir / name;
}

void step(const FlushStepHook& hook, const std::string& label) {
  if (hook) hook(label);
}

// Moves a completed staging area into place. Manifest goes last so a reader
// without staging support still sees a consistent pair.
void roll_forward(const fs::path& dir, const FlushStepHook& hook) {
  fs::path staging = dir / kStagingDir;
  for (auto name : kDataFiles) {
    if (fs::exists(staging / name)) {
      step(hook, "rename:" + std::string(name));
      fs::rename(staging / name, dir / name);
    }
  }
  if (fs::exists(staging / kManifestFile)) {
    step(hook, "rename:" + std::string(kManifestFile));
    fs::rename(staging / kManifestFile, dir / kManifestFile);
  }
  sync_dir(dir);
  step(hook, "cleanup");
  fs::remove_all(staging);
}

void write_all(const fs::path& dir, const StoreFiles& files,
               const FlushStepHook& hook) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OsrError(ErrorCode::kIoFailure, "cannot create " + dir.string(), dir.string());
  ::chmod(dir.c_str(), 0700);

  fs::path staging = dir / kStagingDir;
  if (fs::exists(staging / kCompleteMarker)) {
    roll_forward(dir, {});
  }
  fs::remove_all(staging);
  fs::create_directory(staging);
  ::chmod(staging.c_str(), 0700);

  StoreFiles copy = files;
  for (auto name : kDataFiles) {
    step(hook, "write:" + std::string(name));
    write_file_synced(staging / name, slot(copy, name));
  }
  step(hook, "write:" + std::string(kManifestFile));
  write_file_synced(staging / kManifestFile, files.manifest);
  sync_dir(staging);
  step(hook, "mark:" + std::string(kCompleteMarker));
  write_file_synced(staging / kCompleteMarker, "");
  sync_dir(staging);
  roll_forward(dir, hook);
}

}  // namespace

StoreImage persistent_view(const StoreImage& image) {
  StoreImage out = image;
  out.processes.clear();
  std::erase_if(out.objects,
                [](const auto& kv) { return kv.second.kind == ObjectKind::kIpc; });
  return out;
}

StoreFiles serialize(const StoreImage& image) {
  StoreFiles f;
  f.roles = serialize_roles(image);
  f.users = serialize_users(image);
  f.objects = serialize_objects(image);
  f.manifest = manifest_text(image.generation, image.system_process, f);
  return f;
}

StoreImage parse(const StoreFiles& files, const std::string& origin) {
  Manifest m = parse_manifest(origin, files.manifest);
  StoreImage image;
  parse_registry_and_roles(origin, files.roles, image);
  parse_users(origin, files.users, image);
  parse_objects(origin, files.objects, image);
  image.generation = m.generation;
  image.flushed_generation = m.generation;
  image.system_process = m.system_process;

  model::validate_image(image);

  StoreFiles copy = files;
  for (auto name : kDataFiles) {
    const std::string actual = sha256_hex(slot(copy, name));
    if (m.checksums.at(std::string(name)) != actual) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     origin + "/" + std::string(name) +
                         ": checksum does not match manifest (edited without seal?)",
                     std::string(name));
    }
  }
  return image;
}

StoreImage load_store(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir, ec)) return StoreImage{};
  if (!fs::is_directory(dir, ec)) {
    throw OsrError(ErrorCode::kIoFailure, dir.string() + " is not a directory",
                   dir.string());
  }
  if (!fs::exists(locate(dir, kManifestFile))) {
    for (auto name : kDataFiles) {
      if (fs::exists(dir / name)) {
        throw OsrError(ErrorCode::kIoFailure,
                       dir.string() + " holds " + std::string(name) +
                           " but no manifest",
                       dir.string());
      }
    }
    return StoreImage{};
  }
  StoreFiles files;
  files.manifest = read_file(locate(dir, kManifestFile));
  for (auto name : kDataFiles) slot(files, name) = read_file(locate(dir, name));
  return parse(files, dir.string());
}

bool flush_store(StoreImage& image, const fs::path& dir, const FlushStepHook& hook) {
  if (!image.dirty()) return false;
  StoreImage view = persistent_view(image);
  view.flushed_generation = view.generation;
  StoreFiles files = serialize(view);
  try {
    write_all(dir, files, hook);
  } catch (const OsrError&) {
    throw;
  } catch (const std::exception& e) {
    throw OsrError(ErrorCode::kIoFailure,
                   "flush to " + dir.string() + " interrupted: " + e.what(),
                   dir.string());
  }
  image.flushed_generation = image.generation;
  return true;
}

void seal_store(const fs::path& dir) {
  StoreFiles files;
  files.manifest = read_file(dir / kManifestFile);
  for (auto name : kDataFiles) slot(files, name) = read_file(dir / name);
  Manifest m = parse_manifest(dir.string(), files.manifest);
  files.manifest = manifest_text(m.generation, m.system_process, files);
  // Validate before committing the new checksums.
  parse(files, dir.string());
  write_all(dir, files, {});
}

}  // namespace osr::persistence
