#include "siasp/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "siasp/rng.hpp"

namespace siasp {

using json = nlohmann::json;

namespace {

std::string ref_str(const CameraRef& r) {
  return "[" + std::to_string(r.request_id) + "," + std::to_string(r.camera) + "]";
}

void canonical_order(PairConstraint& p) {
  if (p.b < p.a) std::swap(p.a, p.b);
}

void canonical_order(TernaryConstraint& t) {
  std::sort(t.members.begin(), t.members.end());
}

template <class T>
std::size_t sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  const auto before = v.size();
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return before - v.size();
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void structure_error(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg, 0, 0);
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> keys) {
  if (!obj.is_object()) structure_error(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(keys.begin(), keys.end(),
                     [&](const char* k) { return key == k; }) == keys.end())
      structure_error(path, "unknown key \"" + key + "\"");
  }
  for (const char* k : keys)
    if (!obj.contains(k)) structure_error(path, std::string("missing key \"") + k + "\"");
}

CameraRef read_ref(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    structure_error(path, "camera reference must be [request_id, camera]");
  if (!j[0].is_number_unsigned())
    structure_error(path, "request id must be a non-negative integer");
  if (!j[1].is_number_integer()) structure_error(path, "camera must be an integer");
  const auto camera = j[1].get<std::int64_t>();
  if (camera < 1 || camera > 4)
    throw InstanceError(path + ": camera " + std::to_string(camera) + " outside {1,2,3,4}");
  return CameraRef{j[0].get<RequestId>(), static_cast<int>(camera)};
}

}  // namespace

bool is_valid_camera(Kind kind, int camera) {
  return kind == Kind::Mono ? (camera >= 1 && camera <= 3) : camera == kStereoCamera;
}

std::string_view to_string(Kind kind) { return kind == Kind::Mono ? "mono" : "stereo"; }

const ImageRequest* Instance::find(RequestId id) const {
  auto it = std::find_if(requests.begin(), requests.end(),
                         [id](const ImageRequest& r) { return r.id == id; });
  return it == requests.end() ? nullptr : &*it;
}

RequestIndex::RequestIndex(const Instance& inst) : inst_(&inst) {
  sorted_.reserve(inst.requests.size());
  for (std::size_t i = 0; i < inst.requests.size(); ++i)
    sorted_.emplace_back(inst.requests[i].id, i);
  std::sort(sorted_.begin(), sorted_.end());
}

std::optional<std::size_t> RequestIndex::position(RequestId id) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(id, std::size_t{0}));
  if (it == sorted_.end() || it->first != id) return std::nullopt;
  return it->second;
}

const ImageRequest& RequestIndex::at(RequestId id) const {
  auto pos = position(id);
  if (!pos) throw InstanceError("unknown request id " + std::to_string(id));
  return inst_->requests[*pos];
}

bool RequestIndex::is_live(const CameraRef& ref) const {
  auto pos = position(ref.request_id);
  return pos && is_valid_camera(inst_->requests[*pos].kind, ref.camera);
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? what + " (line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ")"
                              : what),
      line_(line),
      column_(column) {}

std::size_t canonicalize(Instance& inst) {
  std::sort(inst.requests.begin(), inst.requests.end(),
            [](const ImageRequest& a, const ImageRequest& b) { return a.id < b.id; });
  for (auto& p : inst.pairs) canonical_order(p);
  for (auto& t : inst.ternaries) canonical_order(t);
  return sort_unique(inst.pairs) + sort_unique(inst.ternaries);
}

LoadResult load_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("syntax error: " + std::string(e.what()), line, col);
  }

  require_keys(doc, "$", {"name", "requests", "pairs", "ternaries"});
  if (!doc["name"].is_string()) structure_error("$.name", "expected a string");
  for (const char* key : {"requests", "pairs", "ternaries"})
    if (!doc[key].is_array()) structure_error(std::string("$.") + key, "expected an array");

  LoadResult out;
  Instance& inst = out.instance;
  inst.name = doc["name"].get<std::string>();

  const auto& reqs = doc["requests"];
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string path = "$.requests[" + std::to_string(i) + "]";
    const auto& r = reqs[i];
    require_keys(r, path, {"id", "weight", "kind"});
    if (!r["id"].is_number_unsigned())
      structure_error(path + ".id", "expected a non-negative integer");
    if (!r["weight"].is_number_integer()) structure_error(path + ".weight", "expected an integer");
    if (!r["kind"].is_string()) structure_error(path + ".kind", "expected \"mono\" or \"stereo\"");
    ImageRequest req;
    req.id = r["id"].get<RequestId>();
    req.weight = r["weight"].get<Weight>();
    if (req.weight < 1)
      throw InstanceError(path + ": weight " + std::to_string(req.weight) + " must be >= 1");
    const auto kind = r["kind"].get<std::string>();
    if (kind == "mono") {
      req.kind = Kind::Mono;
    } else if (kind == "stereo") {
      req.kind = Kind::Stereo;
    } else {
      structure_error(path + ".kind", "expected \"mono\" or \"stereo\", got \"" + kind + "\"");
    }
    inst.requests.push_back(req);
  }

  const auto& pairs = doc["pairs"];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "$.pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2)
      structure_error(path, "pair constraint must hold exactly two camera references");
    PairConstraint p{read_ref(pairs[i][0], path + "[0]"), read_ref(pairs[i][1], path + "[1]")};
    if (p.a == p.b) throw InstanceError(path + ": both members are " + ref_str(p.a));
    inst.pairs.push_back(p);
  }

  const auto& ters = doc["ternaries"];
  for (std::size_t i = 0; i < ters.size(); ++i) {
    const std::string path = "$.ternaries[" + std::to_string(i) + "]";
    if (!ters[i].is_array() || ters[i].size() != 3)
      structure_error(path, "ternary constraint must hold exactly three camera references");
    TernaryConstraint t;
    for (std::size_t k = 0; k < 3; ++k)
      t.members[k] = read_ref(ters[i][k], path + "[" + std::to_string(k) + "]");
    canonical_order(t);
    if (t.members[0] == t.members[1] || t.members[1] == t.members[2])
      throw InstanceError(path + ": repeated member");
    inst.ternaries.push_back(t);
  }

  out.duplicates_removed = canonicalize(inst);

  for (std::size_t i = 1; i < inst.requests.size(); ++i)
    if (inst.requests[i].id == inst.requests[i - 1].id)
      throw InstanceError("duplicate request id " + std::to_string(inst.requests[i].id));

  RequestIndex index(inst);
  auto check_ref = [&](const CameraRef& r, const std::string& where) {
    if (!index.position(r.request_id))
      throw InstanceError(where + ": references unknown request " + std::to_string(r.request_id));
  };
  for (const auto& p : inst.pairs) {
    check_ref(p.a, "pair " + ref_str(p.a) + "-" + ref_str(p.b));
    check_ref(p.b, "pair " + ref_str(p.a) + "-" + ref_str(p.b));
  }
  for (const auto& t : inst.ternaries)
    for (const auto& m : t.members) check_ref(m, "ternary containing " + ref_str(m));

  return out;
}

Instance parse_instance(std::string_view text) { return load_instance(text).instance; }

std::string serialize_instance(const Instance& original) {
  Instance inst = original;
  canonicalize(inst);

  auto ref = [](const CameraRef& r) {
    return "[" + std::to_string(r.request_id) + ", " + std::to_string(r.camera) + "]";
  };

  std::ostringstream os;
  os << "{\n  \"name\": " << json(inst.name).dump() << ",\n";
  os << "  \"requests\": [";
  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    const auto& r = inst.requests[i];
    os << (i ? ",\n    " : "\n    ") << "{\"id\": " << r.id << ", \"weight\": " << r.weight
       << ", \"kind\": \"" << to_string(r.kind) << "\"}";
  }
  os << (inst.requests.empty() ? "],\n" : "\n  ],\n");
  os << "  \"pairs\": [";
  for (std::size_t i = 0; i < inst.pairs.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << "[" << ref(inst.pairs[i].a) << ", " << ref(inst.pairs[i].b)
       << "]";
  os << (inst.pairs.empty() ? "],\n" : "\n  ],\n");
  os << "  \"ternaries\": [";
  for (std::size_t i = 0; i < inst.ternaries.size(); ++i) {
    const auto& m = inst.ternaries[i].members;
    os << (i ? ",\n    " : "\n    ") << "[" << ref(m[0]) << ", " << ref(m[1]) << ", " << ref(m[2])
       << "]";
  }
  os << (inst.ternaries.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  auto error = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };

  std::set<RequestId> seen;
  for (const auto& r : inst.requests) {
    if (!seen.insert(r.id).second) error("request " + std::to_string(r.id) + ": duplicate id");
    if (r.weight < 1)
      error("request " + std::to_string(r.id) + ": weight " + std::to_string(r.weight) + " < 1");
  }

  RequestIndex index(inst);
  // Returns false when the member is unusable (already reported).
  auto check_member = [&](const CameraRef& m, const std::string& what) {
    if (m.camera < 1 || m.camera > 4) {
      error(what + ": camera " + std::to_string(m.camera) + " outside {1,2,3,4}");
      return false;
    }
    auto pos = index.position(m.request_id);
    if (!pos) {
      error(what + ": references unknown request " + std::to_string(m.request_id));
      return false;
    }
    const auto kind = inst.requests[*pos].kind;
    if (!is_valid_camera(kind, m.camera))
      out.push_back({Severity::Advisory, what + ": invalid CameraRef " + ref_str(m) + " (" +
                                             std::string(to_string(kind)) +
                                             " request), member can never be active"});
    return true;
  };

  std::set<PairConstraint> pair_set;
  for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
    PairConstraint p = inst.pairs[i];
    const std::string what = "pair #" + std::to_string(i) + " " + ref_str(p.a) + "-" + ref_str(p.b);
    if (p.a == p.b) error(what + ": identical members");
    check_member(p.a, what);
    check_member(p.b, what);
    canonical_order(p);
    if (!pair_set.insert(p).second) error(what + ": duplicate constraint");
  }

  std::set<TernaryConstraint> ter_set;
  for (std::size_t i = 0; i < inst.ternaries.size(); ++i) {
    TernaryConstraint t = inst.ternaries[i];
    canonical_order(t);
    const std::string what = "ternary #" + std::to_string(i) + " " + ref_str(t.members[0]) + "-" +
                             ref_str(t.members[1]) + "-" + ref_str(t.members[2]);
    if (t.members[0] == t.members[1] || t.members[1] == t.members[2])
      error(what + ": repeated member");
    for (const auto& m : t.members) check_member(m, what);
    if (!ter_set.insert(t).second) error(what + ": duplicate constraint");
  }
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

InstanceStats instance_stats(const Instance& inst) {
  InstanceStats s;
  s.n_requests = inst.requests.size();
  s.n_stereo = static_cast<std::size_t>(
      std::count_if(inst.requests.begin(), inst.requests.end(),
                    [](const ImageRequest& r) { return r.kind == Kind::Stereo; }));
  s.n_ternary = inst.ternaries.size();
  s.n_constraints = inst.pairs.size() + s.n_ternary;
  return s;
}

Instance reduce_instance(const Instance& inst, std::size_t target_requests, std::uint64_t seed) {
  const std::size_t n = inst.requests.size();
  if (target_requests < 1 || target_requests > n)
    throw InstanceError("target size " + std::to_string(target_requests) + " outside [1, " +
                        std::to_string(n) + "]");

  // Partial Fisher-Yates over request positions.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < target_requests; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(order[i], order[j]);
  }

  Instance out;
  out.name = inst.name;
  std::unordered_set<RequestId> kept;
  for (std::size_t i = 0; i < target_requests; ++i) {
    out.requests.push_back(inst.requests[order[i]]);
    kept.insert(inst.requests[order[i]].id);
  }
  std::sort(out.requests.begin(), out.requests.end(),
            [](const ImageRequest& a, const ImageRequest& b) { return a.id < b.id; });

  auto survives = [&](const CameraRef& r) { return kept.count(r.request_id) > 0; };
  for (const auto& p : inst.pairs)
    if (survives(p.a) && survives(p.b)) out.pairs.push_back(p);
  for (const auto& t : inst.ternaries)
    if (std::all_of(t.members.begin(), t.members.end(), survives)) out.ternaries.push_back(t);
  return out;
}

}  // namespace siasp
