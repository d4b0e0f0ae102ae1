#include "siasp/qubo.hpp"

#include <algorithm>
#include <stdexcept>

#include "siasp/classical.hpp"

namespace siasp {

namespace {

using RefPair = std::pair<CameraRef, CameraRef>;

RefPair make_pair_sorted(const CameraRef& a, const CameraRef& b) {
  return a < b ? RefPair{a, b} : RefPair{b, a};
}

std::vector<RequestId> sorted_ids(const Instance& inst) {
  std::vector<RequestId> ids;
  ids.reserve(inst.requests.size());
  for (const auto& r : inst.requests) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool all_live(const RequestIndex& index, const TernaryConstraint& t) {
  return std::all_of(t.members.begin(), t.members.end(),
                     [&](const CameraRef& m) { return index.is_live(m); });
}

// Greedy choice of the pair each ThreeCam ternary replaces: repeatedly take
// the pair shared by the most unassigned constraints (ties to the smallest
// canonical pair) and hand it to all of them.
std::vector<TernaryLowering> plan_pair_replacement(const Instance& inst,
                                                   const std::vector<std::size_t>& live) {
  std::vector<std::array<CameraRef, 3>> members(live.size());
  for (std::size_t k = 0; k < live.size(); ++k) {
    members[k] = inst.ternaries[live[k]].members;
    std::sort(members[k].begin(), members[k].end());
  }
  auto candidates = [](const std::array<CameraRef, 3>& m) {
    return std::array<RefPair, 3>{RefPair{m[0], m[1]}, RefPair{m[0], m[2]}, RefPair{m[1], m[2]}};
  };

  std::vector<TernaryLowering> plan(live.size());
  std::vector<bool> assigned(live.size(), false);
  std::size_t remaining = live.size();
  while (remaining > 0) {
    std::map<RefPair, std::size_t> freq;
    for (std::size_t k = 0; k < live.size(); ++k)
      if (!assigned[k])
        for (const auto& c : candidates(members[k])) ++freq[c];
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it)
      if (it->second > best->second) best = it;
    const RefPair chosen = best->first;

    for (std::size_t k = 0; k < live.size(); ++k) {
      if (assigned[k]) continue;
      const auto& m = members[k];
      for (int skip = 0; skip < 3; ++skip) {
        const auto& q = m[skip == 0 ? 1 : 0];
        const auto& r = m[skip == 2 ? 1 : 2];
        if (RefPair{q, r} != chosen) continue;
        plan[k] = TernaryLowering{live[k], m[static_cast<std::size_t>(skip)], q, r};
        assigned[k] = true;
        --remaining;
        break;
      }
    }
  }
  return plan;
}

std::vector<std::size_t> live_ternaries(const Instance& inst, const RequestIndex& index) {
  std::vector<std::size_t> live;
  for (std::size_t t = 0; t < inst.ternaries.size(); ++t)
    if (all_live(index, inst.ternaries[t])) live.push_back(t);
  return live;
}

// weight * (sum_k a_k y_k + c)^2 with y binary.
void add_squared(QuboModel& m, const std::vector<std::pair<std::size_t, Coeff>>& terms, Coeff c,
                 Coeff weight) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto [yk, ak] = terms[k];
    m.add_linear(yk, weight * (ak * ak + 2 * c * ak));
    for (std::size_t l = k + 1; l < terms.size(); ++l)
      m.add_quadratic(yk, terms[l].first, weight * 2 * ak * terms[l].second);
  }
  m.offset += weight * c * c;
}

}  // namespace

std::string_view to_string(Encoding enc) { return enc == Encoding::FourCam ? "4cam" : "3cam"; }

Encoding parse_encoding(std::string_view text) {
  if (text == "4cam") return Encoding::FourCam;
  if (text == "3cam") return Encoding::ThreeCam;
  throw std::invalid_argument("unknown encoding \"" + std::string(text) + "\" (use 4cam or 3cam)");
}

std::string describe(const VariableMeaning& meaning) {
  struct Visitor {
    std::string operator()(const Decision& d) const {
      return "x(" + std::to_string(d.request_id) + "," + std::to_string(d.camera) + ")";
    }
    std::string operator()(const StereoDecision& d) const {
      return "x(" + std::to_string(d.request_id) + ")";
    }
    std::string operator()(const TernarySlackBit& s) const {
      return "s(t" + std::to_string(s.constraint_index) + "," + std::to_string(s.bit + 1) + ")";
    }
    std::string operator()(const PairSlack& s) const {
      return "s(" + std::to_string(s.first.request_id) + ":" + std::to_string(s.first.camera) +
             "," + std::to_string(s.second.request_id) + ":" + std::to_string(s.second.camera) +
             ")";
    }
  };
  return std::visit(Visitor{}, meaning);
}

void VariableMap::push(VariableMeaning m) {
  lookup.emplace(m, vars.size());
  vars.push_back(std::move(m));
}

std::optional<std::size_t> VariableMap::index_of(const VariableMeaning& m) const {
  auto it = lookup.find(m);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> VariableMap::decision_index(const CameraRef& ref) const {
  if (encoding == Encoding::ThreeCam && ref.camera == kStereoCamera)
    return index_of(StereoDecision{ref.request_id});
  return index_of(Decision{ref.request_id, ref.camera});
}

std::size_t VariableMap::decision_count() const {
  return static_cast<std::size_t>(std::count_if(vars.begin(), vars.end(), [](const auto& v) {
    return std::holds_alternative<Decision>(v) || std::holds_alternative<StereoDecision>(v);
  }));
}

void QuboModel::add_linear(std::size_t i, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = diag.try_emplace(i, c);
  if (!inserted && (it->second += c) == 0) diag.erase(it);
}

void QuboModel::add_quadratic(std::size_t i, std::size_t j, Coeff c) {
  if (i == j) {
    add_linear(i, c);
    return;
  }
  if (c == 0) return;
  if (j < i) std::swap(i, j);
  auto [it, inserted] = offdiag.try_emplace({i, j}, c);
  if (!inserted && (it->second += c) == 0) offdiag.erase(it);
}

bool same_coefficients(const QuboModel& a, const QuboModel& b) {
  return a.n == b.n && a.diag == b.diag && a.offdiag == b.offdiag && a.offset == b.offset &&
         a.penalty == b.penalty;
}

Coeff penalty_coefficient(const Instance& inst) { return 1 + max_objective(inst); }

VariableMap build_variable_map(const Instance& inst, Encoding enc) {
  const RequestIndex index(inst);
  VariableMap map;
  map.encoding = enc;
  const auto live = live_ternaries(inst, index);

  for (RequestId id : sorted_ids(inst)) {
    const auto& req = index.at(id);
    if (enc == Encoding::FourCam) {
      for (int cam = 1; cam <= 4; ++cam) map.push(Decision{id, cam});
    } else if (req.kind == Kind::Mono) {
      for (int cam = 1; cam <= 3; ++cam) map.push(Decision{id, cam});
    } else {
      map.push(StereoDecision{id});
    }
  }

  if (enc == Encoding::FourCam) {
    for (std::size_t t : live) {
      const auto& m = inst.ternaries[t].members;
      map.lowerings.push_back({t, m[0], m[1], m[2]});
      map.push(TernarySlackBit{t, 0});
      map.push(TernarySlackBit{t, 1});
    }
  } else {
    map.lowerings = plan_pair_replacement(inst, live);
    std::vector<PairSlack> slacks;
    for (const auto& l : map.lowerings) {
      const auto [a, b] = make_pair_sorted(l.q, l.r);
      slacks.push_back(PairSlack{a, b});
    }
    std::sort(slacks.begin(), slacks.end());
    slacks.erase(std::unique(slacks.begin(), slacks.end()), slacks.end());
    for (const auto& s : slacks) map.push(s);
  }
  return map;
}

QuboModel encode(const Instance& inst, Encoding enc, const PenaltyOverrides& overrides) {
  const RequestIndex index(inst);
  QuboModel model;
  model.penalty = penalty_coefficient(inst);
  model.var_map = build_variable_map(inst, enc);
  const VariableMap& map = *model.var_map;
  model.n = map.size();

  const Coeff p_once = overrides.once.value_or(model.penalty);
  const Coeff p_pair = overrides.pair.value_or(model.penalty);
  const Coeff p_ternary = overrides.ternary.value_or(model.penalty);
  const Coeff p_kind = overrides.kind.value_or(model.penalty);

  auto var = [&](const CameraRef& ref) { return *map.decision_index(ref); };

  for (const auto& req : inst.requests) {
    std::vector<std::size_t> vars;
    if (enc == Encoding::FourCam) {
      for (int cam = 1; cam <= 4; ++cam) vars.push_back(var({req.id, cam}));
      // Forbidden modes: camera 4 for mono, 1-3 for stereo.
      for (int cam = 1; cam <= 4; ++cam)
        if (!is_valid_camera(req.kind, cam)) model.add_linear(vars[cam - 1], p_kind);
    } else if (req.kind == Kind::Mono) {
      for (int cam = 1; cam <= 3; ++cam) vars.push_back(var({req.id, cam}));
    } else {
      vars.push_back(var({req.id, kStereoCamera}));
    }
    for (auto v : vars) model.add_linear(v, -req.weight);
    // At most one mode per request.
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t b = a + 1; b < vars.size(); ++b)
        model.add_quadratic(vars[a], vars[b], p_once);
  }

  for (const auto& p : inst.pairs) {
    if (!index.is_live(p.a) || !index.is_live(p.b)) continue;
    model.add_quadratic(var(p.a), var(p.b), p_pair);
  }

  for (const auto& l : map.lowerings) {
    if (enc == Encoding::FourCam) {
      const auto s1 = *map.index_of(TernarySlackBit{l.constraint_index, 0});
      const auto s2 = *map.index_of(TernarySlackBit{l.constraint_index, 1});
      add_squared(model, {{var(l.p), 1}, {var(l.q), 1}, {var(l.r), 1}, {s1, 1}, {s2, 2}}, -2,
                  p_ternary);
    } else {
      const auto [a, b] = make_pair_sorted(l.q, l.r);
      const auto s = *map.index_of(PairSlack{a, b});
      const auto xp = var(l.p), xq = var(l.q), xr = var(l.r);
      model.add_quadratic(xp, s, p_ternary);
      model.add_quadratic(xq, xr, p_ternary);
      model.add_quadratic(xq, s, -2 * p_ternary);
      model.add_quadratic(xr, s, -2 * p_ternary);
      model.add_linear(s, 3 * p_ternary);
    }
  }
  return model;
}

Coeff energy(const QuboModel& model, std::span<const std::uint8_t> bits) {
  if (bits.size() != model.n)
    throw std::invalid_argument("bitstring has length " + std::to_string(bits.size()) +
                                ", model has " + std::to_string(model.n) + " variables");
  Coeff e = model.offset;
  for (const auto& [i, c] : model.diag)
    if (bits[i]) e += c;
  for (const auto& [ij, c] : model.offdiag)
    if (bits[ij.first] && bits[ij.second]) e += c;
  return e;
}

TermCounts term_counts(const QuboModel& model) {
  return TermCounts{model.diag.size(), model.offdiag.size()};
}

Decoded decode(const VariableMap& map, std::span<const std::uint8_t> bits) {
  if (bits.size() != map.size())
    throw std::invalid_argument("bitstring has length " + std::to_string(bits.size()) +
                                ", variable map has " + std::to_string(map.size()));
  Decoded out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const auto& v = map.vars[i];
    if (const auto* d = std::get_if<Decision>(&v)) {
      out.assignments.push_back({d->request_id, d->camera});
    } else if (const auto* s = std::get_if<StereoDecision>(&v)) {
      out.assignments.push_back({s->request_id, kStereoCamera});
    } else {
      ++out.slack_bits_set;
    }
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  return out;
}

}  // namespace siasp
