#include "siasp/classical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace siasp {

namespace {

std::string ref_str(const CameraRef& r) {
  return "[" + std::to_string(r.request_id) + "," + std::to_string(r.camera) + "]";
}

void check_refs(const RequestIndex& index, const Schedule& sched) {
  for (const auto& a : sched.assignments) {
    index.at(a.request_id);
    if (a.camera < 1 || a.camera > 4)
      throw InstanceError("assignment " + ref_str(a) + ": camera outside {1,2,3,4}");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const ExactLimits& limits)
      : inst_(inst), limits_(limits), index_(inst) {
    const std::size_t n = inst.requests.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto& ra = inst.requests[a];
      const auto& rb = inst.requests[b];
      if (ra.weight != rb.weight) return ra.weight > rb.weight;
      return ra.id < rb.id;
    });

    pair_adj_.resize(4 * n);
    ternary_adj_.resize(4 * n);
    auto node = [&](const CameraRef& r) -> std::optional<std::size_t> {
      const auto pos = index_.position(r.request_id);
      if (!pos) throw InstanceError("constraint references unknown request " +
                                    std::to_string(r.request_id));
      if (!is_valid_camera(inst.requests[*pos].kind, r.camera)) return std::nullopt;
      return 4 * *pos + static_cast<std::size_t>(r.camera - 1);
    };
    // Constraints with a dead member can never bind.
    for (const auto& p : inst.pairs) {
      const auto a = node(p.a), b = node(p.b);
      if (!a || !b) continue;
      pair_adj_[*a].push_back(*b);
      pair_adj_[*b].push_back(*a);
    }
    for (const auto& t : inst.ternaries) {
      const auto a = node(t.members[0]), b = node(t.members[1]), c = node(t.members[2]);
      if (!a || !b || !c) continue;
      ternary_adj_[*a].emplace_back(*b, *c);
      ternary_adj_[*b].emplace_back(*a, *c);
      ternary_adj_[*c].emplace_back(*a, *b);
    }

    suffix_.assign(n + 1, 0);
    for (std::size_t d = n; d-- > 0;) suffix_[d] = suffix_[d + 1] + inst.requests[order_[d]].weight;

    taken_.assign(4 * n, false);
    chosen_.assign(n, 0);
    best_chosen_ = chosen_;
  }

  ExactResult run() {
    start_ = std::chrono::steady_clock::now();
    search(0, 0);
    ExactResult out;
    out.value = best_value_;
    out.proven_optimal = !aborted_;
    out.nodes = nodes_;
    for (std::size_t pos = 0; pos < best_chosen_.size(); ++pos)
      if (best_chosen_[pos])
        out.schedule.assignments.push_back({inst_.requests[pos].id, best_chosen_[pos]});
    std::sort(out.schedule.assignments.begin(), out.schedule.assignments.end());
    return out;
  }

 private:
  static int first_camera(Kind k) { return k == Kind::Mono ? 1 : kStereoCamera; }
  static int last_camera(Kind k) { return k == Kind::Mono ? 3 : kStereoCamera; }

  bool compatible(std::size_t v) const {
    for (auto u : pair_adj_[v])
      if (taken_[u]) return false;
    for (auto [a, b] : ternary_adj_[v])
      if (taken_[a] && taken_[b]) return false;
    return true;
  }

  // Weight still reachable: remaining requests that have at least one camera
  // compatible with the current partial schedule.
  Weight live_remaining(std::size_t depth) const {
    Weight sum = 0;
    for (std::size_t d = depth; d < order_.size(); ++d) {
      const std::size_t pos = order_[d];
      const Kind k = inst_.requests[pos].kind;
      for (int cam = first_camera(k); cam <= last_camera(k); ++cam) {
        if (compatible(4 * pos + static_cast<std::size_t>(cam - 1))) {
          sum += inst_.requests[pos].weight;
          break;
        }
      }
    }
    return sum;
  }

  bool out_of_time() {
    if (aborted_) return true;
    if ((nodes_ & 1023) == 1 &&
        std::chrono::steady_clock::now() - start_ > limits_.time_budget)
      aborted_ = true;
    return aborted_;
  }

  void search(std::size_t depth, Weight value) {
    ++nodes_;
    if (out_of_time()) return;
    if (value > best_value_) {
      best_value_ = value;
      best_chosen_ = chosen_;
    }
    if (depth == order_.size()) return;
    if (value + suffix_[depth] <= best_value_) return;
    if (value + live_remaining(depth) <= best_value_) return;

    const std::size_t pos = order_[depth];
    const auto& req = inst_.requests[pos];
    for (int cam = first_camera(req.kind); cam <= last_camera(req.kind); ++cam) {
      const std::size_t v = 4 * pos + static_cast<std::size_t>(cam - 1);
      if (!compatible(v)) continue;
      taken_[v] = true;
      chosen_[pos] = cam;
      search(depth + 1, value + req.weight);
      taken_[v] = false;
      chosen_[pos] = 0;
      if (aborted_) return;
    }
    search(depth + 1, value);
  }

  const Instance& inst_;
  ExactLimits limits_;
  RequestIndex index_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> pair_adj_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ternary_adj_;
  std::vector<Weight> suffix_;
  std::vector<bool> taken_;
  std::vector<int> chosen_;
  std::vector<int> best_chosen_;
  Weight best_value_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Once: return "Once";
    case ViolationKind::Pair: return "Pair";
    case ViolationKind::Ternary: return "Ternary";
    case ViolationKind::MonoAsStereo: return "MonoAsStereo";
    case ViolationKind::StereoAsMono: return "StereoAsMono";
  }
  return "?";
}

Weight objective_value(const Instance& inst, const Schedule& sched) {
  RequestIndex index(inst);
  Weight total = 0;
  for (const auto& a : sched.assignments) total += index.at(a.request_id).weight;
  return total;
}

FeasibilityReport check_feasible(const Instance& inst, const Schedule& sched) {
  RequestIndex index(inst);
  check_refs(index, sched);

  FeasibilityReport report;
  auto add = [&](ViolationKind k, std::string element) {
    report.violations.push_back({k, std::move(element)});
  };

  std::map<RequestId, int> per_request;
  for (const auto& a : sched.assignments) ++per_request[a.request_id];
  for (const auto& [id, count] : per_request)
    if (count > 1)
      add(ViolationKind::Once, "request " + std::to_string(id) + " assigned " +
                                   std::to_string(count) + " times");

  for (const auto& a : sched.assignments) {
    const auto kind = index.at(a.request_id).kind;
    if (kind == Kind::Mono && a.camera == kStereoCamera)
      add(ViolationKind::MonoAsStereo, ref_str(a));
    else if (kind == Kind::Stereo && a.camera != kStereoCamera)
      add(ViolationKind::StereoAsMono, ref_str(a));
  }

  const std::set<CameraRef> taken(sched.assignments.begin(), sched.assignments.end());
  for (const auto& p : inst.pairs)
    if (taken.count(p.a) && taken.count(p.b))
      add(ViolationKind::Pair, ref_str(p.a) + "-" + ref_str(p.b));
  for (const auto& t : inst.ternaries)
    if (std::all_of(t.members.begin(), t.members.end(),
                    [&](const CameraRef& m) { return taken.count(m) > 0; }))
      add(ViolationKind::Ternary,
          ref_str(t.members[0]) + "-" + ref_str(t.members[1]) + "-" + ref_str(t.members[2]));

  report.feasible = report.violations.empty();
  return report;
}

Weight max_objective(const Instance& inst) {
  Weight total = 0;
  for (const auto& r : inst.requests) total += r.weight;
  return total;
}

ExactResult solve_exact(const Instance& inst, const ExactLimits& limits) {
  if (inst.requests.size() > limits.max_requests)
    throw InstanceError("instance has " + std::to_string(inst.requests.size()) +
                        " requests, exact solver limit is " +
                        std::to_string(limits.max_requests));
  return BranchAndBound(inst, limits).run();
}

}  // namespace siasp
