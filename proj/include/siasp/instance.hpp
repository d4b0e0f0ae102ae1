#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace siasp {

using RequestId = std::uint64_t;
using Weight = std::int64_t;

enum class Kind { Mono, Stereo };

// Camera 4 is the stereo mode (cameras 1 and 3 used together).
inline constexpr int kStereoCamera = 4;

struct ImageRequest {
  RequestId id = 0;
  Weight weight = 1;
  Kind kind = Kind::Mono;

  friend bool operator==(const ImageRequest&, const ImageRequest&) = default;
};

struct CameraRef {
  RequestId request_id = 0;
  int camera = 1;

  friend auto operator<=>(const CameraRef&, const CameraRef&) = default;
};

// A reference is live iff it names a mode the request can actually be taken
// in: cameras 1-3 for mono requests, camera 4 for stereo requests.
bool is_valid_camera(Kind kind, int camera);

struct PairConstraint {
  CameraRef a;
  CameraRef b;

  friend auto operator<=>(const PairConstraint&, const PairConstraint&) = default;
};

struct TernaryConstraint {
  std::array<CameraRef, 3> members;

  friend auto operator<=>(const TernaryConstraint&, const TernaryConstraint&) = default;
};

struct Instance {
  std::string name;
  std::vector<ImageRequest> requests;
  std::vector<PairConstraint> pairs;
  std::vector<TernaryConstraint> ternaries;

  // Linear scan; callers that look up repeatedly should build a RequestIndex.
  const ImageRequest* find(RequestId id) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Dense position of every request id inside Instance::requests.
class RequestIndex {
 public:
  explicit RequestIndex(const Instance& inst);

  std::optional<std::size_t> position(RequestId id) const;
  // Throws InstanceError for unknown ids.
  const ImageRequest& at(RequestId id) const;
  // Valid reference to an existing request.
  bool is_live(const CameraRef& ref) const;

 private:
  const Instance* inst_;
  std::vector<std::pair<RequestId, std::size_t>> sorted_;
};

struct InstanceStats {
  std::size_t n_requests = 0;
  std::size_t n_stereo = 0;
  std::size_t n_constraints = 0;
  std::size_t n_ternary = 0;

  friend bool operator==(const InstanceStats&, const InstanceStats&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Semantic problems: dangling references, duplicate ids, bad weights or
// cameras, out-of-range arguments.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadResult {
  Instance instance;
  std::size_t duplicates_removed = 0;
};

// Strict reader for the canonical JSON layout. Constraint members are sorted
// and duplicate constraints dropped; the drop count is reported.
LoadResult load_instance(std::string_view text);
Instance parse_instance(std::string_view text);

std::string serialize_instance(const Instance& inst);

// Sorts requests by id, sorts members inside each constraint, sorts and
// deduplicates the constraint lists. Returns the number of duplicates removed.
std::size_t canonicalize(Instance& inst);

enum class Severity { Error, Advisory };

struct Violation {
  Severity severity = Severity::Error;
  std::string message;
};

// Errors break an Instance invariant. Advisories flag constraint members that
// can never be active (mono request on camera 4, stereo request on 1-3).
std::vector<Violation> validate(const Instance& inst);
bool has_errors(const std::vector<Violation>& violations);

InstanceStats instance_stats(const Instance& inst);

// Keeps `target_requests` requests drawn uniformly without replacement and
// every constraint whose members all survive.
Instance reduce_instance(const Instance& inst, std::size_t target_requests,
                         std::uint64_t seed);

struct GeneratorParams {
  std::size_t n_requests = 60;
  double stereo_fraction = 0.45;
  // Requests sit on a unit-spaced time line; constraints only join requests
  // closer than this.
  double conflict_window = 5.0;
  double pair_density = 0.7;
  double ternary_density = 0.05;
  std::string name = "synthetic";
};

// Synthetic SPOT5-like instance: small integer weights with occasional large
// priorities, proximity-driven pair conflicts and sparse data-flow ternaries.
// All constraint members are valid camera references.
Instance generate_instance(const GeneratorParams& params, std::uint64_t seed);

std::string_view to_string(Kind kind);

}  // namespace siasp
