#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "siasp/instance.hpp"

namespace siasp {

using Coeff = std::int64_t;
using Bits = std::vector<std::uint8_t>;

enum class Encoding { FourCam, ThreeCam };

std::string_view to_string(Encoding enc);
// Accepts "4cam" / "3cam".
Encoding parse_encoding(std::string_view text);

struct Decision {
  RequestId request_id;
  int camera;
  friend auto operator<=>(const Decision&, const Decision&) = default;
};

// ThreeCam only: the single variable of a stereo request.
struct StereoDecision {
  RequestId request_id;
  friend auto operator<=>(const StereoDecision&, const StereoDecision&) = default;
};

// FourCam only: binary-expansion slack bit of a ternary constraint.
struct TernarySlackBit {
  std::size_t constraint_index;
  int bit;
  friend auto operator<=>(const TernarySlackBit&, const TernarySlackBit&) = default;
};

// ThreeCam only: stands in for the product of a canonical pair of members,
// shared by every ternary constraint that replaces the same pair.
struct PairSlack {
  CameraRef first;
  CameraRef second;
  friend auto operator<=>(const PairSlack&, const PairSlack&) = default;
};

using VariableMeaning = std::variant<Decision, StereoDecision, TernarySlackBit, PairSlack>;

std::string describe(const VariableMeaning& meaning);

// How one live ternary constraint is lowered. For ThreeCam, (q, r) is the
// pair replaced by a PairSlack and p is the remaining member.
struct TernaryLowering {
  std::size_t constraint_index;
  CameraRef p;
  CameraRef q;
  CameraRef r;
};

struct VariableMap {
  Encoding encoding = Encoding::FourCam;
  std::vector<VariableMeaning> vars;
  std::map<VariableMeaning, std::size_t> lookup;
  std::vector<TernaryLowering> lowerings;

  std::size_t size() const { return vars.size(); }
  std::optional<std::size_t> index_of(const VariableMeaning& m) const;
  // Variable standing for a camera reference, or nullopt if the reference
  // has no variable under this encoding.
  std::optional<std::size_t> decision_index(const CameraRef& ref) const;
  std::size_t decision_count() const;
  std::size_t slack_count() const { return size() - decision_count(); }

  void push(VariableMeaning m);
};

struct QuboModel {
  std::size_t n = 0;
  std::map<std::size_t, Coeff> diag;
  // Keys (i, j) with i < j.
  std::map<std::pair<std::size_t, std::size_t>, Coeff> offdiag;
  Coeff offset = 0;
  Coeff penalty = 0;
  // Absent for models read back from an export.
  std::optional<VariableMap> var_map;

  // Adds, folding i == j into the diagonal and dropping zero results.
  void add_linear(std::size_t i, Coeff c);
  void add_quadratic(std::size_t i, std::size_t j, Coeff c);
};

bool same_coefficients(const QuboModel& a, const QuboModel& b);

// Per-constraint-class penalty weights; unset classes use the global P.
struct PenaltyOverrides {
  std::optional<Coeff> once;
  std::optional<Coeff> pair;
  std::optional<Coeff> ternary;
  std::optional<Coeff> kind;
};

Coeff penalty_coefficient(const Instance& inst);

VariableMap build_variable_map(const Instance& inst, Encoding enc);

QuboModel encode(const Instance& inst, Encoding enc, const PenaltyOverrides& overrides = {});

Coeff energy(const QuboModel& model, std::span<const std::uint8_t> bits);

struct TermCounts {
  std::size_t linear = 0;
  std::size_t quadratic = 0;
  friend bool operator==(const TermCounts&, const TermCounts&) = default;
};

TermCounts term_counts(const QuboModel& model);

struct Decoded {
  std::vector<CameraRef> assignments;  // sorted, may repeat a request
  std::size_t slack_bits_set = 0;
};

Decoded decode(const VariableMap& map, std::span<const std::uint8_t> bits);

std::string export_qubo(const QuboModel& model);
// Inverse of export_qubo; the result carries no variable map.
QuboModel parse_qubo(std::string_view text);

std::string export_graph(const QuboModel& model);

}  // namespace siasp
