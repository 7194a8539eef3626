#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace incsssp {

using Vertex = std::uint32_t;
using Weight = std::int64_t;
/// Integer path length. Every structure uses kUnreachable both as "infinity"
/// and as its capped sentinel.
using Dist = std::int64_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

/// Index of a structure owning a per-vertex minimum (0 = short tree,
/// 1 + i = the i-th distance range).
using StructureId = std::uint32_t;
inline constexpr StructureId kNoStructure = std::numeric_limits<StructureId>::max();

enum class ErrorKind {
  kDuplicateEdge,
  kWeightOutOfRange,
  kVertexOutOfRange,
  kBudgetExceeded,
  kAlreadyPreprocessed,
  kInvalidConfig,
  kPhaseFull,
  kNotAPath,
  kUnreachable,
  kTooDense,
  kInvalidParams,
  kParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kWeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kAlreadyPreprocessed: return "AlreadyPreprocessed";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kPhaseFull: return "PhaseFull";
    case ErrorKind::kNotAPath: return "NotAPath";
    case ErrorKind::kUnreachable: return "Unreachable";
    case ErrorKind::kTooDense: return "TooDense";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  Weight weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Rational helpers. Products go through __int128 so that comparisons against
// distances near the cap cannot overflow.

inline std::int64_t ceil_div(__int128 a, __int128 b) {
  // b > 0
  __int128 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return static_cast<std::int64_t>(q);
}

inline std::int64_t floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return static_cast<std::int64_t>(q);
}

inline std::int64_t ceil(const Rational& r) { return ceil_div(r.numerator(), r.denominator()); }
inline std::int64_t floor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }

/// x <= r for integer x.
inline bool le(__int128 x, const Rational& r) {
  return x * r.denominator() <= static_cast<__int128>(r.numerator());
}

/// floor(log2(x)) for x >= 1.
inline int floor_lg(std::uint64_t x) { return 63 - __builtin_clzll(x); }
/// ceil(log2(x)) for x >= 1.
inline int ceil_lg(std::uint64_t x) { return x <= 1 ? 0 : floor_lg(x - 1) + 1; }

inline std::int64_t isqrt_floor(std::int64_t x) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}
inline std::int64_t isqrt_ceil(std::int64_t x) {
  std::int64_t r = isqrt_floor(x);
  return r * r == x ? r : r + 1;
}
inline std::int64_t icbrt_floor(std::int64_t x) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
  return r;
}
inline std::int64_t icbrt_ceil(std::int64_t x) {
  std::int64_t r = icbrt_floor(x);
  return r * r * r == x ? r : r + 1;
}

}  // namespace incsssp
