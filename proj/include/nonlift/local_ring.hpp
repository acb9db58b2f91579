#pragma once

// Finite local rings with residue field F_p, and projective geometry over them.
//
// Two families are supported: Z/p^k and F_p[t]/(t^k). Elements of either are
// encoded as an index in [0, p^k): for Z/p^k the integer itself, for the
// truncated polynomials the base-p number whose digits are the coefficients
// in ascending order. In both encodings index mod p is the residue.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonlift/finite_geometry.hpp"

namespace nonlift::ring {

enum class RingKind { IntegersModPk, TruncatedPoly };

std::string_view to_string(RingKind kind);  // "zpk" / "fpt"

class RingElem;

class LocalRing {
 public:
  /// Throws InvalidParameter for a non-prime p, k < 1, or p^k >= 2^31.
  static LocalRing make(RingKind kind, int p, int k);

  RingKind kind() const noexcept { return kind_; }
  int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return size_; }
  /// True iff p*1 = 0 in the ring.
  bool char_p() const noexcept { return kind_ == RingKind::TruncatedPoly || k_ == 1; }

  /// "Z/4", "F_3", "F_2[t]/(t^2)".
  std::string name() const;

  RingElem zero() const;
  RingElem one() const;
  /// The image of the integer n under Z -> A.
  RingElem from_integer(long long n) const;
  RingElem element(std::uint64_t index) const;
  /// All elements in index order.
  std::vector<RingElem> elements() const;

  friend bool operator==(const LocalRing&, const LocalRing&) = default;

 private:
  LocalRing(RingKind kind, int p, int k, std::uint64_t size)
      : kind_(kind), p_(p), k_(k), size_(size) {}

  RingKind kind_;
  int p_;
  int k_;
  std::uint64_t size_;
};

class RingElem {
 public:
  const LocalRing& ring() const noexcept { return ring_; }
  std::uint64_t index() const noexcept { return value_; }
  int residue() const noexcept { return static_cast<int>(value_ % ring_.p()); }
  bool is_zero() const noexcept { return value_ == 0; }
  bool is_unit() const noexcept { return residue() != 0; }

  /// Multiplicative inverse; throws InvalidParameter for non-units.
  RingElem inverse() const;

  RingElem operator-() const;
  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);

  /// Coefficient vector (truncated polynomials) or the single integer.
  std::vector<long long> digits() const;
  std::string to_string() const;

  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.value_ == b.value_ && a.ring_ == b.ring_;
  }
  friend std::strong_ordering operator<=>(const RingElem& a, const RingElem& b) {
    return a.value_ <=> b.value_;
  }

 private:
  friend class LocalRing;
  RingElem(LocalRing ring, std::uint64_t value) : ring_(ring), value_(value) {}

  LocalRing ring_;
  std::uint64_t value_;
};

/// A point of P^n(A) in canonical form: the first unit coordinate is 1.
class ProjPointA {
 public:
  /// point_normalize. Throws NotAProjectivePoint if no coordinate is a unit.
  static ProjPointA normalize(std::span<const RingElem> coords);
  /// The point of P^n(A) with the same 0..p-1 coordinates as x.
  static ProjPointA trivial_lift(const geom::ProjPointFp& x, const LocalRing& ring);
  /// Coordinates given as integers mapped through Z -> A.
  static ProjPointA from_integers(std::initializer_list<long long> coords, const LocalRing& ring);

  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  const LocalRing& ring() const noexcept { return coords_.front().ring(); }
  const std::vector<RingElem>& coords() const noexcept { return coords_; }
  const RingElem& operator[](std::size_t i) const { return coords_[i]; }

  /// point_reduce: the residue point in P^n(F_p).
  geom::ProjPointFp reduce() const;

  std::string to_string() const;

  friend bool operator==(const ProjPointA&, const ProjPointA&) = default;
  friend auto operator<=>(const ProjPointA& a, const ProjPointA& b) {
    return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(),
                                                  b.coords_.begin(), b.coords_.end());
  }

 private:
  explicit ProjPointA(std::vector<RingElem> coords) : coords_(std::move(coords)) {}

  std::vector<RingElem> coords_;
};

/// A line of P^2(A), given by its canonical dual linear form.
struct LineA {
  ProjPointA dual;

  bool contains(const ProjPointA& x) const;
  friend bool operator==(const LineA&, const LineA&) = default;
};

/// A plane of P^3(A), given by its canonical dual linear form.
struct PlaneA {
  ProjPointA dual;

  bool contains(const ProjPointA& x) const;
  friend bool operator==(const PlaneA&, const PlaneA&) = default;
};

RingElem dot(std::span<const RingElem> a, std::span<const RingElem> b);
RingElem det3(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z);
RingElem det4(const ProjPointA& a, const ProjPointA& b, const ProjPointA& c, const ProjPointA& d);

/// Every point of P^n(A) reducing to x, in lexicographic order of coordinates.
/// There are p^{n(k-1)} of them.
std::vector<ProjPointA> enumerate_lifts(const geom::ProjPointFp& x, const LocalRing& ring);

/// The unique line through two points of P^2(A) with distinct reductions.
LineA line_through(const ProjPointA& x, const ProjPointA& y);

/// Intersection of two lines of P^2(A) whose duals have distinct reductions.
ProjPointA intersect(const LineA& a, const LineA& b);

/// Vanishing of the 3x3 determinant. Requires at least two distinct reductions.
bool collinear(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z);

/// Vanishing of the 4x4 determinant of four points of P^3(A).
bool coplanar(const ProjPointA& a, const ProjPointA& b, const ProjPointA& c,
              const ProjPointA& d);

/// Cofactor linear form through three points of P^3(A) with non-collinear reductions.
PlaneA plane_through(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z);

nlohmann::json to_json(const LocalRing& ring);
LocalRing ring_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RingElem& x);
RingElem elem_from_json(const nlohmann::json& doc, const LocalRing& ring);
/// {"ring":{...},"coords":[...]}
nlohmann::json to_json(const ProjPointA& x);
ProjPointA point_from_json(const nlohmann::json& doc);
/// Bare coordinate array, ring implied by context.
nlohmann::json coords_json(const ProjPointA& x);
ProjPointA point_from_coords_json(const nlohmann::json& coords, const LocalRing& ring);

}  // namespace nonlift::ring
