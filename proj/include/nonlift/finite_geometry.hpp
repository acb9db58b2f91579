#pragma once

// Incidence geometry of P^n(F_p) for n <= 3: rational points, lines, planes
// and the restriction configurations used by the lifting argument.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace nonlift::geom {

bool is_prime(long long n);

/// A prime characteristic. Construction validates primality by trial division.
class Prime {
 public:
  explicit Prime(long long value);

  int value() const noexcept { return value_; }
  operator int() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;

 private:
  int value_;
};

/// Inverse of a nonzero residue modulo a prime.
int inverse_mod(int a, int p);

/// A point of P^n(F_p) in canonical form: the first nonzero coordinate is 1.
class ProjPointFp {
 public:
  /// Reduces the coordinates mod p and rescales them to canonical form.
  /// Throws NotAProjectivePoint when every coordinate vanishes mod p.
  static ProjPointFp from_coords(std::span<const long long> coords, Prime p);
  ProjPointFp(std::initializer_list<long long> coords, Prime p);

  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  int p() const noexcept { return p_; }
  const std::vector<int>& coords() const noexcept { return coords_; }
  int operator[](std::size_t i) const { return coords_[i]; }

  /// "(c0:c1:...:cn)"
  std::string to_string() const;

  friend bool operator==(const ProjPointFp&, const ProjPointFp&) = default;
  friend auto operator<=>(const ProjPointFp&, const ProjPointFp&) = default;

 private:
  ProjPointFp(std::vector<int> coords, int p) : coords_(std::move(coords)), p_(p) {}

  std::vector<int> coords_;
  int p_;
};

/// A line of P^n(F_p), stored as its sorted set of p+1 points.
class LineFp {
 public:
  explicit LineFp(std::vector<ProjPointFp> points);

  int dim() const noexcept { return points_.front().dim(); }
  int p() const noexcept { return points_.front().p(); }
  const std::vector<ProjPointFp>& points() const noexcept { return points_; }
  bool contains(const ProjPointFp& x) const;

  std::string to_string() const;

  friend bool operator==(const LineFp&, const LineFp&) = default;
  friend auto operator<=>(const LineFp&, const LineFp&) = default;

 private:
  std::vector<ProjPointFp> points_;
};

/// A plane of P^3(F_p), identified by its dual point (the linear form).
class PlaneFp {
 public:
  explicit PlaneFp(ProjPointFp dual);

  const ProjPointFp& dual() const noexcept { return dual_; }
  const std::vector<ProjPointFp>& points() const noexcept { return points_; }
  bool contains(const ProjPointFp& x) const;

  friend bool operator==(const PlaneFp& a, const PlaneFp& b) { return a.dual_ == b.dual_; }
  friend auto operator<=>(const PlaneFp& a, const PlaneFp& b) { return a.dual_ <=> b.dual_; }

 private:
  ProjPointFp dual_;
  std::vector<ProjPointFp> points_;
};

/// Number of points of P^n(F_p), (p^{n+1}-1)/(p-1).
long long projective_point_count(int n, int p);

/// All points of P^n(F_p), 0 <= n <= 3, in lexicographic order of canonical coordinates.
std::vector<ProjPointFp> enumerate_points(int n, Prime p);

/// All lines of P^n(F_p), n in {2,3}, sorted by their point lists.
std::vector<LineFp> enumerate_lines(int n, Prime p);

/// All planes of P^3(F_p), in the order of their dual points.
std::vector<PlaneFp> enumerate_planes(Prime p);

/// The unique line through two distinct points.
LineFp line_through(const ProjPointFp& x, const ProjPointFp& y);

/// Dual point (linear form) of a line of P^2(F_p).
ProjPointFp dual_of(const LineFp& line);

/// Intersection point of two distinct lines of P^2(F_p).
ProjPointFp intersect(const LineFp& a, const LineFp& b);

/// Rank over F_p of a row-major integer matrix.
int rank_mod_p(std::vector<std::vector<long long>> rows, int p);

bool collinear(const ProjPointFp& x, const ProjPointFp& y, const ProjPointFp& z);
bool coplanar(const ProjPointFp& x, const ProjPointFp& y, const ProjPointFp& z,
              const ProjPointFp& w);

/// Position of x in a lexicographically sorted point list, or npos.
std::size_t index_of(const std::vector<ProjPointFp>& sorted, const ProjPointFp& x);
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Points, lines and planes together with their inclusion relation.
///
/// Lines and planes are stored as sorted index lists into `points`; in a
/// restriction configuration a line only lists the member points that belong
/// to the configuration. Inclusions use one global element numbering: points
/// first, then lines, then planes. Only strict inclusions are stored; they are
/// transitively closed, and `includes` adds reflexivity to obtain the preorder.
struct IncidenceConfig {
  int dim = 2;
  int p = 2;
  std::vector<ProjPointFp> points;
  std::vector<std::vector<std::size_t>> lines;
  std::vector<std::vector<std::size_t>> planes;
  std::vector<std::pair<std::size_t, std::size_t>> inclusions;

  std::size_t element_count() const { return points.size() + lines.size() + planes.size(); }
  std::size_t line_element(std::size_t line) const { return points.size() + line; }
  std::size_t plane_element(std::size_t plane) const {
    return points.size() + lines.size() + plane;
  }
  bool includes(std::size_t child, std::size_t parent) const;
  /// Number of (point, line) inclusions.
  std::size_t point_line_incidences() const;

  friend bool operator==(const IncidenceConfig&, const IncidenceConfig&) = default;
};

/// Rebuilds the inclusion list from the point/line/plane index lists.
void close_inclusions(IncidenceConfig& config);

/// Full configuration of P^n(F_p), n in {2,3}.
IncidenceConfig incidence_config(int n, Prime p);

/// Restriction of P^2(F_p) to a point subset: the points plus every line
/// containing at least two of them.
IncidenceConfig restriction_config(std::vector<ProjPointFp> points, Prime p);

/// The points P_n=(n:0:1), Q_n=(n+1:1:1) for 0 <= n < p together with
/// (1:0:0), (0:1:0), (1:1:0): the 2p+3 point configuration M_p.
std::vector<ProjPointFp> mp_points(Prime p);

/// M_p as a restriction configuration of P^2(F_p).
IncidenceConfig mp_configuration(Prime p);

nlohmann::json to_json(const IncidenceConfig& config);
IncidenceConfig incidence_config_from_json(const nlohmann::json& doc);

}  // namespace nonlift::geom
