#include "nonlift/finite_geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "nonlift/error.hpp"

namespace nonlift::geom {

namespace {

long long mod(long long a, int p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

void check_dimension(int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw Error(ErrorCode::UnsupportedDimension,
                "ambient dimension " + std::to_string(n) + " outside [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  }
}

void check_same_space(const ProjPointFp& x, const ProjPointFp& y) {
  if (x.dim() != y.dim() || x.p() != y.p()) {
    throw Error(ErrorCode::InvalidParameter,
                "points " + x.to_string() + " and " + y.to_string() + " live in different spaces");
  }
}

std::vector<long long> widen(const ProjPointFp& x) {
  return {x.coords().begin(), x.coords().end()};
}

// Every canonical vector of length len, lexicographic.
std::vector<ProjPointFp> canonical_vectors(int len, Prime p) {
  std::vector<ProjPointFp> out;
  std::vector<long long> v(len, 0);
  // Odometer over all vectors; keep those already in canonical form.
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](long long c) { return c != 0; });
    if (first != v.end() && *first == 1) out.push_back(ProjPointFp::from_coords(v, p));
    int i = len - 1;
    while (i >= 0 && v[i] == p - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(long long value) : value_(static_cast<int>(value)) {
  if (value > (1LL << 30) || !is_prime(value)) {
    throw Error(ErrorCode::InvalidParameter, std::to_string(value) + " is not a supported prime");
  }
}

int inverse_mod(int a, int p) {
  long long base = mod(a, p);
  if (base == 0) throw Error(ErrorCode::InvalidParameter, "zero has no inverse mod p");
  long long result = 1;
  for (long long e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

// --- ProjPointFp ------------------------------------------------------------

ProjPointFp ProjPointFp::from_coords(std::span<const long long> coords, Prime p) {
  if (coords.empty()) throw Error(ErrorCode::NotAProjectivePoint, "empty coordinate vector");
  std::vector<int> c(coords.size());
  std::size_t lead = coords.size();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    c[i] = static_cast<int>(mod(coords[i], p));
    if (c[i] != 0 && lead == coords.size()) lead = i;
  }
  if (lead == coords.size()) {
    throw Error(ErrorCode::NotAProjectivePoint, "all coordinates vanish mod " + std::to_string(p));
  }
  const long long scale = inverse_mod(c[lead], p);
  for (auto& x : c) x = static_cast<int>(x * scale % p);
  return ProjPointFp(std::move(c), p);
}

ProjPointFp::ProjPointFp(std::initializer_list<long long> coords, Prime p)
    : ProjPointFp(from_coords(std::span<const long long>(coords.begin(), coords.size()), p)) {}

std::string ProjPointFp::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ":" : "") << coords_[i];
  os << ')';
  return os.str();
}

// --- LineFp / PlaneFp -------------------------------------------------------

LineFp::LineFp(std::vector<ProjPointFp> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (points_.size() < 2 || points_.size() != static_cast<std::size_t>(points_.front().p() + 1)) {
    throw Error(ErrorCode::InvalidParameter, "a line of P^n(F_p) has exactly p+1 points");
  }
}

bool LineFp::contains(const ProjPointFp& x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

std::string LineFp::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < points_.size(); ++i) s += (i ? "," : "") + points_[i].to_string();
  return s + "}";
}

PlaneFp::PlaneFp(ProjPointFp dual) : dual_(std::move(dual)) {
  check_dimension(dual_.dim(), 3, 3);
  for (auto& x : enumerate_points(3, Prime(dual_.p()))) {
    if (contains(x)) points_.push_back(x);
  }
}

bool PlaneFp::contains(const ProjPointFp& x) const {
  long long s = 0;
  for (int i = 0; i < 4; ++i) s += static_cast<long long>(dual_[i]) * x[i];
  return s % dual_.p() == 0;
}

// --- enumeration ------------------------------------------------------------

long long projective_point_count(int n, int p) {
  long long count = 0, power = 1;
  for (int i = 0; i <= n; ++i, power *= p) count += power;
  return count;
}

std::vector<ProjPointFp> enumerate_points(int n, Prime p) {
  check_dimension(n, 0, 3);
  return canonical_vectors(n + 1, p);
}

std::vector<LineFp> enumerate_lines(int n, Prime p) {
  check_dimension(n, 2, 3);
  const int len = n + 1;
  std::vector<LineFp> lines;
  // Lines are 2-dimensional subspaces; walk their reduced row echelon bases.
  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j < len; ++j) {
      // Free entries: row 1 at positions > i except j, row 2 at positions > j.
      std::vector<std::pair<int, int>> slots;
      for (int c = i + 1; c < len; ++c) {
        if (c != j) slots.emplace_back(0, c);
      }
      for (int c = j + 1; c < len; ++c) slots.emplace_back(1, c);
      std::vector<long long> values(slots.size(), 0);
      while (true) {
        std::vector<long long> r1(len, 0), r2(len, 0);
        r1[i] = 1;
        r2[j] = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          (slots[s].first == 0 ? r1 : r2)[slots[s].second] = values[s];
        }
        std::vector<ProjPointFp> members;
        members.push_back(ProjPointFp::from_coords(r2, p));
        for (long long b = 0; b < p; ++b) {
          std::vector<long long> v(len);
          for (int c = 0; c < len; ++c) v[c] = r1[c] + b * r2[c];
          members.push_back(ProjPointFp::from_coords(v, p));
        }
        lines.emplace_back(std::move(members));
        std::size_t s = 0;
        while (s < values.size() && values[s] == p - 1) values[s++] = 0;
        if (s == values.size()) break;
        ++values[s];
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::vector<PlaneFp> enumerate_planes(Prime p) {
  std::vector<PlaneFp> planes;
  for (auto& d : enumerate_points(3, p)) planes.emplace_back(d);
  return planes;
}

// --- spans and predicates ---------------------------------------------------

LineFp line_through(const ProjPointFp& x, const ProjPointFp& y) {
  check_same_space(x, y);
  if (x == y) {
    throw Error(ErrorCode::DegenerateSpan, "a single point " + x.to_string() + " spans no line");
  }
  const int p = x.p();
  std::vector<ProjPointFp> members{y};
  for (long long b = 0; b < p; ++b) {
    std::vector<long long> v(x.coords().size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = x[c] + b * y[c];
    members.push_back(ProjPointFp::from_coords(v, Prime(p)));
  }
  return LineFp(std::move(members));
}

namespace {

std::vector<long long> cross(const ProjPointFp& a, const ProjPointFp& b) {
  return {static_cast<long long>(a[1]) * b[2] - static_cast<long long>(a[2]) * b[1],
          static_cast<long long>(a[2]) * b[0] - static_cast<long long>(a[0]) * b[2],
          static_cast<long long>(a[0]) * b[1] - static_cast<long long>(a[1]) * b[0]};
}

}  // namespace

ProjPointFp dual_of(const LineFp& line) {
  check_dimension(line.dim(), 2, 2);
  const auto& pts = line.points();
  return ProjPointFp::from_coords(cross(pts[0], pts[1]), Prime(line.p()));
}

ProjPointFp intersect(const LineFp& a, const LineFp& b) {
  if (a == b) throw Error(ErrorCode::DegenerateSpan, "a line does not meet itself in a point");
  return ProjPointFp::from_coords(cross(dual_of(a), dual_of(b)), Prime(a.p()));
}

int rank_mod_p(std::vector<std::vector<long long>> rows, int p) {
  for (auto& r : rows) {
    for (auto& c : r) c = mod(c, p);
  }
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [col](const auto& r) { return r[col] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    auto& pr = rows[rank];
    const long long inv = inverse_mod(static_cast<int>(pr[col]), p);
    for (auto& c : pr) c = c * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col] == 0) continue;
      const long long f = rows[r][col];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] = mod(rows[r][c] - f * pr[c], p);
    }
    ++rank;
  }
  return rank;
}

bool collinear(const ProjPointFp& x, const ProjPointFp& y, const ProjPointFp& z) {
  check_same_space(x, y);
  check_same_space(x, z);
  return rank_mod_p({widen(x), widen(y), widen(z)}, x.p()) <= 2;
}

bool coplanar(const ProjPointFp& x, const ProjPointFp& y, const ProjPointFp& z,
              const ProjPointFp& w) {
  check_dimension(x.dim(), 3, 3);
  check_same_space(x, y);
  check_same_space(x, z);
  check_same_space(x, w);
  return rank_mod_p({widen(x), widen(y), widen(z), widen(w)}, x.p()) <= 3;
}

std::size_t index_of(const std::vector<ProjPointFp>& sorted, const ProjPointFp& x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  return (it != sorted.end() && *it == x) ? static_cast<std::size_t>(it - sorted.begin()) : npos;
}

// --- configurations ---------------------------------------------------------

bool IncidenceConfig::includes(std::size_t child, std::size_t parent) const {
  if (child == parent) return true;
  return std::binary_search(inclusions.begin(), inclusions.end(), std::make_pair(child, parent));
}

std::size_t IncidenceConfig::point_line_incidences() const {
  return static_cast<std::size_t>(std::count_if(inclusions.begin(), inclusions.end(), [&](auto e) {
    return e.first < points.size() && e.second >= points.size() &&
           e.second < points.size() + lines.size();
  }));
}

void close_inclusions(IncidenceConfig& config) {
  auto& inc = config.inclusions;
  inc.clear();
  for (std::size_t l = 0; l < config.lines.size(); ++l) {
    for (auto x : config.lines[l]) inc.emplace_back(x, config.line_element(l));
  }
  for (std::size_t h = 0; h < config.planes.size(); ++h) {
    const auto& plane = config.planes[h];
    for (auto x : plane) inc.emplace_back(x, config.plane_element(h));
    for (std::size_t l = 0; l < config.lines.size(); ++l) {
      if (std::includes(plane.begin(), plane.end(), config.lines[l].begin(),
                        config.lines[l].end())) {
        inc.emplace_back(config.line_element(l), config.plane_element(h));
      }
    }
  }
  std::sort(inc.begin(), inc.end());
}

IncidenceConfig incidence_config(int n, Prime p) {
  check_dimension(n, 2, 3);
  IncidenceConfig config;
  config.dim = n;
  config.p = p;
  config.points = enumerate_points(n, p);
  auto index_list = [&](const std::vector<ProjPointFp>& members) {
    std::vector<std::size_t> idx;
    idx.reserve(members.size());
    for (auto& x : members) idx.push_back(index_of(config.points, x));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  for (auto& line : enumerate_lines(n, p)) config.lines.push_back(index_list(line.points()));
  if (n == 3) {
    for (auto& plane : enumerate_planes(p)) config.planes.push_back(index_list(plane.points()));
  }
  close_inclusions(config);
  return config;
}

IncidenceConfig restriction_config(std::vector<ProjPointFp> points, Prime p) {
  IncidenceConfig config;
  config.dim = 2;
  config.p = p;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (auto& x : points) {
    if (x.dim() != 2 || x.p() != p) {
      throw Error(ErrorCode::InvalidParameter, "restriction points must lie in P^2(F_p)");
    }
  }
  config.points = std::move(points);
  for (auto& line : enumerate_lines(2, p)) {
    std::vector<std::size_t> members;
    for (auto& x : line.points()) {
      if (auto i = index_of(config.points, x); i != npos) members.push_back(i);
    }
    if (members.size() >= 2) {
      std::sort(members.begin(), members.end());
      config.lines.push_back(std::move(members));
    }
  }
  close_inclusions(config);
  return config;
}

std::vector<ProjPointFp> mp_points(Prime p) {
  std::vector<ProjPointFp> pts;
  pts.push_back(ProjPointFp({1, 0, 0}, p));
  pts.push_back(ProjPointFp({0, 1, 0}, p));
  pts.push_back(ProjPointFp({1, 1, 0}, p));
  for (long long n = 0; n < p; ++n) {
    pts.push_back(ProjPointFp({n, 0, 1}, p));
    pts.push_back(ProjPointFp({n + 1, 1, 1}, p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

IncidenceConfig mp_configuration(Prime p) { return restriction_config(mp_points(p), p); }

// --- JSON -------------------------------------------------------------------

nlohmann::json to_json(const IncidenceConfig& config) {
  nlohmann::json doc;
  doc["dim"] = config.dim;
  doc["p"] = config.p;
  doc["points"] = nlohmann::json::array();
  for (auto& x : config.points) doc["points"].push_back(x.coords());
  doc["lines"] = config.lines;
  doc["planes"] = config.planes;
  doc["inclusions"] = nlohmann::json::array();
  for (auto [c, q] : config.inclusions) doc["inclusions"].push_back({c, q});
  return doc;
}

IncidenceConfig incidence_config_from_json(const nlohmann::json& doc) {
  try {
    IncidenceConfig config;
    config.dim = doc.at("dim").get<int>();
    config.p = doc.at("p").get<int>();
    const Prime p(config.p);
    for (auto& c : doc.at("points")) {
      auto coords = c.get<std::vector<long long>>();
      config.points.push_back(ProjPointFp::from_coords(coords, p));
    }
    config.lines = doc.at("lines").get<std::vector<std::vector<std::size_t>>>();
    config.planes = doc.at("planes").get<std::vector<std::vector<std::size_t>>>();
    for (auto& e : doc.at("inclusions")) {
      config.inclusions.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed incidence configuration: ") + e.what());
  }
}

}  // namespace nonlift::geom
