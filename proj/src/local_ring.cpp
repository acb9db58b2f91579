#include "nonlift/local_ring.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "nonlift/error.hpp"

namespace nonlift::ring {

std::string_view to_string(RingKind kind) {
  return kind == RingKind::IntegersModPk ? "zpk" : "fpt";
}

// --- LocalRing --------------------------------------------------------------

LocalRing LocalRing::make(RingKind kind, int p, int k) {
  if (!geom::is_prime(p)) {
    throw Error(ErrorCode::InvalidParameter, std::to_string(p) + " is not prime");
  }
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "ring length k must be at least 1");
  std::uint64_t size = 1;
  for (int i = 0; i < k; ++i) {
    size *= static_cast<std::uint64_t>(p);
    if (size >= (1ULL << 31)) {
      throw Error(ErrorCode::InvalidParameter, "ring order p^k must stay below 2^31");
    }
  }
  return LocalRing(kind, p, k, size);
}

std::string LocalRing::name() const {
  const auto p = std::to_string(p_);
  if (kind_ == RingKind::TruncatedPoly) {
    return k_ == 1 ? "F_" + p + "[t]/(t)" : "F_" + p + "[t]/(t^" + std::to_string(k_) + ")";
  }
  return k_ == 1 ? "F_" + p : "Z/" + std::to_string(size_);
}

RingElem LocalRing::zero() const { return RingElem(*this, 0); }
RingElem LocalRing::one() const { return RingElem(*this, 1); }

RingElem LocalRing::from_integer(long long n) const {
  const long long m = kind_ == RingKind::IntegersModPk ? static_cast<long long>(size_) : p_;
  long long r = n % m;
  if (r < 0) r += m;
  return RingElem(*this, static_cast<std::uint64_t>(r));
}

RingElem LocalRing::element(std::uint64_t index) const {
  if (index >= size_) throw Error(ErrorCode::InvalidParameter, "ring element index out of range");
  return RingElem(*this, index);
}

std::vector<RingElem> LocalRing::elements() const {
  std::vector<RingElem> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(RingElem(*this, i));
  return out;
}

// --- RingElem ---------------------------------------------------------------

namespace {

void check_same_ring(const RingElem& a, const RingElem& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorCode::InvalidParameter,
                "mixing elements of " + a.ring().name() + " and " + b.ring().name());
  }
}

std::vector<int> decode(std::uint64_t v, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i, v /= p) d[i] = static_cast<int>(v % p);
  return d;
}

std::uint64_t encode(const std::vector<int>& d, int p) {
  std::uint64_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + static_cast<std::uint64_t>(*it);
  return v;
}

}  // namespace

std::vector<long long> RingElem::digits() const {
  if (ring_.kind() == RingKind::IntegersModPk) return {static_cast<long long>(value_)};
  auto d = decode(value_, ring_.p(), ring_.k());
  return {d.begin(), d.end()};
}

std::string RingElem::to_string() const {
  if (ring_.kind() == RingKind::IntegersModPk) return std::to_string(value_);
  std::string s;
  auto d = decode(value_, ring_.p(), ring_.k());
  for (int i = 0; i < ring_.k(); ++i) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
    if (i > 0) s += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

RingElem RingElem::operator-() const {
  if (ring_.kind() == RingKind::IntegersModPk) {
    return RingElem(ring_, (ring_.size() - value_) % ring_.size());
  }
  auto d = decode(value_, ring_.p(), ring_.k());
  for (auto& c : d) c = (ring_.p() - c) % ring_.p();
  return RingElem(ring_, encode(d, ring_.p()));
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  const auto& r = a.ring_;
  if (r.kind() == RingKind::IntegersModPk) return RingElem(r, (a.value_ + b.value_) % r.size());
  auto x = decode(a.value_, r.p(), r.k());
  auto y = decode(b.value_, r.p(), r.k());
  for (int i = 0; i < r.k(); ++i) x[i] = (x[i] + y[i]) % r.p();
  return RingElem(r, encode(x, r.p()));
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  const auto& r = a.ring_;
  if (r.kind() == RingKind::IntegersModPk) return RingElem(r, (a.value_ * b.value_) % r.size());
  const int k = r.k(), p = r.p();
  auto x = decode(a.value_, p, k);
  auto y = decode(b.value_, p, k);
  std::vector<int> z(k, 0);
  for (int i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; i + j < k; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  }
  return RingElem(r, encode(z, p));
}

RingElem RingElem::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::InvalidParameter, to_string() + " is not a unit of " + ring_.name());
  }
  // Newton iteration x <- x(2 - ux) from the residue inverse; the error term
  // lies in the maximal ideal and its exponent doubles every round.
  RingElem x = ring_.from_integer(geom::inverse_mod(residue(), ring_.p()));
  const RingElem two = ring_.from_integer(2);
  for (int round = 0; round <= ring_.k() && !(*this * x == ring_.one()); ++round) {
    x = x * (two - *this * x);
  }
  if (!(*this * x == ring_.one())) throw Error(ErrorCode::Internal, "inverse did not converge");
  return x;
}

// --- ProjPointA -------------------------------------------------------------

ProjPointA ProjPointA::normalize(std::span<const RingElem> coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [](const RingElem& c) { return c.is_unit(); });
  if (lead == coords.end()) {
    throw Error(ErrorCode::NotAProjectivePoint, "no coordinate is a unit");
  }
  for (auto& c : coords) check_same_ring(c, *lead);
  const RingElem scale = lead->inverse();
  std::vector<RingElem> out;
  out.reserve(coords.size());
  for (auto& c : coords) out.push_back(c * scale);
  return ProjPointA(std::move(out));
}

ProjPointA ProjPointA::trivial_lift(const geom::ProjPointFp& x, const LocalRing& ring) {
  if (x.p() != ring.p()) throw Error(ErrorCode::InvalidParameter, "residue characteristic mismatch");
  std::vector<RingElem> c;
  for (int v : x.coords()) c.push_back(ring.from_integer(v));
  return ProjPointA(std::move(c));
}

ProjPointA ProjPointA::from_integers(std::initializer_list<long long> coords, const LocalRing& ring) {
  std::vector<RingElem> c;
  for (long long v : coords) c.push_back(ring.from_integer(v));
  return normalize(c);
}

geom::ProjPointFp ProjPointA::reduce() const {
  std::vector<long long> r;
  r.reserve(coords_.size());
  for (auto& c : coords_) r.push_back(c.residue());
  return geom::ProjPointFp::from_coords(r, geom::Prime(ring().p()));
}

std::string ProjPointA::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].to_string();
  return s + ")";
}

// --- linear algebra over A --------------------------------------------------

RingElem dot(std::span<const RingElem> a, std::span<const RingElem> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::InvalidParameter, "dot product of mismatched vectors");
  }
  RingElem s = a[0].ring().zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

bool LineA::contains(const ProjPointA& x) const { return dot(dual.coords(), x.coords()).is_zero(); }
bool PlaneA::contains(const ProjPointA& x) const { return dot(dual.coords(), x.coords()).is_zero(); }

namespace {

void require_dim(const ProjPointA& x, int n) {
  if (x.dim() != n) {
    throw Error(ErrorCode::UnsupportedDimension,
                "expected a point of P^" + std::to_string(n) + ", got " + x.to_string());
  }
}

std::vector<RingElem> cross(const ProjPointA& a, const ProjPointA& b) {
  require_dim(a, 2);
  require_dim(b, 2);
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Determinant of a square matrix of ring elements by permutation expansion.
RingElem permutation_det(const std::vector<std::vector<RingElem>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RingElem total = m[0][0].ring().zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    RingElem term = m[0][0].ring().one();
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

RingElem det3(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z) {
  require_dim(x, 2);
  require_dim(y, 2);
  require_dim(z, 2);
  return permutation_det({x.coords(), y.coords(), z.coords()});
}

RingElem det4(const ProjPointA& a, const ProjPointA& b, const ProjPointA& c, const ProjPointA& d) {
  for (auto* x : {&a, &b, &c, &d}) require_dim(*x, 3);
  return permutation_det({a.coords(), b.coords(), c.coords(), d.coords()});
}

std::vector<ProjPointA> enumerate_lifts(const geom::ProjPointFp& x, const LocalRing& ring) {
  if (x.p() != ring.p()) throw Error(ErrorCode::InvalidParameter, "residue characteristic mismatch");
  const auto& xc = x.coords();
  const std::size_t lead = static_cast<std::size_t>(
      std::find_if(xc.begin(), xc.end(), [](int c) { return c != 0; }) - xc.begin());
  const std::uint64_t fibre = ring.size() / ring.p();
  // Candidate lists per coordinate, each sorted by index; index = residue + p*m.
  std::vector<std::vector<RingElem>> choices(xc.size());
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (i == lead) {
      choices[i] = {ring.one()};
      continue;
    }
    for (std::uint64_t m = 0; m < fibre; ++m) {
      choices[i].push_back(ring.element(static_cast<std::uint64_t>(xc[i]) + ring.p() * m));
    }
  }
  std::vector<ProjPointA> out;
  std::vector<std::size_t> pos(xc.size(), 0);
  while (true) {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < xc.size(); ++i) c.push_back(choices[i][pos[i]]);
    out.push_back(ProjPointA::normalize(c));
    std::size_t i = xc.size();
    while (i > 0 && pos[i - 1] + 1 == choices[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
    ++pos[i - 1];
  }
  return out;
}

LineA line_through(const ProjPointA& x, const ProjPointA& y) {
  require_dim(x, 2);
  require_dim(y, 2);
  if (x.reduce() == y.reduce()) {
    throw Error(ErrorCode::IndeterminateSpan, x.to_string() + " and " + y.to_string() +
                                                  " have the same reduction " +
                                                  x.reduce().to_string());
  }
  return LineA{ProjPointA::normalize(cross(x, y))};
}

ProjPointA intersect(const LineA& a, const LineA& b) {
  if (a.dual.reduce() == b.dual.reduce()) {
    throw Error(ErrorCode::IndeterminateIntersection,
                "lines " + a.dual.to_string() + " and " + b.dual.to_string() +
                    " have the same reduction");
  }
  return ProjPointA::normalize(cross(a.dual, b.dual));
}

bool collinear(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z) {
  const auto rx = x.reduce(), ry = y.reduce(), rz = z.reduce();
  if (rx == ry && ry == rz) {
    throw Error(ErrorCode::UndecidableCollinearity,
                "all three points reduce to " + rx.to_string());
  }
  return det3(x, y, z).is_zero();
}

bool coplanar(const ProjPointA& a, const ProjPointA& b, const ProjPointA& c,
              const ProjPointA& d) {
  return det4(a, b, c, d).is_zero();
}

PlaneA plane_through(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z) {
  for (auto* v : {&x, &y, &z}) require_dim(*v, 3);
  if (geom::collinear(x.reduce(), y.reduce(), z.reduce())) {
    throw Error(ErrorCode::DegeneratePlane, "reductions of " + x.to_string() + ", " +
                                                y.to_string() + ", " + z.to_string() +
                                                " are collinear");
  }
  const auto& ring = x.ring();
  std::vector<RingElem> form;
  for (int i = 0; i < 4; ++i) {
    std::vector<RingElem> e(4, ring.zero());
    e[i] = ring.one();
    form.push_back(permutation_det({x.coords(), y.coords(), z.coords(), e}));
  }
  return PlaneA{ProjPointA::normalize(form)};
}

// --- JSON -------------------------------------------------------------------

nlohmann::json to_json(const LocalRing& ring) {
  return {{"kind", to_string(ring.kind())}, {"p", ring.p()}, {"k", ring.k()}};
}

LocalRing ring_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind != "zpk" && kind != "fpt") throw Error(ErrorCode::Parse, "unknown ring kind " + kind);
    return LocalRing::make(kind == "zpk" ? RingKind::IntegersModPk : RingKind::TruncatedPoly,
                           doc.at("p").get<int>(), doc.at("k").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed ring: ") + e.what());
  }
}

nlohmann::json to_json(const RingElem& x) {
  if (x.ring().kind() == RingKind::IntegersModPk) return x.index();
  return x.digits();
}

RingElem elem_from_json(const nlohmann::json& doc, const LocalRing& ring) {
  try {
    if (ring.kind() == RingKind::IntegersModPk) return ring.element(doc.get<std::uint64_t>());
    auto d = doc.get<std::vector<int>>();
    if (static_cast<int>(d.size()) != ring.k()) {
      throw Error(ErrorCode::Parse, "coefficient list must have length k");
    }
    for (int c : d) {
      if (c < 0 || c >= ring.p()) throw Error(ErrorCode::Parse, "coefficient out of range");
    }
    return ring.element(encode(d, ring.p()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed ring element: ") + e.what());
  }
}

nlohmann::json coords_json(const ProjPointA& x) {
  auto arr = nlohmann::json::array();
  for (auto& c : x.coords()) arr.push_back(to_json(c));
  return arr;
}

ProjPointA point_from_coords_json(const nlohmann::json& coords, const LocalRing& ring) {
  std::vector<RingElem> c;
  for (auto& e : coords) c.push_back(elem_from_json(e, ring));
  return ProjPointA::normalize(c);
}

nlohmann::json to_json(const ProjPointA& x) {
  return {{"ring", to_json(x.ring())}, {"coords", coords_json(x)}};
}

ProjPointA point_from_json(const nlohmann::json& doc) {
  try {
    return point_from_coords_json(doc.at("coords"), ring_from_json(doc.at("ring")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed projective point: ") + e.what());
  }
}

}  // namespace nonlift::ring
