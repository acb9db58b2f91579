#include "nonlift/motive.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nonlift/error.hpp"
#include "nonlift/finite_geometry.hpp"

namespace nonlift::motive {

// --- LPolynomial --------------------------------------------------------------

LPolynomial::LPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

LPolynomial::LPolynomial(std::initializer_list<long long> coeffs)
    : coeffs_(coeffs.begin(), coeffs.end()) {
  trim();
}

void LPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

LPolynomial LPolynomial::monomial(int degree, Integer coeff) {
  if (degree < 0) throw Error(ErrorCode::InvalidParameter, "negative degree");
  std::vector<Integer> c(degree + 1, 0);
  c[degree] = std::move(coeff);
  return LPolynomial(std::move(c));
}

LPolynomial LPolynomial::geometric(int from, int to) {
  if (to < from) return {};
  if (from < 0) throw Error(ErrorCode::InvalidParameter, "negative degree");
  std::vector<Integer> c(to + 1, 0);
  for (int i = from; i <= to; ++i) c[i] = 1;
  return LPolynomial(std::move(c));
}

Integer LPolynomial::coeff(int i) const {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Integer(0);
}

Integer LPolynomial::evaluate(const Integer& q) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

LPolynomial operator+(const LPolynomial& a, const LPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return LPolynomial(std::move(c));
}

LPolynomial operator-(const LPolynomial& a, const LPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return LPolynomial(std::move(c));
}

LPolynomial operator*(const LPolynomial& a, const LPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return LPolynomial(std::move(c));
}

std::string LPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = c < 0 ? Integer(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (i == 0 || mag != 1) s += mag.str();
    if (i > 0) s += i == 1 ? "L" : "L^" + std::to_string(i);
  }
  return s;
}

// --- model spaces -------------------------------------------------------------

VarietyClass projective_space_class(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidParameter, "projective space of negative dimension");
  return {"P^" + std::to_string(n), n, LPolynomial::geometric(0, n)};
}

VarietyClass quadric_class(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "quadric dimension must be at least 1");
  auto cls = LPolynomial::geometric(0, d);
  if (d % 2 == 0) cls = cls + LPolynomial::monomial(d / 2);
  return {"Q^" + std::to_string(d), d, std::move(cls)};
}

VarietyClass grassmannian_class(int r, int m) {
  if (r <= 0 || r >= m) {
    throw Error(ErrorCode::InvalidParameter, "Grassmannian needs 0 < r < m");
  }
  // q-Pascal: [m, r] = [m-1, r-1] + L^r [m-1, r], row by row.
  std::vector<LPolynomial> row{LPolynomial{1}};
  for (int n = 1; n <= m; ++n) {
    std::vector<LPolynomial> next(n + 1);
    next[0] = LPolynomial{1};
    next[n] = LPolynomial{1};
    for (int j = 1; j < n; ++j) next[j] = row[j - 1] + LPolynomial::monomial(j) * row[j];
    row = std::move(next);
  }
  return {"Gr(" + std::to_string(r) + "," + std::to_string(m) + ")", r * (m - r), row[r]};
}

VarietyClass flag_class_typeA(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidParameter, "flag variety SL_m/B needs m >= 2");
  if (m > 8) {
    throw Error(ErrorCode::BudgetExceeded, "permutation enumeration is capped at m = 8");
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Integer> by_length(m * (m - 1) / 2 + 1, 0);
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) inversions += perm[i] > perm[j];
    }
    ++by_length[inversions];
  } while (std::next_permutation(perm.begin(), perm.end()));
  LPolynomial enumerated(std::move(by_length));

  LPolynomial product{1};
  for (int i = 1; i < m; ++i) product = product * LPolynomial::geometric(0, i);
  if (!(product == enumerated)) {
    throw Error(ErrorCode::Internal, "inversion count disagrees with the product formula");
  }
  return {"SL_" + std::to_string(m) + "/B", m * (m - 1) / 2, std::move(enumerated)};
}

VarietyClass product_class(const VarietyClass& a, const VarietyClass& b) {
  return {a.name + " x " + b.name, a.dim + b.dim, a.cls * b.cls};
}

VarietyClass blowup_class(const VarietyClass& x, const VarietyClass& z, int codim) {
  if (codim < 2) throw Error(ErrorCode::InvalidBlowUp, "blow-up center must have codimension >= 2");
  if (z.dim + codim != x.dim) {
    throw Error(ErrorCode::InvalidBlowUp, "center of dimension " + std::to_string(z.dim) +
                                              " cannot have codimension " + std::to_string(codim) +
                                              " in a variety of dimension " +
                                              std::to_string(x.dim));
  }
  return {"Bl_{" + z.name + "}(" + x.name + ")", x.dim,
          x.cls + LPolynomial::geometric(1, codim - 1) * z.cls};
}

VarietyClass construction_one_class(const VarietyClass& y, Center center) {
  if (y.dim < 2) throw Error(ErrorCode::Degenerate, "the first construction needs dim Y >= 2");
  VarietyClass c = y;
  c.name = (center == Center::FrobeniusGraph ? "graph of Frobenius on " : "diagonal of ") + y.name;
  auto x = blowup_class(product_class(y, y), c, y.dim);
  x.name = "Bl_{" + c.name + "}(" + y.name + " x " + y.name + ")";
  return x;
}

VarietyClass construction_two_class(int p) {
  const geom::Prime prime(p);
  const Integer n_points = geom::projective_point_count(3, prime);
  const Integer n_lines = grassmannian_class(2, 4).cls.evaluate(p);
  const auto p3 = projective_space_class(3);
  const VarietyClass points{"P^3(F_p)", 0, LPolynomial(std::vector<Integer>{n_points})};
  const auto y = blowup_class(p3, points, 3);
  const VarietyClass lines{"strict transforms of F_p-lines", 1,
                           LPolynomial(std::vector<Integer>{n_lines, n_lines})};
  auto x = blowup_class(y, lines, 2);
  x.name = "P^3 blown up along F_" + std::to_string(p) + "-points and lines";
  return x;
}

StratifiedCount point_count_oracle_construction_two(int p, int q) {
  const geom::Prime prime(p);
  if (q != p) {
    throw Error(ErrorCode::UnsupportedQuery, "the stratified count is implemented for q = p only");
  }
  const auto ambient = geom::enumerate_points(3, geom::Prime(q));
  const auto rational = geom::enumerate_points(3, prime);
  const auto directions = geom::enumerate_points(2, geom::Prime(q));
  auto is_rational = [&](const geom::ProjPointFp& x) {
    return geom::index_of(rational, x) != geom::npos;
  };

  // Each rational point is replaced by the plane of directions through it.
  Integer y = 0;
  for (auto& x : ambient) y += is_rational(x) ? Integer(directions.size()) : Integer(1);

  // The strict transform of a line keeps its non-rational points and meets
  // the exceptional plane of each rational point once.
  Integer on_strict_transforms = 0;
  for (auto& line : geom::enumerate_lines(3, prime)) {
    std::size_t rational_on_line = 0, other = 0;
    for (auto& x : line.points()) (is_rational(x) ? rational_on_line : other)++;
    on_strict_transforms += other + rational_on_line;
  }
  // Blowing up a curve in a threefold trades each of its points for a P^1.
  const Integer x = y - on_strict_transforms + on_strict_transforms * (1 + q);
  return {y, x};
}

// --- invariants ---------------------------------------------------------------

InvariantsTable invariants_table(const VarietyClass& v) {
  if (v.dim < 0 || v.cls.degree() > v.dim) {
    throw Error(ErrorCode::InvalidParameter,
                "class " + v.cls.to_string() + " does not fit dimension " + std::to_string(v.dim));
  }
  const int d = v.dim;
  InvariantsTable t;
  t.betti.assign(2 * d + 1, 0);
  t.hodge.assign(d + 1, std::vector<Integer>(d + 1, 0));
  for (int i = 0; i <= d; ++i) {
    t.betti[2 * i] = v.cls.coeff(i);
    t.hodge[i][i] = v.cls.coeff(i);
  }
  t.picard = v.cls.coeff(1);
  t.euler = v.cls.evaluate(1);
  t.palindromic = true;
  t.nonnegative = true;
  for (int i = 0; i <= d; ++i) {
    t.palindromic = t.palindromic && v.cls.coeff(i) == v.cls.coeff(d - i);
    t.nonnegative = t.nonnegative && v.cls.coeff(i) >= 0;
  }
  Integer betti_sum = 0, hodge_sum = 0;
  for (auto& b : t.betti) betti_sum += b;
  for (auto& row : t.hodge) {
    for (auto& h : row) hodge_sum += h;
  }
  t.hdr_sums_equal = betti_sum == hodge_sum;
  return t;
}

// --- JSON -----------------------------------------------------------------------

nlohmann::json integer_json(const Integer& n) {
  static const Integer limit = (Integer(1) << 53) - 1;
  if (n <= limit && n >= -limit) return n.convert_to<long long>();
  return n.str();
}

Integer integer_from_json(const nlohmann::json& doc) {
  if (doc.is_string()) return Integer(doc.get<std::string>());
  if (doc.is_number_integer()) return Integer(doc.get<long long>());
  throw Error(ErrorCode::Parse, "expected an integer or a decimal string");
}

nlohmann::json to_json(const VarietyClass& v) {
  auto coeffs = nlohmann::json::array();
  for (int i = 0; i <= std::max(v.dim, v.cls.degree()); ++i) coeffs.push_back(integer_json(v.cls.coeff(i)));
  return {{"name", v.name}, {"dim", v.dim}, {"coeffs", coeffs}};
}

VarietyClass variety_class_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Integer> c;
    for (auto& e : doc.at("coeffs")) c.push_back(integer_from_json(e));
    return {doc.at("name").get<std::string>(), doc.at("dim").get<int>(), LPolynomial(std::move(c))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed class: ") + e.what());
  }
}

nlohmann::json to_json(const InvariantsTable& t) {
  auto list = [](const std::vector<Integer>& v) {
    auto arr = nlohmann::json::array();
    for (auto& x : v) arr.push_back(integer_json(x));
    return arr;
  };
  auto hodge = nlohmann::json::array();
  for (auto& row : t.hodge) hodge.push_back(list(row));
  return {{"betti", list(t.betti)},
          {"hodge", hodge},
          {"picard", integer_json(t.picard)},
          {"euler", integer_json(t.euler)},
          {"palindromic", t.palindromic},
          {"nonnegative", t.nonnegative},
          {"hdrSumsEqual", t.hdr_sums_equal}};
}

InvariantsTable invariants_table_from_json(const nlohmann::json& doc) {
  try {
    auto list = [](const nlohmann::json& arr) {
      std::vector<Integer> v;
      for (auto& x : arr) v.push_back(integer_from_json(x));
      return v;
    };
    InvariantsTable t;
    t.betti = list(doc.at("betti"));
    for (auto& row : doc.at("hodge")) t.hodge.push_back(list(row));
    t.picard = integer_from_json(doc.at("picard"));
    t.euler = integer_from_json(doc.at("euler"));
    t.palindromic = doc.at("palindromic").get<bool>();
    t.nonnegative = doc.at("nonnegative").get<bool>();
    t.hdr_sums_equal = doc.at("hdrSumsEqual").get<bool>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed invariants table: ") + e.what());
  }
}

}  // namespace nonlift::motive
