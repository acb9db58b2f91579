#pragma once

// Classes of cellular varieties in the Grothendieck ring, as integer
// polynomials in the Lefschetz class L, and the numerical invariants they
// determine.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace nonlift::motive {

using Integer = boost::multiprecision::cpp_int;

/// Dense integer polynomial in L; coefficient i multiplies L^i.
class LPolynomial {
 public:
  LPolynomial() = default;
  explicit LPolynomial(std::vector<Integer> coeffs);
  LPolynomial(std::initializer_list<long long> coeffs);

  static LPolynomial monomial(int degree, Integer coeff = 1);
  /// L^from + L^{from+1} + ... + L^to; zero when to < from.
  static LPolynomial geometric(int from, int to);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Integer coeff(int i) const;
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }

  Integer evaluate(const Integer& q) const;

  friend LPolynomial operator+(const LPolynomial& a, const LPolynomial& b);
  friend LPolynomial operator-(const LPolynomial& a, const LPolynomial& b);
  friend LPolynomial operator*(const LPolynomial& a, const LPolynomial& b);
  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;

  /// "1 + 5L + 11L^2 + ..."
  std::string to_string() const;

 private:
  void trim();

  std::vector<Integer> coeffs_;
};

struct VarietyClass {
  std::string name;
  int dim = 0;
  LPolynomial cls;

  friend bool operator==(const VarietyClass&, const VarietyClass&) = default;
};

VarietyClass projective_space_class(int n);
/// Smooth quadric hypersurface of dimension d.
VarietyClass quadric_class(int d);
/// Grassmannian of r-planes in an m-space: the Gaussian binomial [m choose r]_L.
VarietyClass grassmannian_class(int r, int m);
/// Full flag variety SL_m/B, by enumerating permutations of S_m by inversion
/// count; cross-checked against the product of [i+1]_L. m <= 8.
VarietyClass flag_class_typeA(int m);

VarietyClass product_class(const VarietyClass& a, const VarietyClass& b);

/// [Bl_Z X] = [X] + (L + ... + L^{c-1}) [Z].
VarietyClass blowup_class(const VarietyClass& x, const VarietyClass& z, int codim);

/// Center of the first construction: the graph of Frobenius or the diagonal.
/// Both are isomorphic to Y, so both have class [Y].
enum class Center { FrobeniusGraph, Diagonal };

/// Bl_{center}(Y x Y).
VarietyClass construction_one_class(const VarietyClass& y, Center center = Center::FrobeniusGraph);

/// P^3 blown up in its F_p-points, then in the strict transforms of all F_p-lines.
VarietyClass construction_two_class(int p);

struct StratifiedCount {
  Integer points_blown_up;  // #Y(F_q) after the point blow-ups
  Integer total;            // #X(F_q)
};

/// Point count of the second construction over F_q, walking the strata of
/// P^3(F_q) with the rational points and lines enumerated explicitly.
/// Only q = p is supported.
StratifiedCount point_count_oracle_construction_two(int p, int q);

struct InvariantsTable {
  std::vector<Integer> betti;               // b_0 .. b_{2d}
  std::vector<std::vector<Integer>> hodge;  // h^{i,j}, 0 <= i,j <= d
  Integer picard;
  Integer euler;
  bool palindromic = false;
  bool nonnegative = false;
  bool hdr_sums_equal = false;

  friend bool operator==(const InvariantsTable&, const InvariantsTable&) = default;
};

/// Betti and Hodge numbers read off a cellular class. Throws InvalidParameter
/// when the class has degree above its dimension.
InvariantsTable invariants_table(const VarietyClass& v);

/// Plain JSON number up to 2^53-1, decimal string beyond.
nlohmann::json integer_json(const Integer& n);
Integer integer_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const VarietyClass& v);
VarietyClass variety_class_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const InvariantsTable& t);
InvariantsTable invariants_table_from_json(const nlohmann::json& doc);

}  // namespace nonlift::motive
