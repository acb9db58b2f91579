// Acceptance suite: one PASS/FAIL line per criterion, each under its own
// wall-clock limit. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nonlift/error.hpp"
#include "nonlift/finite_geometry.hpp"
#include "nonlift/lift_checker.hpp"
#include "nonlift/local_ring.hpp"
#include "nonlift/motive.hpp"
#include "oracles.hpp"

using namespace nonlift;
using geom::Prime;
using motive::Integer;
using ring::LocalRing;
using ring::RingKind;

namespace {

// Collects failed expectations for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

LocalRing zpk(int p, int k) { return LocalRing::make(RingKind::IntegersModPk, p, k); }
LocalRing fpt(int p, int k) { return LocalRing::make(RingKind::TruncatedPoly, p, k); }

std::string str(long long n) { return std::to_string(n); }

void configuration_counts(Checker& c) {
  for (long long p : {2, 3, 5, 7}) {
    const auto pts = geom::enumerate_points(3, Prime(p)).size();
    const auto lines = geom::enumerate_lines(3, Prime(p)).size();
    c.expect(pts == static_cast<std::size_t>(1 + p + p * p + p * p * p), "points of P^3(F_" + str(p) + ")");
    c.expect(lines == static_cast<std::size_t>(1 + p + 2 * p * p + p * p * p + p * p * p * p),
             "lines of P^3(F_" + str(p) + ")");
  }
}

void certificates(Checker& c) {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const auto w2 = lift::propagate_forced_lift(Prime(p), zpk(p, 2));
    c.expect(w2.obstruction.element == zpk(p, 2).from_integer(p), "element p*1 in Z/p^2, p=" + str(p));
    c.expect(!w2.obstruction.element.is_zero(), "p*1 nonzero in Z/p^2, p=" + str(p));
    c.expect(w2.obstruction.verdict == lift::Verdict::NonLiftable, "non-liftable over Z/p^2, p=" + str(p));
    for (const auto& r : {zpk(p, 1), fpt(p, 2)}) {
      const auto cert = lift::propagate_forced_lift(Prime(p), r);
      c.expect(cert.obstruction.element.is_zero(), "p*1 = 0 over " + r.name());
      c.expect(cert.obstruction.verdict == lift::Verdict::LiftableNotExcluded, "no obstruction over " + r.name());
    }
  }
}

void oracle_agreement(Checker& c) {
  struct Case {
    int p;
    LocalRing ring;
    std::size_t expected;
  };
  for (const auto& [p, r, expected] :
       {Case{2, zpk(2, 2), 0}, Case{3, zpk(3, 2), 0}, Case{2, zpk(2, 1), 1}, Case{3, zpk(3, 1), 1}}) {
    lift::SearchOptions opts;
    opts.frame = lift::Frame::standard(r);
    const auto res = lift::brute_force_lift_search(Prime(p), r, opts);
    c.expect(res.maps.size() == expected, "map count over " + r.name() + " is " + str(res.maps.size()));
    if (expected == 1 && res.maps.size() == 1) {
      bool identity = true;
      for (auto& [x, y] : res.maps[0]) identity = identity && y == ring::ProjPointA::trivial_lift(x, r);
      c.expect(identity, "the single map over " + r.name() + " is the identity");
    }
  }
}

void mp_extraction(Checker& c) {
  for (int p : {2, 3, 5}) {
    const auto cert = lift::propagate_forced_lift(Prime(p), zpk(p, 2));
    const auto used = lift::extract_used_configuration(cert.trace);
    c.expect(used.points == geom::mp_configuration(Prime(p)).points, "pinned points equal M_" + str(p));
    c.expect(used.points.size() == static_cast<std::size_t>(2 * p + 3), "|M_" + str(p) + "| = 2p+3");
  }
}

void picard_numbers(Checker& c) {
  const auto fl = motive::construction_one_class(motive::flag_class_typeA(3));
  const auto q = motive::construction_one_class(motive::quadric_class(3));
  c.expect(motive::invariants_table(fl).picard == 5, "Picard number for SL_3/B");
  c.expect(motive::invariants_table(q).picard == 3, "Picard number for Q^3");
  c.expect(fl.cls.degree() == 6 && fl.dim == 6, "degree 6 for SL_3/B");
  c.expect(q.cls.degree() == 6 && q.dim == 6, "degree 6 for Q^3");
}

bool nonnegative_coeffs(const motive::LPolynomial& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](const Integer& x) { return x >= 0; });
}

void good_property(Checker& c) {
  c.expect(nonnegative_coeffs(motive::construction_one_class(motive::flag_class_typeA(3)).cls), "SL_3/B");
  c.expect(nonnegative_coeffs(motive::construction_one_class(motive::quadric_class(3)).cls), "Q^3");
  for (int p : {2, 3, 5, 7}) {
    c.expect(nonnegative_coeffs(motive::construction_two_class(p).cls), "second construction p=" + str(p));
  }
}

void count_consistency(Checker& c) {
  for (int p : {2, 3, 5}) {
    c.expect(motive::grassmannian_class(2, 4).cls.evaluate(p) == geom::enumerate_lines(3, Prime(p)).size(),
             "Gr(2,4) at " + str(p));
    c.expect(motive::projective_space_class(3).cls.evaluate(p) == geom::enumerate_points(3, Prime(p)).size(),
             "P^3 at " + str(p));
  }
  for (int p : {2, 3}) {
    const auto oracle = motive::point_count_oracle_construction_two(p, p).total;
    c.expect(oracle == motive::construction_two_class(p).cls.evaluate(p), "stratified count at " + str(p));
  }
  c.expect(motive::point_count_oracle_construction_two(2, 2).total == 315, "315 at p=2");
}

void model_space_oracles(Checker& c) {
  const auto flag = oracle::flag_incidence_count(2);
  const auto quadric = oracle::quadric_count(3, 2);
  c.expect(flag == 21, "flag incidence brute force count " + str(flag));
  c.expect(quadric == 15, "quadric brute force count " + str(quadric));
  c.expect(motive::flag_class_typeA(3).cls.evaluate(2) == flag, "flag class at 2");
  c.expect(motive::quadric_class(3).cls.evaluate(2) == quadric, "quadric class at 2");
}

void incidence_axioms(Checker& c) {
  for (int p : {2, 3, 5, 7}) {
    const auto pts = geom::enumerate_points(2, Prime(p));
    const auto lines = geom::enumerate_lines(2, Prime(p));
    bool ok = lines.size() == pts.size();
    for (auto& l : lines) ok = ok && l.points().size() == static_cast<std::size_t>(p + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        int common = 0;
        for (auto& l : lines) common += l.contains(pts[i]) && l.contains(pts[j]);
        ok = ok && common == 1;
      }
    }
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        int common = 0;
        for (auto& x : lines[a].points()) common += lines[b].contains(x);
        ok = ok && common == 1;
      }
    }
    c.expect(ok, "incidence axioms of P^2(F_" + str(p) + ")");
  }
}

std::vector<LocalRing> rings_up_to(std::uint64_t bound) {
  std::vector<LocalRing> out;
  for (int p : {2, 3, 5, 7}) {
    std::uint64_t size = p;
    for (int k = 1; size <= bound; ++k, size *= p) {
      out.push_back(zpk(p, k));
      if (k > 1) out.push_back(fpt(p, k));
    }
  }
  return out;
}

void ring_laws(Checker& c) {
  for (const auto& r : rings_up_to(81)) {
    const auto els = r.elements();
    const long long n = static_cast<long long>(r.size());
    bool ok = true;
    for (auto& a : els) {
      ok = ok && a.is_unit() == (a.residue() != 0);
      if (a.is_unit()) ok = ok && a * a.inverse() == r.one();
      for (auto& b : els) {
        const auto ab = a * b;
        const auto apb = a + b;
        ok = ok && ab == b * a && apb == b + a;
        if (r.kind() == RingKind::IntegersModPk) {
          ok = ok && ab.index() == static_cast<std::uint64_t>(
                                       oracle::mod(static_cast<long long>(a.index() * b.index()), n));
        } else {
          ok = ok && ab.digits() == oracle::truncated_mul(a.digits(), b.digits(), r.p());
        }
        for (auto& x : els) {
          ok = ok && ab * x == a * (b * x) && apb + x == a + (b + x) && a * (b + x) == ab + a * x;
        }
      }
    }
    c.expect(ok, "ring laws in " + r.name());
  }
}

void normalization(Checker& c) {
  for (const auto& r : rings_up_to(16)) {
    const auto els = r.elements();
    bool ok = true;
    for (auto& a : els)
      for (auto& b : els)
        for (auto& x : els) {
          if (!a.is_unit() && !b.is_unit() && !x.is_unit()) continue;
          const std::vector<ring::RingElem> v{a, b, x};
          const auto pt = ring::ProjPointA::normalize(v);
          ok = ok && ring::ProjPointA::normalize(pt.coords()) == pt;
          for (auto& u : els) {
            if (!u.is_unit()) continue;
            const std::vector<ring::RingElem> s{u * a, u * b, u * x};
            ok = ok && ring::ProjPointA::normalize(s) == pt;
          }
        }
    c.expect(ok, "normalization in " + r.name());
  }
}

void class_properties(Checker& c) {
  std::vector<motive::VarietyClass> classes;
  for (int n = 0; n <= 5; ++n) classes.push_back(motive::projective_space_class(n));
  for (int d = 1; d <= 6; ++d) classes.push_back(motive::quadric_class(d));
  for (int m = 2; m <= 6; ++m)
    for (int r = 1; r < m; ++r) classes.push_back(motive::grassmannian_class(r, m));
  for (int m = 2; m <= 6; ++m) classes.push_back(motive::flag_class_typeA(m));
  for (auto* y : {"flag", "quadric"}) {
    const auto base = std::string(y) == "flag" ? motive::flag_class_typeA(3) : motive::quadric_class(3);
    classes.push_back(motive::construction_one_class(base, motive::Center::FrobeniusGraph));
    classes.push_back(motive::construction_one_class(base, motive::Center::Diagonal));
  }
  for (int p : {2, 3, 5, 7}) classes.push_back(motive::construction_two_class(p));
  for (auto& v : classes) {
    const auto t = motive::invariants_table(v);
    c.expect(t.palindromic, v.name + " palindromic");
    c.expect(t.hdr_sums_equal, v.name + " Hodge-de Rham sums");
  }
}

void euler_additivity(Checker& c) {
  const auto pt = motive::projective_space_class(0);
  const auto f3 = motive::flag_class_typeA(3);
  const auto q3 = motive::quadric_class(3);
  const std::vector<std::tuple<motive::VarietyClass, motive::VarietyClass, int>> inputs{
      {motive::projective_space_class(2), pt, 2},
      {motive::projective_space_class(3), pt, 3},
      {motive::projective_space_class(3), motive::projective_space_class(1), 2},
      {motive::quadric_class(4), motive::quadric_class(2), 2},
      {motive::product_class(f3, f3), f3, 3},
      {motive::product_class(q3, q3), q3, 3}};
  for (auto& [x, z, codim] : inputs) {
    const auto b = motive::blowup_class(x, z, codim);
    c.expect(b.cls.evaluate(1) == x.cls.evaluate(1) + (codim - 1) * z.cls.evaluate(1),
             "Euler additivity for " + b.name);
  }
}

void property_suites(Checker& c) {
  incidence_axioms(c);
  ring_laws(c);
  normalization(c);
  class_properties(c);
  euler_additivity(c);
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Checker&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "configuration counts", 5, configuration_counts},
      {2, "non-liftability certificates", 1, certificates},
      {3, "oracle agreement", 60, oracle_agreement},
      {4, "M_p extraction", 1, mp_extraction},
      {5, "Picard numbers", 1, picard_numbers},
      {6, "non-negative coefficients", 1, good_property},
      {7, "cross-theory count consistency", 10, count_consistency},
      {8, "model-space oracles", 1, model_space_oracles},
      {9, "property suites", 30, property_suites},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= crit.limit_seconds) {
      checker.expect(false, "runtime limit of " + std::to_string(crit.limit_seconds) + " s exceeded");
    }
    const bool pass = checker.failures().empty();
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", elapsed, crit.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << crit.id << ": " << crit.name << " (" << timing
              << ")\n";
    for (auto& f : checker.failures()) std::cout << "    " << f << "\n";
  }
  return failed == 0 ? 0 : 1;
}
