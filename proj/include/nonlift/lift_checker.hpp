#pragma once

// Collinearity-preserving maps P^2(F_p) -> P^2(A).
//
// Fixing the images of the frame (1:0:0), (0:1:0), (0:0:1), (1:1:1) forces
// the image of every point of M_p by repeated line intersection. Walking the
// points P_n = (n:0:1) and Q_n = (n+1:1:1) up to n = p brings P_p back to
// (0:0:1) over F_p while its forced image over A is (p:0:1); the two agree
// only if p = 0 in A. `propagate_forced_lift` records that derivation, and
// `brute_force_lift_search` independently enumerates every map.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonlift/finite_geometry.hpp"
#include "nonlift/local_ring.hpp"

namespace nonlift::lift {

using geom::ProjPointFp;
using ring::LocalRing;
using ring::ProjPointA;

/// A total assignment P^2(F_p) -> P^2(A).
using LiftMap = std::map<ProjPointFp, ProjPointA>;

/// Images of (1:0:0), (0:1:0), (0:0:1), (1:1:1).
struct Frame {
  std::array<ProjPointA, 4> images;

  static std::array<ProjPointFp, 4> sources(geom::Prime p);
  static Frame standard(const LocalRing& ring);
  /// Whether the four reductions are in general position.
  bool in_general_position() const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// A line over A used in a derivation, remembered with the two points it was drawn through.
struct DerivationLine {
  std::array<ProjPointFp, 2> through;
  ring::LineA line;

  friend bool operator==(const DerivationLine&, const DerivationLine&) = default;
};

struct DerivationStep {
  std::string label;  // "(1:1:0)", "P_3", "Q_3"
  ProjPointFp target;
  DerivationLine line1;
  DerivationLine line2;
  ProjPointA derived;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

enum class TraceStatus { Complete, Incomplete };

struct PropagationTrace {
  int p = 0;
  LocalRing ring = LocalRing::make(ring::RingKind::IntegersModPk, 2, 1);
  std::vector<DerivationStep> steps;
  TraceStatus status = TraceStatus::Incomplete;

  friend bool operator==(const PropagationTrace&, const PropagationTrace&) = default;
};

enum class Verdict { NonLiftable, LiftableNotExcluded };

std::string_view to_string(Verdict v);  // "non-liftable" / "liftable-not-excluded"

struct Obstruction {
  ProjPointA derived;   // forced image of P_p = (p:0:1)
  ProjPointA required;  // pinned image of P_0 = (0:0:1)
  ring::RingElem element;  // p * 1 in A
  Verdict verdict;

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct Certificate {
  PropagationTrace trace;
  Obstruction obstruction;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Runs the forced derivation from the standard frame. Every intersection is
/// checked for distinct dual reductions; a failure there is an internal error.
Certificate propagate_forced_lift(geom::Prime p, const LocalRing& ring);

struct Violation {
  std::array<ProjPointFp, 3> triple;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Collinear triples of P^2(F_p) whose images are not collinear over A.
/// Triples whose three images share one reduction are accepted.
std::vector<Violation> check_collinearity_preserving(const LiftMap& map, geom::Prime p,
                                                     const LocalRing& ring);

struct SearchOptions {
  /// Fixed frame images; nullopt searches over every lift of the frame too.
  std::optional<Frame> frame;
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
};

struct SearchResult {
  std::vector<LiftMap> maps;
  std::uint64_t nodes = 0;
};

/// Depth-first enumeration of collinearity-preserving maps. Points are
/// assigned in lexicographic order, candidates in lexicographic order of
/// their coordinates, and every collinear triple is checked as soon as its
/// last point is assigned. Each candidate tried counts as one node; exceeding
/// the budget throws BudgetExceeded. Results and node counts do not depend on
/// `jobs`.
SearchResult brute_force_lift_search(geom::Prime p, const LocalRing& ring,
                                     const SearchOptions& options);

/// The points pinned by a completed trace together with its derivation lines,
/// as a restriction configuration of P^2(F_p).
geom::IncidenceConfig extract_used_configuration(const PropagationTrace& trace);

std::string render_text(const Certificate& cert);
nlohmann::json render_json(const Certificate& cert);
Certificate parse_certificate(const nlohmann::json& doc);

}  // namespace nonlift::lift
