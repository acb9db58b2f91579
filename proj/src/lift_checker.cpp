#include "nonlift/lift_checker.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "nonlift/error.hpp"

namespace nonlift::lift {

std::string_view to_string(Verdict v) {
  return v == Verdict::NonLiftable ? "non-liftable" : "liftable-not-excluded";
}

// --- Frame ------------------------------------------------------------------

std::array<ProjPointFp, 4> Frame::sources(geom::Prime p) {
  return {ProjPointFp({1, 0, 0}, p), ProjPointFp({0, 1, 0}, p), ProjPointFp({0, 0, 1}, p),
          ProjPointFp({1, 1, 1}, p)};
}

Frame Frame::standard(const LocalRing& ring) {
  const auto src = sources(geom::Prime(ring.p()));
  return Frame{{ProjPointA::trivial_lift(src[0], ring), ProjPointA::trivial_lift(src[1], ring),
                ProjPointA::trivial_lift(src[2], ring), ProjPointA::trivial_lift(src[3], ring)}};
}

bool Frame::in_general_position() const {
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<ProjPointFp> r;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) r.push_back(images[i].reduce());
    }
    if (geom::collinear(r[0], r[1], r[2])) return false;
  }
  return true;
}

// --- forced propagation -----------------------------------------------------

namespace {

class Propagator {
 public:
  Propagator(geom::Prime p, const LocalRing& ring) : p_(p), ring_(ring) {}

  // Intersects l(a1,a2) with l(b1,b2), where the arguments are images over A
  // and the F_p points they were pinned for.
  ProjPointA derive(std::string label, const ProjPointFp& target,
                    std::pair<ProjPointFp, ProjPointA> a1, std::pair<ProjPointFp, ProjPointA> a2,
                    std::pair<ProjPointFp, ProjPointA> b1, std::pair<ProjPointFp, ProjPointA> b2) {
    DerivationLine l1{{a1.first, a2.first}, ring::line_through(a1.second, a2.second)};
    DerivationLine l2{{b1.first, b2.first}, ring::line_through(b1.second, b2.second)};
    if (l1.line.dual.reduce() == l2.line.dual.reduce()) {
      throw Error(ErrorCode::Internal, "indeterminate intersection while deriving " + label);
    }
    ProjPointA x = ring::intersect(l1.line, l2.line);
    if (!l1.line.contains(x) || !l2.line.contains(x) || x.reduce() != target) {
      throw Error(ErrorCode::Internal, "inconsistent intersection while deriving " + label);
    }
    steps_.push_back(DerivationStep{std::move(label), target, std::move(l1), std::move(l2), x});
    return x;
  }

  std::vector<DerivationStep> take_steps() { return std::move(steps_); }

  ProjPointFp pt(long long a, long long b, long long c) const { return ProjPointFp({a, b, c}, p_); }

 private:
  geom::Prime p_;
  LocalRing ring_;
  std::vector<DerivationStep> steps_;
};

}  // namespace

Certificate propagate_forced_lift(geom::Prime p, const LocalRing& ring) {
  if (ring.p() != p) {
    throw Error(ErrorCode::InvalidParameter, "ring " + ring.name() + " does not have residue field F_" +
                                                 std::to_string(p.value()));
  }
  Propagator prop(p, ring);
  const Frame frame = Frame::standard(ring);
  const auto e0 = std::make_pair(prop.pt(1, 0, 0), frame.images[0]);
  const auto e1 = std::make_pair(prop.pt(0, 1, 0), frame.images[1]);
  const auto e2 = std::make_pair(prop.pt(0, 0, 1), frame.images[2]);
  const auto f = std::make_pair(prop.pt(1, 1, 1), frame.images[3]);

  const auto infinity = std::make_pair(
      prop.pt(1, 1, 0), prop.derive("(1:1:0)", prop.pt(1, 1, 0), e2, f, e0, e1));

  // P_0 = (0:0:1) and Q_0 = (1:1:1) are frame points.
  std::vector<std::pair<ProjPointFp, ProjPointA>> P{e2}, Q{f};
  for (long long n = 1; n <= p; ++n) {
    const auto pn = prop.pt(n, 0, 1);
    P.emplace_back(pn, prop.derive("P_" + std::to_string(n), pn, Q[n - 1], e1, P[0], e0));
    const auto qn = prop.pt(n + 1, 1, 1);
    Q.emplace_back(qn, prop.derive("Q_" + std::to_string(n), qn, P[n], infinity, Q[0], e0));
  }

  Certificate cert{PropagationTrace{p, ring, prop.take_steps(), TraceStatus::Complete},
                   Obstruction{P[p].second, P[0].second, ring.from_integer(p),
                               Verdict::LiftableNotExcluded}};
  auto& ob = cert.obstruction;
  ob.verdict = ob.derived == ob.required ? Verdict::LiftableNotExcluded : Verdict::NonLiftable;
  if ((ob.verdict == Verdict::NonLiftable) != !ob.element.is_zero()) {
    throw Error(ErrorCode::Internal, "forced image of P_p disagrees with p*1 in " + ring.name());
  }
  return cert;
}

// --- collinearity checks ----------------------------------------------------

namespace {

// Triples of distinct collinear points of P^2(F_p), as sorted index triples
// into the lexicographic point list.
std::vector<std::array<std::size_t, 3>> collinear_triples(const std::vector<ProjPointFp>& points,
                                                          geom::Prime p) {
  std::vector<std::array<std::size_t, 3>> out;
  for (auto& line : geom::enumerate_lines(2, p)) {
    std::vector<std::size_t> idx;
    for (auto& x : line.points()) idx.push_back(geom::index_of(points, x));
    std::sort(idx.begin(), idx.end());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        for (std::size_t c = b + 1; c < idx.size(); ++c) out.push_back({idx[a], idx[b], idx[c]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool images_collinear(const ProjPointA& x, const ProjPointA& y, const ProjPointA& z) {
  const auto rx = x.reduce();
  if (rx == y.reduce() && rx == z.reduce()) return true;
  return ring::collinear(x, y, z);
}

void check_image(const ProjPointFp& src, const ProjPointA& img, const LocalRing& ring) {
  if (!(img.ring() == ring) || img.dim() != 2) {
    throw Error(ErrorCode::InvalidParameter,
                "image of " + src.to_string() + " is not a point of P^2(" + ring.name() + ")");
  }
}

}  // namespace

std::vector<Violation> check_collinearity_preserving(const LiftMap& map, geom::Prime p,
                                                     const LocalRing& ring) {
  const auto points = geom::enumerate_points(2, p);
  std::vector<const ProjPointA*> image(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto it = map.find(points[i]);
    if (it == map.end()) {
      throw Error(ErrorCode::MissingAssignment, "no image assigned to " + points[i].to_string());
    }
    check_image(points[i], it->second, ring);
    image[i] = &it->second;
  }
  std::vector<Violation> out;
  for (auto [a, b, c] : collinear_triples(points, p)) {
    if (!images_collinear(*image[a], *image[b], *image[c])) {
      out.push_back(Violation{{points[a], points[b], points[c]}});
    }
  }
  return out;
}

// --- exhaustive search ------------------------------------------------------

namespace {

class Search {
 public:
  Search(geom::Prime p, const LocalRing& ring, const SearchOptions& options)
      : options_(options), points_(geom::enumerate_points(2, p)) {
    const auto src = Frame::sources(p);
    candidates_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto fixed = std::find(src.begin(), src.end(), points_[i]);
      if (options.frame && fixed != src.end()) {
        const auto& img = options.frame->images[fixed - src.begin()];
        check_image(points_[i], img, ring);
        if (img.reduce() != points_[i]) {
          throw Error(ErrorCode::InvalidParameter, "frame image " + img.to_string() +
                                                       " does not reduce to " +
                                                       points_[i].to_string());
        }
        candidates_[i] = {img};
      } else {
        candidates_[i] = ring::enumerate_lifts(points_[i], ring);
      }
    }
    closing_.resize(points_.size());
    for (auto [a, b, c] : collinear_triples(points_, p)) closing_[c].push_back({a, b});
  }

  SearchResult run() {
    std::vector<const ProjPointA*> assignment(points_.size(), nullptr);
    // Forced prefix: every point before the first real choice has one candidate.
    std::size_t depth = 0;
    while (depth < points_.size() && candidates_[depth].size() == 1) {
      if (!try_assign(assignment, depth, candidates_[depth][0])) return finish({});
      ++depth;
    }
    if (depth == points_.size()) {
      std::vector<LiftMap> maps{to_map(assignment)};
      return finish(std::move(maps));
    }

    // One task per candidate at the branching depth; results merge in candidate order.
    const auto& branch = candidates_[depth];
    std::vector<std::vector<LiftMap>> per_task(branch.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        auto local = assignment;
        for (std::size_t t; (t = next++) < branch.size() && !stop_;) {
          if (try_assign(local, depth, branch[t])) explore(local, depth + 1, per_task[t]);
        }
      } catch (...) {
        stop_ = true;
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options_.jobs, branch.size()));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<LiftMap> maps;
    for (auto& task : per_task) {
      std::move(task.begin(), task.end(), std::back_inserter(maps));
    }
    return finish(std::move(maps));
  }

 private:
  bool try_assign(std::vector<const ProjPointA*>& assignment, std::size_t i,
                  const ProjPointA& candidate) {
    const auto seen = ++nodes_;
    if (seen > options_.budget) {
      stop_ = true;
      throw Error(ErrorCode::BudgetExceeded, "search budget of " + std::to_string(options_.budget) +
                                                 " nodes exceeded after exploring " +
                                                 std::to_string(seen) + " nodes");
    }
    for (auto [a, b] : closing_[i]) {
      if (!images_collinear(*assignment[a], *assignment[b], candidate)) return false;
    }
    assignment[i] = &candidate;
    return true;
  }

  void explore(std::vector<const ProjPointA*>& assignment, std::size_t i,
               std::vector<LiftMap>& out) {
    if (stop_) return;
    if (i == points_.size()) {
      out.push_back(to_map(assignment));
      return;
    }
    for (auto& candidate : candidates_[i]) {
      if (try_assign(assignment, i, candidate)) explore(assignment, i + 1, out);
    }
    assignment[i] = nullptr;
  }

  LiftMap to_map(const std::vector<const ProjPointA*>& assignment) const {
    LiftMap m;
    for (std::size_t i = 0; i < points_.size(); ++i) m.emplace(points_[i], *assignment[i]);
    return m;
  }

  SearchResult finish(std::vector<LiftMap> maps) { return {std::move(maps), nodes_.load()}; }

  SearchOptions options_;
  std::vector<ProjPointFp> points_;
  std::vector<std::vector<ProjPointA>> candidates_;
  // closing_[c] lists the pairs (a, b), a < b < c, collinear with point c.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> closing_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
};

}  // namespace

SearchResult brute_force_lift_search(geom::Prime p, const LocalRing& ring,
                                     const SearchOptions& options) {
  if (ring.p() != p) throw Error(ErrorCode::InvalidParameter, "residue characteristic mismatch");
  if (options.budget == 0) throw Error(ErrorCode::InvalidParameter, "search budget must be positive");
  return Search(p, ring, options).run();
}

// --- configuration used by the trace ----------------------------------------

geom::IncidenceConfig extract_used_configuration(const PropagationTrace& trace) {
  if (trace.status != TraceStatus::Complete ||
      trace.steps.size() != static_cast<std::size_t>(2 * trace.p + 1)) {
    throw Error(ErrorCode::IncompleteTrace, "trace has not reached P_p");
  }
  const geom::Prime p(trace.p);
  geom::IncidenceConfig config;
  config.dim = 2;
  config.p = p;
  const auto src = Frame::sources(p);
  config.points.assign(src.begin(), src.end());
  std::vector<geom::LineFp> lines;
  for (auto& step : trace.steps) {
    config.points.push_back(step.target);
    for (auto* l : {&step.line1, &step.line2}) {
      lines.push_back(geom::line_through(l->through[0], l->through[1]));
    }
  }
  std::sort(config.points.begin(), config.points.end());
  config.points.erase(std::unique(config.points.begin(), config.points.end()), config.points.end());
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (auto& line : lines) {
    std::vector<std::size_t> members;
    for (auto& x : line.points()) {
      if (auto i = geom::index_of(config.points, x); i != geom::npos) members.push_back(i);
    }
    config.lines.push_back(std::move(members));
  }
  geom::close_inclusions(config);
  return config;
}

// --- rendering ----------------------------------------------------------------

namespace {

std::string describe(const DerivationLine& l) {
  return "l(" + l.through[0].to_string() + "," + l.through[1].to_string() + ") [dual " +
         l.line.dual.to_string() + "]";
}

}  // namespace

std::string render_text(const Certificate& cert) {
  const auto& t = cert.trace;
  const auto& ob = cert.obstruction;
  std::ostringstream os;
  os << "forced lift of P^2(F_" << t.p << ") into P^2(" << t.ring.name() << "), standard frame\n";
  const auto src = Frame::sources(geom::Prime(t.p));
  const auto frame = Frame::standard(t.ring);
  for (int i = 0; i < 4; ++i) {
    os << "  frame " << src[i].to_string() << " -> " << frame.images[i].to_string() << "\n";
  }
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    os << "  step " << i + 1 << ": " << s.label << " " << s.target.to_string() << " = "
       << describe(s.line1) << " meet " << describe(s.line2) << " -> " << s.derived.to_string()
       << "\n";
  }
  os << "P_" << t.p << " forced to " << ob.derived.to_string() << ", pinned at "
     << ob.required.to_string() << "\n";
  if (ob.verdict == Verdict::NonLiftable) {
    os << "obstruction p·1 = " << ob.element.to_string() << " ≠ 0 in " << t.ring.name()
       << ": no collinearity-preserving lift exists with this frame\n";
  } else {
    os << "obstruction p·1 = 0 in " << t.ring.name() << ": no obstruction\n";
  }
  return os.str();
}

namespace {

nlohmann::json line_json(const DerivationLine& l) {
  return {{"through", {l.through[0].coords(), l.through[1].coords()}},
          {"dual", ring::coords_json(l.line.dual)}};
}

ProjPointFp fp_point(const nlohmann::json& doc, geom::Prime p) {
  auto c = doc.get<std::vector<long long>>();
  return ProjPointFp::from_coords(c, p);
}

DerivationLine parse_line(const nlohmann::json& doc, geom::Prime p, const LocalRing& ring) {
  return DerivationLine{{fp_point(doc.at("through").at(0), p), fp_point(doc.at("through").at(1), p)},
                        ring::LineA{ring::point_from_coords_json(doc.at("dual"), ring)}};
}

}  // namespace

nlohmann::json render_json(const Certificate& cert) {
  const auto& t = cert.trace;
  const auto& ob = cert.obstruction;
  nlohmann::json doc;
  doc["p"] = t.p;
  doc["ring"] = ring::to_json(t.ring);
  doc["frame"] = "standard";
  doc["status"] = t.status == TraceStatus::Complete ? "complete" : "incomplete";
  doc["steps"] = nlohmann::json::array();
  for (auto& s : t.steps) {
    doc["steps"].push_back({{"label", s.label},
                            {"target", s.target.coords()},
                            {"line1", line_json(s.line1)},
                            {"line2", line_json(s.line2)},
                            {"derived", ring::coords_json(s.derived)}});
  }
  doc["obstruction"] = {{"element", ring::to_json(ob.element)},
                        {"isZero", ob.element.is_zero()},
                        {"derived", ring::coords_json(ob.derived)},
                        {"required", ring::coords_json(ob.required)}};
  doc["verdict"] = to_string(ob.verdict);
  return doc;
}

Certificate parse_certificate(const nlohmann::json& doc) {
  try {
    const geom::Prime p(doc.at("p").get<int>());
    const auto ring = ring::ring_from_json(doc.at("ring"));
    if (doc.at("frame").get<std::string>() != "standard") {
      throw Error(ErrorCode::Parse, "only the standard frame is supported");
    }
    PropagationTrace trace{p, ring, {},
                           doc.at("status").get<std::string>() == "complete"
                               ? TraceStatus::Complete
                               : TraceStatus::Incomplete};
    for (auto& s : doc.at("steps")) {
      trace.steps.push_back(DerivationStep{s.at("label").get<std::string>(),
                                           fp_point(s.at("target"), p),
                                           parse_line(s.at("line1"), p, ring),
                                           parse_line(s.at("line2"), p, ring),
                                           ring::point_from_coords_json(s.at("derived"), ring)});
    }
    const auto& o = doc.at("obstruction");
    const auto verdict = doc.at("verdict").get<std::string>();
    if (verdict != "non-liftable" && verdict != "liftable-not-excluded") {
      throw Error(ErrorCode::Parse, "unknown verdict " + verdict);
    }
    Obstruction ob{ring::point_from_coords_json(o.at("derived"), ring),
                   ring::point_from_coords_json(o.at("required"), ring),
                   ring::elem_from_json(o.at("element"), ring),
                   verdict == "non-liftable" ? Verdict::NonLiftable : Verdict::LiftableNotExcluded};
    return Certificate{std::move(trace), std::move(ob)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace nonlift::lift
