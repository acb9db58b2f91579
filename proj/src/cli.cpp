#include "nonlift/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nonlift/error.hpp"
#include "nonlift/finite_geometry.hpp"
#include "nonlift/lift_checker.hpp"
#include "nonlift/local_ring.hpp"
#include "nonlift/motive.hpp"

namespace nonlift::cli {

namespace {

using nlohmann::json;

struct Config {
  int p = 2;
  std::string ring = "zpk:2";
  int dim = 3;
  int r = 2;
  int m = 4;
  std::string space = "flag:3";
  std::string format = "text";
  std::string frame = "standard";
  std::string map_path;
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  std::string out_path;
};

struct Output {
  std::string document;
  int status = Success;
};

Output emit(const Config& cfg, const json& doc, const std::string& text, int status = Success) {
  return {cfg.format == "json" ? doc.dump(2) + "\n" : text, status};
}

ring::LocalRing parse_ring(const std::string& arg, int p) {
  const auto colon = arg.find(':');
  const auto kind = arg.substr(0, colon);
  if (colon == std::string::npos || (kind != "zpk" && kind != "fpt")) {
    throw Error(ErrorCode::InvalidParameter, "ring must be zpk:<k> or fpt:<k>, got '" + arg + "'");
  }
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(arg.substr(colon + 1), &used);
    if (used != arg.size() - colon - 1) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidParameter, "ring length in '" + arg + "' is not an integer");
  }
  return ring::LocalRing::make(kind == "zpk" ? ring::RingKind::IntegersModPk
                                             : ring::RingKind::TruncatedPoly,
                               p, k);
}

std::vector<int> split_ints(const std::string& s, const std::string& whole) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParameter, "bad space '" + whole + "'");
    }
  }
  return out;
}

// ps:n, quadric:d, grass:r,m, flag:m, c1:<space>, c2:p
motive::VarietyClass parse_space(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidParameter, "bad space '" + arg + "'");
  const auto head = arg.substr(0, colon);
  const auto rest = arg.substr(colon + 1);
  if (head == "c1") return motive::construction_one_class(parse_space(rest));
  auto args = split_ints(rest, arg);
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw Error(ErrorCode::InvalidParameter, "bad space '" + arg + "'");
  };
  if (head == "ps") return want(1), motive::projective_space_class(args[0]);
  if (head == "quadric") return want(1), motive::quadric_class(args[0]);
  if (head == "grass") return want(2), motive::grassmannian_class(args[0], args[1]);
  if (head == "flag") return want(1), motive::flag_class_typeA(args[0]);
  if (head == "c2") return want(1), motive::construction_two_class(args[0]);
  throw Error(ErrorCode::InvalidParameter, "unknown space '" + head + "'");
}

std::string join(const std::vector<motive::Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s;
}

Output class_report(const Config& cfg, const motive::VarietyClass& v) {
  const auto t = motive::invariants_table(v);
  std::vector<motive::Integer> diagonal;
  for (std::size_t i = 0; i < t.hodge.size(); ++i) diagonal.push_back(t.hodge[i][i]);
  std::vector<motive::Integer> coeffs;
  for (int i = 0; i <= v.dim; ++i) coeffs.push_back(v.cls.coeff(i));
  std::ostringstream os;
  os << v.name << "\n"
     << "dimension: " << v.dim << "\n"
     << "class: " << v.cls.to_string() << "\n"
     << "coefficients: " << join(coeffs) << "\n"
     << "Betti numbers: " << join(t.betti) << "\n"
     << "Hodge numbers h^{i,i}: " << join(diagonal) << " (off-diagonal 0)\n"
     << "Picard number: " << t.picard << "\n"
     << "Euler characteristic: " << t.euler << "\n"
     << "palindromic: " << (t.palindromic ? "yes" : "no") << "\n"
     << "non-negative: " << (t.nonnegative ? "yes" : "no") << "\n"
     << "Hodge-de Rham sums equal: " << (t.hdr_sums_equal ? "yes" : "no") << "\n";
  return emit(cfg, json{{"class", to_json(v)}, {"invariants", to_json(t)}}, os.str());
}

std::string config_text(const geom::IncidenceConfig& c, const std::string& title) {
  std::ostringstream os;
  os << title << ": " << c.points.size() << " points, " << c.lines.size() << " lines";
  if (c.dim == 3) os << ", " << c.planes.size() << " planes";
  os << ", " << c.point_line_incidences() << " point-line incidences\n";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    os << "  point " << i << ": " << c.points[i].to_string() << "\n";
  }
  for (std::size_t l = 0; l < c.lines.size(); ++l) {
    os << "  line " << l << ":";
    for (auto x : c.lines[l]) os << " " << c.points[x].to_string();
    os << "\n";
  }
  return os.str();
}

json map_json(const lift::LiftMap& m) {
  auto arr = json::array();
  for (auto& [src, img] : m) arr.push_back({{"source", src.coords()}, {"image", ring::coords_json(img)}});
  return arr;
}

lift::LiftMap read_map(const std::string& path, geom::Prime p, const ring::LocalRing& A) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open map file " + path);
  try {
    const json doc = json::parse(in);
    const auto& assignments = doc.is_array() ? doc : doc.at("assignments");
    lift::LiftMap m;
    for (auto& a : assignments) {
      auto src = a.at("source").get<std::vector<long long>>();
      m.insert_or_assign(geom::ProjPointFp::from_coords(src, p),
                         ring::point_from_coords_json(a.at("image"), A));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed map file: ") + e.what());
  }
}

// --- handlers -----------------------------------------------------------------

Output geom_count(const Config& cfg) {
  const geom::Prime p(cfg.p);
  const auto points = geom::enumerate_points(cfg.dim, p).size();
  json doc{{"dim", cfg.dim}, {"p", cfg.p}, {"points", points}};
  std::string text = "points: " + std::to_string(points);
  if (cfg.dim >= 2) {
    const auto lines = geom::enumerate_lines(cfg.dim, p).size();
    doc["lines"] = lines;
    text += ", lines: " + std::to_string(lines);
  }
  if (cfg.dim == 3) {
    const auto planes = geom::enumerate_planes(p).size();
    doc["planes"] = planes;
    text += ", planes: " + std::to_string(planes);
  }
  return emit(cfg, doc, text + "\n");
}

Output geom_config(const Config& cfg) {
  const auto c = geom::incidence_config(cfg.dim, geom::Prime(cfg.p));
  return emit(cfg, to_json(c),
              config_text(c, "P^" + std::to_string(cfg.dim) + "(F_" + std::to_string(cfg.p) + ")"));
}

Output geom_mp(const Config& cfg) {
  const auto c = geom::mp_configuration(geom::Prime(cfg.p));
  return emit(cfg, to_json(c), config_text(c, "M_" + std::to_string(cfg.p)));
}

Output lift_propagate(const Config& cfg) {
  const geom::Prime p(cfg.p);
  const auto cert = lift::propagate_forced_lift(p, parse_ring(cfg.ring, p));
  const int status = cert.obstruction.verdict == lift::Verdict::NonLiftable ? NonLiftable : Success;
  return emit(cfg, lift::render_json(cert), lift::render_text(cert), status);
}

Output lift_brute(const Config& cfg) {
  const geom::Prime p(cfg.p);
  const auto A = parse_ring(cfg.ring, p);
  lift::SearchOptions opts;
  if (cfg.frame == "standard") opts.frame = lift::Frame::standard(A);
  opts.budget = cfg.budget;
  opts.jobs = cfg.jobs;
  const auto result = lift::brute_force_lift_search(p, A, opts);
  json doc{{"p", cfg.p},          {"ring", to_json(A)},  {"frame", cfg.frame},
           {"nodes", result.nodes}, {"count", result.maps.size()}, {"maps", json::array()}};
  std::ostringstream os;
  os << (cfg.frame == "standard" ? "frame-fixed" : "frame-free") << " search P^2(F_" << cfg.p
     << ") -> P^2(" << A.name() << "): " << result.maps.size()
     << " collinearity-preserving maps, " << result.nodes << " nodes\n";
  for (std::size_t i = 0; i < result.maps.size(); ++i) {
    doc["maps"].push_back(map_json(result.maps[i]));
    os << "  map " << i << ":";
    for (auto& [src, img] : result.maps[i]) os << " " << src.to_string() << "->" << img.to_string();
    os << "\n";
  }
  return emit(cfg, doc, os.str());
}

Output lift_check(const Config& cfg) {
  const geom::Prime p(cfg.p);
  const auto A = parse_ring(cfg.ring, p);
  lift::LiftMap m;
  if (cfg.map_path.empty()) {
    for (auto& x : geom::enumerate_points(2, p)) m.emplace(x, ring::ProjPointA::trivial_lift(x, A));
  } else {
    m = read_map(cfg.map_path, p, A);
  }
  const auto violations = lift::check_collinearity_preserving(m, p, A);
  json doc{{"p", cfg.p}, {"ring", to_json(A)}, {"map", cfg.map_path.empty() ? "trivial" : cfg.map_path},
           {"violations", json::array()}};
  std::ostringstream os;
  os << "map P^2(F_" << cfg.p << ") -> P^2(" << A.name() << "): " << violations.size()
     << " violated collinear triples\n";
  for (auto& v : violations) {
    doc["violations"].push_back({v.triple[0].coords(), v.triple[1].coords(), v.triple[2].coords()});
    os << "  " << v.triple[0].to_string() << " " << v.triple[1].to_string() << " "
       << v.triple[2].to_string() << "\n";
  }
  return emit(cfg, doc, os.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Finite configurations and Grothendieck-ring classes of non-liftable varieties",
               "nonlift"};
  app.require_subcommand(1);

  std::function<Output()> handler;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", cfg.out_path, "Also write the output to this file");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  Output (*fn)(const Config&)) {
    auto* cmd = parent->add_subcommand(name, help);
    common(cmd);
    cmd->callback([&handler, &cfg, fn] { handler = [&cfg, fn] { return fn(cfg); }; });
    return cmd;
  };
  auto with_p = [&](CLI::App* cmd) { cmd->add_option("--p", cfg.p, "Prime")->required(); };
  auto with_ring = [&](CLI::App* cmd) {
    cmd->add_option("--ring", cfg.ring, "Coefficient ring zpk:<k> or fpt:<k>")->required();
  };

  auto* geom_cmd = app.add_subcommand("geom", "Finite projective geometry");
  geom_cmd->require_subcommand(1);
  for (auto* cmd : {leaf(geom_cmd, "count", "Count points, lines and planes", geom_count),
                    leaf(geom_cmd, "config", "Full incidence configuration", geom_config)}) {
    with_p(cmd);
    cmd->add_option("--dim", cfg.dim, "Ambient dimension")->required();
  }
  with_p(leaf(geom_cmd, "mp", "The 2p+3 point configuration M_p", geom_mp));

  auto* lift_cmd = app.add_subcommand("lift", "Lifting P^2(F_p) to a local ring");
  lift_cmd->require_subcommand(1);
  auto* propagate = leaf(lift_cmd, "propagate", "Forced derivation and obstruction", lift_propagate);
  auto* brute = leaf(lift_cmd, "brute", "Exhaustive search for collinearity-preserving maps", lift_brute);
  auto* check = leaf(lift_cmd, "check", "Check a map for collinearity preservation", lift_check);
  for (auto* cmd : {propagate, brute, check}) {
    with_p(cmd);
    with_ring(cmd);
  }
  brute->add_option("--budget", cfg.budget, "Node budget")->check(CLI::PositiveNumber);
  brute->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  brute->add_option("--frame", cfg.frame, "Frame handling")
      ->check(CLI::IsMember({"standard", "free"}));
  check->add_option("--map", cfg.map_path, "JSON map file (default: trivial coordinate lift)");

  auto* motive_cmd = app.add_subcommand("motive", "Grothendieck-ring classes");
  motive_cmd->require_subcommand(1);
  leaf(motive_cmd, "ps", "Projective space", [](const Config& c) {
    return class_report(c, motive::projective_space_class(c.dim));
  })->add_option("--dim", cfg.dim)->required();
  leaf(motive_cmd, "quadric", "Smooth quadric", [](const Config& c) {
    return class_report(c, motive::quadric_class(c.dim));
  })->add_option("--dim", cfg.dim)->required();
  auto* grass = leaf(motive_cmd, "grass", "Grassmannian Gr(r,m)", [](const Config& c) {
    return class_report(c, motive::grassmannian_class(c.r, c.m));
  });
  grass->add_option("--r", cfg.r)->required();
  grass->add_option("--m", cfg.m)->required();
  leaf(motive_cmd, "flag", "Full flag variety SL_m/B", [](const Config& c) {
    return class_report(c, motive::flag_class_typeA(c.m));
  })->add_option("--m", cfg.m)->required();
  leaf(motive_cmd, "construction-one", "Blow-up of Y x Y along the Frobenius graph",
       [](const Config& c) {
         return class_report(c, motive::construction_one_class(parse_space(c.space)));
       })
      ->add_option("--space", cfg.space, "ps:n | quadric:d | grass:r,m | flag:m")
      ->required();
  with_p(leaf(motive_cmd, "construction-two", "P^3 blown up along F_p-points and lines",
              [](const Config& c) { return class_report(c, motive::construction_two_class(c.p)); }));
  leaf(motive_cmd, "invariants", "Invariants of any built-in class",
       [](const Config& c) { return class_report(c, parse_space(c.space)); })
      ->add_option("--space", cfg.space, "ps:n | quadric:d | grass:r,m | flag:m | c1:<space> | c2:p")
      ->required();

  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Success : Failure;
  }

  try {
    const Output result = handler();
    out << result.document;
    if (!cfg.out_path.empty()) {
      std::ofstream file(cfg.out_path, std::ios::binary);
      file << result.document;
      if (!file) {
        err << "error: cannot write " << cfg.out_path << "\n";
        return Failure;
      }
    }
    return result.status;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return Failure;
  }
}

}  // namespace nonlift::cli
