#include "sphfermat/cli.hpp"
#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"
#include "sphfermat/oracle.hpp"
#include "sphfermat/plasticity.hpp"
#include "sphfermat/solve.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#ifndef SPHFERMAT_VERSION
#define SPHFERMAT_VERSION "0.0.0"
#endif

namespace sphfermat::cli {

using nlohmann::json;

namespace {

// ---- formatting -----------------------------------------------------------

std::string format_double(double v) {
  if (!std::isfinite(v))
    return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann's own dump prints the shortest round-trip form; the report
// contract is 17 significant digits for every float.
void write_json(const json &j, std::string &out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
  case json::value_t::object: {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first)
        out += ",\n";
      first = false;
      out += pad + json(it.key()).dump() + ": ";
      write_json(it.value(), out, indent, depth + 1);
    }
    out += "\n" + close_pad + "}";
    return;
  }
  case json::value_t::array: {
    if (j.empty()) {
      out += "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    bool flat = true;
    for (const auto &e : j)
      flat = flat && !e.is_structured();
    out += "[";
    bool first = true;
    for (const auto &e : j) {
      if (!first)
        out += flat ? ", " : ",";
      first = false;
      if (!flat)
        out += "\n" + pad;
      write_json(e, out, indent, depth + 1);
    }
    if (!flat)
      out += "\n" + close_pad;
    out += "]";
    return;
  }
  case json::value_t::number_float:
    out += format_double(j.get<double>());
    return;
  default:
    out += j.dump();
    return;
  }
}

std::string dump(const json &j) {
  std::string out;
  write_json(j, out, 2, 0);
  out += "\n";
  return out;
}

// ---- parsing helpers --------------------------------------------------------

template <std::size_t N>
std::array<double, N> parse_list(const std::string &text, const char *flag) {
  std::array<double, N> out{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t end = text.find(',', pos);
    const bool last = i + 1 == N;
    if ((end == std::string::npos) != last)
      throw ValidationError(std::string(flag) + " expects " +
                            std::to_string(N) + " comma-separated numbers");
    const std::string item =
        text.substr(pos, last ? std::string::npos : end - pos);
    const char *b = item.data();
    const char *e = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(b, e, out[i]);
    if (ec != std::errc() || ptr != e || !std::isfinite(out[i]))
      throw ValidationError(std::string(flag) + ": cannot parse '" + item +
                            "' as a finite number");
    pos = end + 1;
  }
  return out;
}

const char *command_name(Command c) {
  switch (c) {
  case Command::Solve:
    return "solve";
  case Command::Classify:
    return "classify";
  case Command::Minimize:
    return "minimize";
  case Command::PlasticityGenerate:
    return "plasticity-generate";
  case Command::PlasticityInvert:
    return "plasticity-invert";
  case Command::Grid:
    return "grid";
  }
  return "";
}

const char *solver_name(InverseSolver s) {
  switch (s) {
  case InverseSolver::Newton:
    return "newton";
  case InverseSolver::Weierstrass:
    return "weierstrass";
  case InverseSolver::Both:
    return "both";
  }
  return "";
}

// ---- report building --------------------------------------------------------

struct Units {
  AngleUnit unit;

  double out(double rad) const {
    return unit == AngleUnit::Deg ? rad * 180.0 / std::numbers::pi : rad;
  }
  double in(double v) const {
    return unit == AngleUnit::Deg ? v * std::numbers::pi / 180.0 : v;
  }
  json triple(double a, double b, double c) const {
    return json::array({out(a), out(b), out(c)});
  }
};

json point_json(const UnitPoint &p) {
  return json::array({p.x(), p.y(), p.z()});
}

json triangle_json(const GeodesicTriangle &tri) {
  json j = json::array();
  for (const auto &v : tri.vertices())
    j.push_back(point_json(v));
  return j;
}

json fermat_json(const FermatResult &r, const Units &u) {
  json j;
  j["case"] = r.case_label.name();
  j["vertex"] = r.case_label.is_interior() ? json(nullptr)
                                           : json(r.case_label.vertex);
  j["point"] = point_json(r.point);
  j["omega"] = u.out(r.coords.omega);
  j["phi"] = u.out(r.coords.phi);
  j["objective"] = r.objective;
  j["distances"] = u.triple(r.distances[0], r.distances[1], r.distances[2]);
  j["stationarity_residual"] = r.stationarity_residual;
  return j;
}

json sides_json(const TriangleSides &s, const Units &u) {
  return u.triple(s.s12, s.s23, s.s13);
}

json residuals_json(const std::array<double, 3> &r) {
  return json::array({r[0], r[1], r[2]});
}

GeodesicTriangle make_triangle(const RunConfig &c) {
  if (!c.triangle)
    return GeodesicTriangle::octant();
  const auto &t = *c.triangle;
  try {
    return {UnitPoint(t[0], t[1], t[2]), UnitPoint(t[3], t[4], t[5]),
            UnitPoint(t[6], t[7], t[8])};
  } catch (const Error &e) {
    throw ValidationError(std::string("--triangle: ") + e.what());
  }
}

Weights make_weights(const RunConfig &c) {
  try {
    return {c.weights[0], c.weights[1], c.weights[2]};
  } catch (const Error &) {
    throw ValidationError("--weights: weights must be finite and strictly positive");
  }
}

json input_json(const RunConfig &c, const GeodesicTriangle &tri) {
  json j;
  j["command"] = command_name(c.command);
  j["weights"] = json::array({c.weights[0], c.weights[1], c.weights[2]});
  j["triangle"] = triangle_json(tri);
  j["angle_unit"] = c.angle_unit == AngleUnit::Deg ? "deg" : "rad";
  if (c.offsets)
    j["offsets"] = *c.offsets;
  if (c.targets)
    j["targets"] = *c.targets;
  if (c.command == Command::Grid)
    j["resolution"] = c.resolution;
  if (c.command == Command::PlasticityInvert)
    j["solver"] = solver_name(c.solver);
  return j;
}

json margins_json(const CaseDecision &d) {
  return json::array({d.margins[0], d.margins[1], d.margins[2]});
}

// Published (omega, phi) formulas next to the shipped closed form.
json published_formula_json(const Weights &w, const FermatResult &r,
                            const Units &u) {
  json j;
  try {
    const SphericalCoords c = solve_octant_paper(w);
    j["omega"] = u.out(c.omega);
    j["phi"] = u.out(c.phi);
    j["omega_discrepancy"] = u.out(c.omega - r.coords.omega);
    j["phi_discrepancy"] = u.out(c.phi - r.coords.phi);
  } catch (const Error &e) {
    j["error"] = e.what();
  }
  return j;
}

struct Report {
  json result = json::object();
  json diagnostics = json::object();
  bool solver_failed = false;
  std::string error;
};

Report run_solve(const GeodesicTriangle &tri, const Weights &w, const Units &u) {
  Report rep;
  const CaseDecision d = classify(tri, w);
  const FermatResult r = solve(tri, w);
  rep.result = fermat_json(r, u);
  rep.result["method"] =
      !d.floating() ? "classifier" : (is_octant(tri) ? "closed_form" : "oracle");
  rep.diagnostics["margins"] = margins_json(d);
  if (is_octant(tri) && octant_floating(w)) {
    rep.diagnostics["published_formula"] = published_formula_json(w, r, u);
    rep.diagnostics["phi_residual"] = theorem2_phi_residual(w);
  }
  return rep;
}

Report run_classify(const GeodesicTriangle &tri, const Weights &w,
                    const Units &u) {
  Report rep;
  const CaseDecision d = classify(tri, w);
  rep.result = fermat_json(solve(tri, w), u);
  rep.result["label"] = d.floating() ? "floating" : "absorbed";
  rep.result["margins"] = margins_json(d);
  if (!d.floating())
    rep.result["margin"] = d.margins[d.label.vertex - 1];
  return rep;
}

Report run_minimize(const GeodesicTriangle &tri, const Weights &w,
                    const Units &u) {
  Report rep;
  const OracleOptions opts;
  rep.result = fermat_json(minimize(tri, w, opts), u);
  rep.diagnostics["scan_points"] = opts.scan_points;
  rep.diagnostics["max_iters"] = opts.max_iters;
  rep.diagnostics["tol_grad"] = opts.tol_grad;
  rep.diagnostics["vertex_snap"] = u.out(opts.vertex_snap);
  return rep;
}

Report run_generate(const RunConfig &c, const GeodesicTriangle &tri,
                    const Weights &w, const Units &u) {
  if (!c.offsets)
    throw ValidationError("plasticity-generate requires --offsets");
  const ShrinkOffsets off{u.in((*c.offsets)[0]), u.in((*c.offsets)[1]),
                          u.in((*c.offsets)[2])};
  if (!classify(tri, w).floating())
    throw ValidationError("plasticity-generate: weights are absorbed for this triangle");
  const FermatResult base = solve(tri, w);
  try {
    check_offsets(base.distances, off);
  } catch (const Error &e) {
    throw ValidationError(std::string("--offsets: ") + e.what());
  }
  const GeodesicTriangle shrunk = shrink_triangle(tri, w, off, base.point);
  const TriangleSides measured{shrunk.s12(), shrunk.s23(), shrunk.s13()};

  Report rep;
  rep.result = fermat_json(base, u);
  rep.result["offsets"] = u.triple(off.a, off.b, off.c);
  rep.result["shrunk_triangle"] = triangle_json(shrunk);
  rep.result["measured_sides"] = sides_json(measured, u);
  try {
    rep.result["predicted_sides"] =
        sides_json(predicted_sides(base.distances, off, w), u);
  } catch (const DomainError &e) {
    rep.result["predicted_sides"] = nullptr;
    rep.diagnostics["predicted_sides_error"] = e.what();
  }
  rep.result["residuals"] =
      residuals_json(side_residuals(base.distances, off, w, measured));

  const FermatResult moved = minimize(shrunk, w);
  rep.diagnostics["shrunk_oracle_point"] = point_json(moved.point);
  rep.diagnostics["shrunk_oracle_case"] = moved.case_label.name();
  rep.diagnostics["fermat_point_shift"] =
      u.out(geodesic_distance(moved.point, base.point));
  return rep;
}

Report run_invert(const RunConfig &c, const GeodesicTriangle &tri,
                  const Weights &w, const Units &u) {
  if (!c.targets)
    throw ValidationError("plasticity-invert requires --targets");
  const TriangleSides target{u.in((*c.targets)[0]), u.in((*c.targets)[1]),
                             u.in((*c.targets)[2])};
  for (double s : {target.s12, target.s23, target.s13}) {
    if (!(s > 0.0 && s <= std::numbers::pi / 2 + 1e-12))
      throw ValidationError("--targets: sides must lie in (0, pi/2]");
  }
  if (!classify(tri, w).floating())
    throw ValidationError("plasticity-invert: weights are absorbed for this triangle");
  const FermatResult base = solve(tri, w);

  Report rep;
  rep.result = fermat_json(base, u);
  rep.result["targets"] = sides_json(target, u);

  auto offsets_report = [&](const ShrinkOffsets &off) {
    json j;
    j["offsets"] = u.triple(off.a, off.b, off.c);
    j["residuals"] =
        residuals_json(side_residuals(base.distances, off, w, target));
    return j;
  };

  if (c.solver != InverseSolver::Weierstrass) {
    try {
      rep.result["newton"] =
          offsets_report(invert_sides_newton(target, w, base.distances));
    } catch (const NoConvergence &e) {
      rep.result["newton"] = nullptr;
      rep.diagnostics["newton_error"] = e.what();
      rep.diagnostics["newton_best_iterate"] =
          u.triple(e.best()[0], e.best()[1], e.best()[2]);
      rep.diagnostics["newton_best_residual"] = e.residual();
      rep.solver_failed = true;
      rep.error = e.what();
    } catch (const InfeasibleTarget &e) {
      rep.result["newton"] = nullptr;
      rep.diagnostics["newton_error"] = e.what();
      rep.solver_failed = true;
      rep.error = e.what();
    }
  }
  if (c.solver != InverseSolver::Newton) {
    try {
      json list = json::array();
      for (const auto &s :
           invert_sides_weierstrass(target, w, base.distances)) {
        json j = offsets_report(s.offsets);
        j["half_angles"] = json::array(
            {s.half_angles.t_a, s.half_angles.t_b, s.half_angles.t_c});
        j["branch"] = json::array({s.branch_a, s.branch_c});
        list.push_back(std::move(j));
      }
      rep.result["weierstrass"] = std::move(list);
    } catch (const NoRealSolution &e) {
      rep.result["weierstrass"] = json::array();
      rep.diagnostics["weierstrass_error"] = e.what();
      rep.diagnostics["weierstrass_scan"] = e.diagnostics();
      rep.solver_failed = true;
      rep.error = e.what();
    }
  }
  return rep;
}

std::string grid_csv(const std::vector<GridRow> &rows, const Units &u) {
  std::string out = "omega,phi,objective\n";
  out.reserve(rows.size() * 64);
  for (const auto &r : rows) {
    out += format_double(u.out(r.omega));
    out += ',';
    out += format_double(u.out(r.phi));
    out += ',';
    out += format_double(r.objective);
    out += '\n';
  }
  return out;
}

RunOutcome dispatch(const RunConfig &c) {
  const Units u{c.angle_unit};
  const GeodesicTriangle tri = make_triangle(c);
  const Weights w = make_weights(c);

  if (c.format == OutputFormat::Csv && c.command != Command::Grid)
    throw ValidationError("--format csv is only available for grid");

  if (c.command == Command::Grid) {
    if (c.resolution < 2)
      throw ValidationError("--resolution must be >= 2");
    const auto rows = grid_scan(tri, w, c.resolution);
    if (c.format == OutputFormat::Csv)
      return {kExitOk, grid_csv(rows, u), {}};
    Report rep = run_solve(tri, w, u);
    json jr = json::array();
    for (const auto &r : rows)
      jr.push_back(json::array({u.out(r.omega), u.out(r.phi), r.objective}));
    rep.result["columns"] = json::array({"omega", "phi", "objective"});
    rep.result["rows"] = std::move(jr);
    json doc;
    doc["version"] = version();
    doc["input"] = input_json(c, tri);
    doc["result"] = std::move(rep.result);
    doc["diagnostics"] = std::move(rep.diagnostics);
    return {kExitOk, dump(doc), {}};
  }

  Report rep;
  switch (c.command) {
  case Command::Solve:
    rep = run_solve(tri, w, u);
    break;
  case Command::Classify:
    rep = run_classify(tri, w, u);
    break;
  case Command::Minimize:
    rep = run_minimize(tri, w, u);
    break;
  case Command::PlasticityGenerate:
    rep = run_generate(c, tri, w, u);
    break;
  case Command::PlasticityInvert:
    rep = run_invert(c, tri, w, u);
    break;
  case Command::Grid:
    break;
  }
  json doc;
  doc["version"] = version();
  doc["input"] = input_json(c, tri);
  doc["result"] = std::move(rep.result);
  doc["diagnostics"] = std::move(rep.diagnostics);
  if (rep.solver_failed)
    return {kExitSolver, dump(doc), "error: solver: " + rep.error};
  return {kExitOk, dump(doc), {}};
}

} // namespace

std::string version() { return SPHFERMAT_VERSION; }

std::optional<RunConfig> parse_args(const std::vector<std::string> &argv,
                                    std::string *help_out) {
  CLI::App app{"Weighted Fermat-Torricelli points of geodesic triangles on "
               "the unit sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  std::string weights, triangle, offsets, targets, format = "json",
                                                   unit = "rad",
                                                   solver = "both", out;
  int resolution = 100;

  struct Sub {
    Command command;
    const char *name;
    const char *help;
  };
  const Sub subs[] = {
      {Command::Solve, "solve", "Closed form (octant) or best solver"},
      {Command::Classify, "classify", "Floating vs absorbed decision"},
      {Command::Minimize, "minimize", "Numeric oracle minimizer"},
      {Command::PlasticityGenerate, "plasticity-generate",
       "Shrink the triangle toward its Fermat-Torricelli point"},
      {Command::PlasticityInvert, "plasticity-invert",
       "Recover shrink offsets from target sides"},
      {Command::Grid, "grid", "Objective on an (omega, phi) grid"},
  };
  std::vector<std::pair<CLI::App *, Command>> registered;
  for (const auto &s : subs) {
    CLI::App *sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--weights", weights, "w1,w2,w3")->required();
    sub->add_option("--triangle", triangle, "x1,y1,z1,x2,y2,z2,x3,y3,z3");
    sub->add_option("--offsets", offsets, "a,b,c");
    sub->add_option("--targets", targets, "s12,s23,s13");
    sub->add_option("--resolution", resolution, "grid size per axis");
    sub->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--angle-unit", unit, "rad|deg")
        ->check(CLI::IsMember({"rad", "deg"}));
    sub->add_option("--solver", solver, "newton|weierstrass|both")
        ->check(CLI::IsMember({"newton", "weierstrass", "both"}));
    registered.emplace_back(sub, s.command);
  }

  std::vector<const char *> raw;
  raw.reserve(argv.size());
  for (const auto &a : argv)
    raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp &) {
    if (help_out)
      *help_out = app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion &) {
    if (help_out)
      *help_out = version() + "\n";
    return std::nullopt;
  } catch (const CLI::ParseError &e) {
    std::string msg = e.what();
    for (auto &ch : msg)
      if (ch == '\n')
        ch = ' ';
    throw ValidationError(msg);
  }

  RunConfig c;
  for (const auto &[sub, command] : registered)
    if (sub->parsed())
      c.command = command;
  c.weights = parse_list<3>(weights, "--weights");
  if (!triangle.empty())
    c.triangle = parse_list<9>(triangle, "--triangle");
  if (!offsets.empty())
    c.offsets = parse_list<3>(offsets, "--offsets");
  if (!targets.empty())
    c.targets = parse_list<3>(targets, "--targets");
  c.resolution = resolution;
  c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.angle_unit = unit == "deg" ? AngleUnit::Deg : AngleUnit::Rad;
  c.solver = solver == "newton"        ? InverseSolver::Newton
             : solver == "weierstrass" ? InverseSolver::Weierstrass
                                       : InverseSolver::Both;
  if (!out.empty())
    c.output_path = out;
  return c;
}

RunOutcome run(const RunConfig &config) {
  RunOutcome outcome;
  try {
    outcome = dispatch(config);
  } catch (const ValidationError &e) {
    return {kExitValidation, {}, std::string("error: validation: ") + e.what()};
  } catch (const NoConvergence &e) {
    return {kExitSolver, {}, std::string("error: solver: ") + e.what()};
  } catch (const NoRealSolution &e) {
    return {kExitSolver, {}, std::string("error: solver: ") + e.what()};
  } catch (const std::exception &e) {
    return {kExitValidation, {}, std::string("error: validation: ") + e.what()};
  }
  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f)
      return {kExitValidation, {},
              "error: validation: cannot open --out path " + *config.output_path};
    f << outcome.payload;
    outcome.payload.clear();
  }
  return outcome;
}

} // namespace sphfermat::cli
