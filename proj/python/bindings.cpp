#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"
#include "sphfermat/oracle.hpp"
#include "sphfermat/plasticity.hpp"
#include "sphfermat/solve.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <vector>

namespace py = pybind11;
using namespace sphfermat;

namespace {

using Vec3 = std::array<double, 3>;
using TriangleArg = std::optional<std::array<Vec3, 3>>;

Weights to_weights(const Vec3 &w) { return {w[0], w[1], w[2]}; }

UnitPoint to_point(const Vec3 &p) { return UnitPoint(p[0], p[1], p[2]); }

GeodesicTriangle to_triangle(const TriangleArg &t) {
  if (!t)
    return GeodesicTriangle::octant();
  return {to_point((*t)[0]), to_point((*t)[1]), to_point((*t)[2])};
}

Vec3 as_tuple(const UnitPoint &p) { return {p.x(), p.y(), p.z()}; }

py::dict result_dict(const FermatResult &r) {
  py::dict d;
  d["case"] = r.case_label.name();
  d["vertex"] = r.case_label.vertex;
  d["point"] = as_tuple(r.point);
  d["omega"] = r.coords.omega;
  d["phi"] = r.coords.phi;
  d["objective"] = r.objective;
  d["distances"] = r.distances;
  d["stationarity_residual"] = r.stationarity_residual;
  return d;
}

Vec3 sides_tuple(const TriangleSides &s) { return {s.s12, s.s23, s.s13}; }

TriangleSides to_sides(const Vec3 &s) { return {s[0], s[1], s[2]}; }

ShrinkOffsets to_offsets(const Vec3 &o) { return {o[0], o[1], o[2]}; }

Vec3 offsets_tuple(const ShrinkOffsets &o) { return {o.a, o.b, o.c}; }

FermatDistances resolve_a0(const std::optional<Vec3> &a0, const Weights &w) {
  return a0 ? *a0 : solve_octant(w).distances;
}

} // namespace

PYBIND11_MODULE(sphfermat, m) {
  m.doc() = "Weighted Fermat-Torricelli points of geodesic triangles on the "
            "unit sphere";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  // Later registrations are tried first, so subclasses follow the base.
  py::register_exception<DegenerateDirection>(m, "DegenerateDirection", error);
  py::register_exception<OutOfRange>(m, "OutOfRange", error);
  py::register_exception<DegenerateTriangle>(m, "DegenerateTriangle", error);
  py::register_exception<WeightsNotFloating>(m, "WeightsNotFloating", error);
  py::register_exception<NumericalDomain>(m, "NumericalDomain", error);
  py::register_exception<DomainError>(m, "DomainError", error);
  py::register_exception<AmbiguousAbsorption>(m, "AmbiguousAbsorption", error);
  py::register_exception<OffsetTooLarge>(m, "OffsetTooLarge", error);
  py::register_exception<InfeasibleTarget>(m, "InfeasibleTarget", error);
  py::register_exception<NoConvergence>(m, "NoConvergence", error);
  py::register_exception<NoRealSolution>(m, "NoRealSolution", error);

  m.def("geodesic_distance",
        [](const Vec3 &p, const Vec3 &q) {
          return geodesic_distance(to_point(p), to_point(q));
        },
        py::arg("p"), py::arg("q"));

  m.def("objective",
        [](const Vec3 &w, const Vec3 &p, const TriangleArg &t) {
          return objective(to_triangle(t), to_weights(w), to_point(p));
        },
        py::arg("weights"), py::arg("point"), py::arg("triangle") = py::none());

  m.def("solve",
        [](const Vec3 &w, const TriangleArg &t) {
          return result_dict(solve(to_triangle(t), to_weights(w)));
        },
        py::arg("weights"), py::arg("triangle") = py::none(),
        "Closed form on the octant triangle, the numeric oracle elsewhere.");

  m.def("solve_octant",
        [](const Vec3 &w) { return result_dict(solve_octant(to_weights(w))); },
        py::arg("weights"));

  m.def("solve_octant_paper",
        [](const Vec3 &w) {
          const SphericalCoords c = solve_octant_paper(to_weights(w));
          return std::pair{c.omega, c.phi};
        },
        py::arg("weights"),
        "(omega, phi) from the published explicit formulas, unvalidated.");

  m.def("classify",
        [](const Vec3 &w, const TriangleArg &t) {
          const CaseDecision d = classify(to_triangle(t), to_weights(w));
          py::dict out;
          out["case"] = d.label.name();
          out["vertex"] = d.label.vertex;
          out["margins"] = d.margins;
          return out;
        },
        py::arg("weights"), py::arg("triangle") = py::none());

  m.def("minimize",
        [](const Vec3 &w, const TriangleArg &t, int scan_points, int max_iters,
           double step_init, double tol_grad, double vertex_snap) {
          OracleOptions o;
          o.scan_points = scan_points;
          o.max_iters = max_iters;
          o.step_init = step_init;
          o.tol_grad = tol_grad;
          o.vertex_snap = vertex_snap;
          return result_dict(minimize(to_triangle(t), to_weights(w), o));
        },
        py::arg("weights"), py::arg("triangle") = py::none(),
        py::arg("scan_points") = OracleOptions{}.scan_points,
        py::arg("max_iters") = OracleOptions{}.max_iters,
        py::arg("step_init") = OracleOptions{}.step_init,
        py::arg("tol_grad") = OracleOptions{}.tol_grad,
        py::arg("vertex_snap") = OracleOptions{}.vertex_snap);

  m.def("grid_scan",
        [](const Vec3 &w, int resolution, const TriangleArg &t) {
          std::vector<Vec3> rows;
          for (const GridRow &r : grid_scan(to_triangle(t), to_weights(w), resolution))
            rows.push_back({r.omega, r.phi, r.objective});
          return rows;
        },
        py::arg("weights"), py::arg("resolution") = 100,
        py::arg("triangle") = py::none(),
        "Rows of (omega, phi, objective).");

  m.def("predicted_sides",
        [](const Vec3 &w, const Vec3 &offsets, const std::optional<Vec3> &a0) {
          const Weights wt = to_weights(w);
          return sides_tuple(
              predicted_sides(resolve_a0(a0, wt), to_offsets(offsets), wt));
        },
        py::arg("weights"), py::arg("offsets"), py::arg("a0") = py::none(),
        "(s12, s23, s13) after shrinking; a0 defaults to the octant distances.");

  m.def("invert_sides_newton",
        [](const Vec3 &w, const Vec3 &targets, const std::optional<Vec3> &a0) {
          const Weights wt = to_weights(w);
          return offsets_tuple(
              invert_sides_newton(to_sides(targets), wt, resolve_a0(a0, wt)));
        },
        py::arg("weights"), py::arg("targets"), py::arg("a0") = py::none());

  m.def("invert_sides_weierstrass",
        [](const Vec3 &w, const Vec3 &targets, const std::optional<Vec3> &a0) {
          const Weights wt = to_weights(w);
          py::list out;
          for (const WeierstrassSolution &s : invert_sides_weierstrass(
                   to_sides(targets), wt, resolve_a0(a0, wt))) {
            py::dict d;
            d["offsets"] = offsets_tuple(s.offsets);
            d["half_angles"] =
                Vec3{s.half_angles.t_a, s.half_angles.t_b, s.half_angles.t_c};
            d["branch"] = std::pair{s.branch_a, s.branch_c};
            d["residual"] = s.residual;
            out.append(d);
          }
          return out;
        },
        py::arg("weights"), py::arg("targets"), py::arg("a0") = py::none());
}
