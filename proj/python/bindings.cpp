#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rholab/fourier.hpp"
#include "rholab/mixing.hpp"
#include "rholab/rho_solver.hpp"
#include "rholab/spectral.hpp"
#include "rholab/sst.hpp"
#include "rholab/version.hpp"

namespace py = pybind11;
using namespace rholab;

namespace {

WalkParams make_params(u64 p, u64 k) { return WalkParams(OddModulus(p), k); }

}  // namespace

PYBIND11_MODULE(_rholab, m) {
  m.doc() = "Exact and Monte Carlo experiments for the Pollard rho walk on Z_p";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "RhoError", PyExc_RuntimeError);

  // modmath
  m.def("mod_pow", &mod_pow, py::arg("base"), py::arg("exp"), py::arg("modulus"));
  m.def("mod_inverse", &mod_inverse, py::arg("a"), py::arg("p"));
  m.def("is_prime", &is_prime, py::arg("n"));
  m.def(
      "validate_group",
      [](u64 q, u64 p, u64 x, u64 y) {
        validate_group(GroupInstance{q, p, x, y});
        return true;
      },
      py::arg("q"), py::arg("p"), py::arg("x"), py::arg("y"));

  // solver
  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("k", &SolveResult::k)
      .def_readonly("attempts", &SolveResult::attempts);
  m.def(
      "solve",
      [](u64 q, u64 p, u64 x, u64 y, u64 seed, int max_attempts) {
        return solve(GroupInstance{q, p, x, y}, seed, max_attempts);
      },
      py::arg("q"), py::arg("p"), py::arg("x"), py::arg("y"), py::arg("seed") = 0,
      py::arg("max_attempts") = 64);
  m.def("collision_bound", &collision_bound, py::arg("tau_half"), py::arg("group_size"),
        py::arg("c"));
  py::class_<BlockCollisionBound>(m, "BlockCollisionBound")
      .def_readonly("t", &BlockCollisionBound::t)
      .def_readonly("probability_floor", &BlockCollisionBound::probability_floor);
  m.def("block_collision_bound", &block_collision_bound, py::arg("tau_block"),
        py::arg("group_size"), py::arg("c"));
  py::class_<CollisionStats>(m, "CollisionStats")
      .def_readonly("trials", &CollisionStats::trials)
      .def_readonly("steps_to_collision", &CollisionStats::steps_to_collision)
      .def_readonly("bound_used", &CollisionStats::bound_used)
      .def_readonly("fraction_within_bound", &CollisionStats::fraction_within_bound)
      .def_readonly("proposition_floor", &CollisionStats::proposition_floor)
      .def_readonly("meets_floor", &CollisionStats::meets_floor);
  m.def(
      "collision_experiment",
      [](u64 p, u64 k, double c, u64 trials, u64 seed) {
        return collision_experiment(make_params(p, k), c, trials, seed);
      },
      py::arg("p"), py::arg("k"), py::arg("c"), py::arg("trials"), py::arg("seed") = 0);

  // mixing
  m.def(
      "pushforward_rho",
      [](const ProbVector& v, u64 p, u64 k) { return pushforward_rho(v, make_params(p, k)); },
      py::arg("v"), py::arg("p"), py::arg("k"));
  m.def(
      "pushforward_block",
      [](const ProbVector& v, const ProbVector& mu) { return pushforward_block(v, mu); },
      py::arg("v"), py::arg("mu"));
  m.def(
      "distances",
      [](const ProbVector& v) {
        const Distances d = distances(v);
        return py::make_tuple(d.sep, d.tv);
      },
      py::arg("v"));
  py::class_<MixingReport>(m, "MixingReport")
      .def_readonly("p", &MixingReport::p)
      .def_readonly("k", &MixingReport::k)
      .def_readonly("epsilon", &MixingReport::epsilon)
      .def_readonly("tau", &MixingReport::tau)
      .def_readonly("per_start_tau", &MixingReport::per_start_tau)
      .def_readonly("sep_curve", &MixingReport::sep_curve);
  m.def(
      "tau_s",
      [](u64 p, u64 k, double epsilon, u64 max_steps) {
        return tau_s(make_params(p, k), epsilon, max_steps);
      },
      py::arg("p"), py::arg("k"), py::arg("epsilon") = 0.5,
      py::arg("max_steps") = 100000);
  m.def(
      "tau_s_block",
      [](u64 p, double epsilon, u64 max_blocks) {
        return tau_s_block(OddModulus(p), epsilon, max_blocks);
      },
      py::arg("p"), py::arg("epsilon") = 0.5, py::arg("max_blocks") = 100000);
  m.def(
      "block_increment_law", [](u64 p) { return block_increment_law(OddModulus(p)); },
      py::arg("p"));
  m.def("increment_coefficients", &increment_coefficients, py::arg("tol") = 1e-15);

  // spectral
  m.def(
      "canonical_path",
      [](u64 x, u64 y, u64 p) {
        std::vector<std::pair<u64, u64>> edges;
        for (const PathEdge& e : canonical_path(x, y, OddModulus(p)))
          edges.emplace_back(e.from, e.to);
        return edges;
      },
      py::arg("x"), py::arg("y"), py::arg("p"));
  m.def("congestion", [](u64 p) { return congestion(OddModulus(p)); }, py::arg("p"));
  py::class_<GapBounds>(m, "GapBounds")
      .def_readonly("lambda_k_bound", &GapBounds::lambda_k_bound)
      .def_readonly("lambda_r2_bound", &GapBounds::lambda_r2_bound);
  m.def("gap_bounds", [](u64 p) { return gap_bounds(OddModulus(p)); }, py::arg("p"));
  m.def("fill_bound", &fill_bound, py::arg("lambda_"), py::arg("pi_min"),
        py::arg("epsilon"));
  py::enum_<WalkKind>(m, "WalkKind")
      .value("Rho", WalkKind::Rho)
      .value("RhoSquared", WalkKind::RhoSquared)
      .value("Doubling", WalkKind::Doubling);
  py::enum_<GapMode>(m, "GapMode")
      .value("Dirichlet", GapMode::Dirichlet)
      .value("PPStar", GapMode::PPStar);
  m.def(
      "exact_gap",
      [](WalkKind kind, u64 p, u64 k, GapMode mode) {
        return exact_gap(kind, make_params(p, k), mode);
      },
      py::arg("kind"), py::arg("p"), py::arg("k"), py::arg("mode"));

  // sst
  py::class_<SstBudget>(m, "SstBudget")
      .def_readonly("r", &SstBudget::r)
      .def_readonly("steps", &SstBudget::steps);
  m.def("sst_budget", &sst_budget, py::arg("m"));
  py::class_<TailEstimate>(m, "TailEstimate")
      .def_readonly("estimate", &TailEstimate::estimate)
      .def_readonly("half_width", &TailEstimate::half_width)
      .def_readonly("trials", &TailEstimate::trials)
      .def_readonly("exceed_count", &TailEstimate::exceed_count);
  m.def(
      "sst_tail",
      [](int m_exp, u64 k, u64 t, u64 trials, u64 seed) {
        return sst_tail(SstParams(m_exp, k), t, trials, seed);
      },
      py::arg("m"), py::arg("k"), py::arg("t"), py::arg("trials"), py::arg("seed") = 0);
  m.def(
      "sst_stopping_times",
      [](int m_exp, u64 k, u64 count, u64 seed) {
        std::vector<std::pair<u64, u64>> rows;
        for (const SstOutcome& o : sst_trials(SstParams(m_exp, k), count, seed))
          rows.emplace_back(o.stopping_time, o.final_position);
        return rows;
      },
      py::arg("m"), py::arg("k"), py::arg("count"), py::arg("seed") = 0);

  // fourier
  m.def("xi_constant", &xi_constant);
  m.def("l2_bound", &l2_bound, py::arg("s"), py::arg("m"));
  m.def("exact_l2", [](u64 p, u64 s) { return exact_l2(OddModulus(p), s); },
        py::arg("p"), py::arg("s"));
  m.def(
      "dft",
      [](const std::vector<std::complex<double>>& f) { return dft(f); },
      py::arg("f"));
  m.def(
      "phi_s",
      [](u64 ell, u64 s, u64 p) { return phi_s(ell, s, FourierContext(OddModulus(p))); },
      py::arg("ell"), py::arg("s"), py::arg("p"));
  m.def(
      "alternation_lower",
      [](u64 ell, u64 s, u64 p) {
        const AlternationBound b = alternation_lower(ell, s, FourierContext(OddModulus(p)));
        return py::make_tuple(b.block_sum, b.single_window);
      },
      py::arg("ell"), py::arg("s"), py::arg("p"));
  m.def("alternation_census", &alternation_census, py::arg("m"));
  m.def("g_transform", &g_transform, py::arg("x"));
  m.def("pi_product", &pi_product, py::arg("j"), py::arg("t"));
  py::class_<SeparatingStats>(m, "SeparatingStats")
      .def_readonly("t", &SeparatingStats::t)
      .def_readonly("r", &SeparatingStats::r)
      .def_readonly("mean_direct", &SeparatingStats::mean_direct)
      .def_readonly("second_direct", &SeparatingStats::second_direct)
      .def_readonly("mean_closed", &SeparatingStats::mean_closed)
      .def_readonly("second_closed", &SeparatingStats::second_closed)
      .def_readonly("variance_closed", &SeparatingStats::variance_closed);
  m.def("separating_stats", &separating_stats, py::arg("t"), py::arg("r"));
}
