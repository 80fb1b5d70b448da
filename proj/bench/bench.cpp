// Serial reference kernels against their OpenMP counterparts. Each row
// reports the best of --reps runs and whether the two results agree.

#include "swcalc/geography/geography.hpp"
#include "swcalc/knots/alexander.hpp"
#include "swcalc/knots/diagram.hpp"
#include "swcalc/laurent.hpp"
#include "swcalc/manifolds/manifold.hpp"
#include "swcalc/parallel.hpp"
#include "swcalc/sw/descent.hpp"
#include "swcalc/sw/evaluate.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace swcalc;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

template <class T>
void row(const char* name, int reps, const std::function<T()>& serial, const std::function<T()>& parallel) {
  T a, b;
  const double ts = best_of(reps, [&] { a = serial(); });
  const double tp = best_of(reps, [&] { b = parallel(); });
  std::printf("%-12s %10.4f %10.4f %8.2fx  %s\n", name, ts, tp, ts / tp, a == b ? "agree" : "DIFFER");
}

LaurentPoly random_poly(std::mt19937_64& rng, const VarBasis& basis, int terms) {
  std::uniform_int_distribution<int> coef(-9, 9), expo(-40, 40);
  LaurentPoly p = LaurentPoly::constant(basis, 0);
  for (int i = 0; i < terms; ++i)
    p = p + LaurentPoly::monomial(basis, {2 * expo(rng), 2 * expo(rng), 2 * expo(rng)}, coef(rng));
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial and parallel kernel timings"};
  int reps = 3;
  int threads = 0;
  int terms = 400;
  int chi_max = 400;
  app.add_option("--reps", reps, "Repetitions per kernel")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads for the parallel kernels (0 keeps the default)");
  app.add_option("--terms", terms, "Terms per random polynomial factor")->check(CLI::PositiveNumber);
  app.add_option("--chi-max", chi_max, "Largest chi_h in the chart")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_num_threads(threads);

  std::printf("openmp=%s threads=%d\n", openmp_enabled() ? "yes" : "no", num_threads());
  std::printf("%-12s %10s %10s %9s\n", "kernel", "serial_s", "parallel_s", "speedup");

  const auto knot = knots::torus_knot(3, 7);
  row<LaurentPoly>("skein", reps, [&] { return knots::kernels::skein_serial(knot); },
                   [&] { return knots::kernels::skein_parallel(knot); });

  std::mt19937_64 rng(7);
  const VarBasis basis({"x", "y", "z"});
  const LaurentPoly a = random_poly(rng, basis, terms), b = random_poly(rng, basis, terms);
  row<LaurentPoly>("mul", reps, [&] { return kernels::mul_serial(a, b); },
                   [&] { return kernels::mul_parallel(a, b); });

  row<std::vector<geography::ChartRow>>("chart_rows", reps,
                                        [&] { return geography::kernels::chart_rows_serial(chi_max); },
                                        [&] { return geography::kernels::chart_rows_parallel(chi_max); });

  const auto parent = manifolds::blowup(manifolds::elliptic(12), 4);
  const sw::ConfigIntersections cfg{5,
                                    {manifolds::parse_class("F - 2E1 - E2 - E3 - E4"), manifolds::parse_class("E1 - E2"),
                                     manifolds::parse_class("E2 - E3"), manifolds::parse_class("E3 - E4")},
                                    parent->lattice,
                                    false};
  const auto s = sw::sw_of(parent);
  row<std::string>("descent", reps, [&] { return to_string(sw::kernels::descent_serial(s, cfg)); },
                   [&] { return to_string(sw::kernels::descent_parallel(s, cfg)); });
  return 0;
}
