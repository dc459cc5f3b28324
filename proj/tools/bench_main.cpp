// Timing comparison of the parallel kernels against their serial reference
// implementations. Wall times vary with the machine; correctness of the pair
// is covered by the test suite, this just shows the speedup.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "fairkl/dependence.hpp"
#include "fairkl/kernels.hpp"
#include "fairkl/reference.hpp"
#include "fairkl/rng.hpp"

namespace {

double time_once(const std::function<void()>& fn, int reps) {
  using clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock::now();
    fn();
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

Eigen::MatrixXd random_matrix(int n, int d, std::uint64_t seed) {
  fairkl::CounterRng rng(seed);
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) X(i, j) = rng.next_normal();
  return X;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 1500, d = 8, reps = 3;
  if (argc > 1) n = std::atoi(argv[1]);
  if (argc > 2) d = std::atoi(argv[2]);
  if (argc > 3) reps = std::atoi(argv[3]);

  const Eigen::MatrixXd X = random_matrix(n, d, 7);
  const Eigen::MatrixXd S = random_matrix(n, 1, 11);
  const fairkl::KernelSpec k = fairkl::KernelSpec::rbf(2.0);

  std::printf("n=%d d=%d reps=%d threads=%d\n", n, d, reps,
              omp_get_max_threads());
  std::printf("%-16s %12s %12s %9s\n", "operation", "parallel_s", "serial_s",
              "speedup");

  double sink = 0.0;  // keeps results observable so nothing is optimized out

  {
    Eigen::MatrixXd G;
    const double tp = time_once([&] { G = fairkl::gram(k, X).values; }, reps);
    Eigen::MatrixXd Gs;
    const double ts =
        time_once([&] { Gs = fairkl::reference::gram_serial(k, X); }, reps);
    sink += G(0, 0) + Gs(0, 0);
    std::printf("%-16s %12.4f %12.4f %8.2fx\n", "gram", tp, ts, ts / tp);
  }
  {
    Eigen::MatrixXd D;
    const double tp = time_once([&] { D = fairkl::squared_distances(X); }, reps);
    sink += D(0, 0);
    std::printf("%-16s %12.4f %12s %9s\n", "sq_distances", tp, "-", "-");
  }
  {
    const Eigen::MatrixXd L = fairkl::gram(k, S).values;
    Eigen::MatrixXd C;
    const double tp = time_once([&] { C = fairkl::center_gram(L); }, reps);
    Eigen::MatrixXd Cs;
    const double ts = time_once(
        [&] { Cs = fairkl::reference::center_gram_serial(L); }, reps);
    sink += C(0, 0) + Cs(0, 0);
    std::printf("%-16s %12.4f %12.4f %8.2fx\n", "center_gram", tp, ts,
                ts / tp);
  }
  {
    const Eigen::MatrixXd M = fairkl::gram(k, X).values;
    const Eigen::MatrixXd L = fairkl::gram(k, S).values;
    double h = 0.0;
    const double tp = time_once([&] { h = fairkl::hsic(M, L); }, reps);
    double hs = 0.0;
    const double ts =
        time_once([&] { hs = fairkl::reference::hsic_expanded(M, L); }, reps);
    sink += h + hs;
    std::printf("%-16s %12.4f %12.4f %8.2fx\n", "hsic", tp, ts, ts / tp);
  }
  {
    double m = 0.0;
    const double tp = time_once([&] { m = fairkl::median_heuristic(X); }, reps);
    double ms = 0.0;
    const double ts = time_once(
        [&] { ms = fairkl::reference::median_heuristic_serial(X); }, reps);
    sink += m + ms;
    std::printf("%-16s %12.4f %12.4f %8.2fx\n", "median_heur", tp, ts,
                ts / tp);
  }

  return sink == 12345.0 ? 1 : 0;
}
