// Compares the serial reference sweep with the OpenMP kernel on the two
// hot loops (path generation + quadratic variation, and the level trace)
// and verifies that both modes produce bit-identical results.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ito/ensemble.hpp"
#include "ito/integrator.hpp"
#include "ito/stats.hpp"

namespace {

using ito::RunMode;

template <class Fn>
double timed(Fn&& fn) {
  const double t0 = omp_get_wtime();
  fn();
  return omp_get_wtime() - t0;
}

void report(const char* kernel, std::size_t paths, double serial_s,
            double parallel_s, bool identical) {
  std::printf("%-12s paths=%-6zu serial=%8.3fs parallel=%8.3fs speedup=%5.2fx %s\n",
              kernel, paths, serial_s, parallel_s, serial_s / parallel_s,
              identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t paths = argc > 1 ? std::stoul(argv[1]) : 4000;
  const int level = argc > 2 ? std::stoi(argv[2]) : 12;
  std::printf("threads=%d level=%d\n", omp_get_max_threads(), level);

  const ito::PathEnsemble ensemble(2024, ito::TimeGrid::dyadic(level, 1.0), paths);

  bool all_identical = true;

  {
    std::vector<double> qv_serial(paths), qv_parallel(paths);
    const auto kernel = [&](RunMode mode, std::vector<double>& out) {
      ito::for_each_path(ensemble, mode, [&](std::size_t i, const ito::WienerPath& w) {
        double sum = 0.0;
        for (std::size_t j = 1; j < w.knot_count(); ++j) {
          const double d = w.value_index(j) - w.value_index(j - 1);
          sum += d * d;
        }
        out[i] = sum;
      });
    };
    const double ts = timed([&] { kernel(RunMode::kSerial, qv_serial); });
    const double tp = timed([&] { kernel(RunMode::kParallel, qv_parallel); });
    const bool identical = qv_serial == qv_parallel;
    all_identical = all_identical && identical;
    report("sample+qv", paths, ts, tp, identical);
    std::printf("  mean qv = %.6f (expect ~1)\n", ito::mean(qv_serial));
  }

  {
    const ito::IntegrandFunctional f = ito::make_wiener_integrand();
    const ito::ApproximationScheme scheme(1.0, 4, level,
                                          ito::TruncationSchedule::none());
    std::vector<double> acc_serial(paths), acc_parallel(paths);
    const auto kernel = [&](RunMode mode, std::vector<double>& out) {
      ito::for_each_path(ensemble, mode, [&](std::size_t i, const ito::WienerPath& w) {
        out[i] = ito::integrate_general(f, 1.0, scheme, w).accepted_value;
      });
    };
    const double ts = timed([&] { kernel(RunMode::kSerial, acc_serial); });
    const double tp = timed([&] { kernel(RunMode::kParallel, acc_parallel); });
    const bool identical = acc_serial == acc_parallel;
    all_identical = all_identical && identical;
    report("trace", paths, ts, tp, identical);
  }

  return all_identical ? 0 : 1;
}
