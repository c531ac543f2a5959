// Benchmark of the chessboard search kernel: serial reference vs OpenMP scan.
// The two paths must return identical results; the serial one is the ground
// truth the tests compare against.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "layercake/chessboard.hpp"
#include "layercake/json_io.hpp"

namespace lc = layercake;

namespace {

double run_once(const lc::Instance& instance, long long q, long long r, bool parallel,
                lc::ChessboardSearchResult& out) {
  lc::ChessboardSearchOptions options;
  options.parallel = parallel;
  options.exhaustive = true;
  auto start = std::chrono::steady_clock::now();
  out = lc::grid_search_envy_free(instance, q, r, options);
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  long long q = argc > 1 ? std::atoll(argv[1]) : 3;
  long long r = argc > 2 ? std::atoll(argv[2]) : 48;
  int n = argc > 3 ? std::atoi(argv[3]) : 6;
  int m = argc > 4 ? std::atoi(argv[4]) : int(std::min<long long>(q, 2));
  unsigned long long seed = argc > 5 ? std::strtoull(argv[5], nullptr, 10) : 7;

#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("chessboard scan benchmark: q=%lld R=%lld n=%d m=%d seed=%llu threads=%d\n", q, r, n,
              m, seed, threads);

  lc::Instance instance = lc::generate_instance(n, m, 3, seed);
  lc::ChessboardSearchResult serial, parallel;
  double t_serial = run_once(instance, q, r, /*parallel=*/false, serial);
  double t_parallel = run_once(instance, q, r, /*parallel=*/true, parallel);

  bool same = serial.best.placement == parallel.best.placement &&
              serial.best.coord == parallel.best.coord && serial.balance == parallel.balance;
  std::printf("  serial   : %8.3f s  (balance %s, %lld points)\n", t_serial,
              serial.balance.str().c_str(), serial.points_scanned);
  std::printf("  parallel : %8.3f s  (balance %s)\n", t_parallel, parallel.balance.str().c_str());
  std::printf("  speedup  : %8.2fx   results %s\n", t_serial / t_parallel,
              same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
