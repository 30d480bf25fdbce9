// Times the exact pairwise-separation verifier: serial reference vs the
// OpenMP kernel, on the same family. The two must return identical exact
// results; the benchmark fails (exit 1) if they ever disagree.
//
// The default families finish in a few seconds; pass --big for workloads
// large enough to measure scaling on a multicore machine. On a single
// hardware thread the parallel kernel legitimately ties the serial one.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "suspk/entropy.hpp"

using namespace suspk;

namespace {

double time_once(const SeparationFamily& fam, SeparationCheck (*verify)(const SeparationFamily&),
                 SeparationCheck& out) {
  auto start = std::chrono::steady_clock::now();
  out = verify(fam);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int bench(const char* label, const SeparationFamily& fam) {
  long pairs = static_cast<long>(fam.words.size()) * (static_cast<long>(fam.words.size()) - 1) / 2;
  std::printf("family: %s -> %zu words, %ld pairs, horizon n=%ld\n", label, fam.words.size(),
              pairs, fam.n);
  SeparationCheck serial, parallel;
  double ts = time_once(fam, verify_separation_serial, serial);
  double tp = time_once(fam, verify_separation_parallel, parallel);
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  bool identical = serial.pairs == parallel.pairs && serial.separated == parallel.separated &&
                   serial.min_distance == parallel.min_distance;
  std::printf("  serial:   %8.3f s   (separated=%s, min distance %s)\n", ts,
              serial.separated ? "yes" : "no", to_string(serial.min_distance).c_str());
  std::printf("  parallel: %8.3f s   (%d threads)\n", tp, threads);
  std::printf("  speedup:  %.2fx, results identical: %s\n\n", ts / (tp > 0 ? tp : 1e-9),
              identical ? "yes" : "NO");
  return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  bool big = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--big") == 0) big = true;
  std::printf("exact separation-verification benchmark%s\n\n", big ? " (--big)" : "");
  int rc = 0;

  Sft full2{IntMatrix{{2}}};
  Sft golden{IntMatrix{{1, 1}, {1, 0}}};

  rc |= bench("full 2-shift, t=1/2, eps=1/4, n=6",
              separation_family(full2, Rat(1, 2), 6, Rat(1, 4), 20000000));
  rc |= bench("golden-mean shift, t=1/2, eps=1/4, n=8",
              separation_family(golden, Rat(1, 2), 8, Rat(1, 4), 20000000));
  if (big) {
    rc |= bench("full 2-shift, t=1/2, eps=1/8, n=6",
                separation_family(full2, Rat(1, 2), 6, Rat(1, 8), 20000000));
    rc |= bench("golden-mean shift, t=1/2, eps=1/8, n=10",
                separation_family(golden, Rat(1, 2), 10, Rat(1, 8), 20000000));
  }
  return rc;
}
