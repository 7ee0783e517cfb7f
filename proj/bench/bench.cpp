// Serial reference vs OpenMP kernels. Usage: meshpatt_bench [maxn] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "meshpatt/classify.hpp"
#include "meshpatt/enumerate.hpp"
#include "meshpatt/fingerprint.hpp"
#include "meshpatt/text_format.hpp"

using namespace meshpatt;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool all_agree = true;

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "agree" : "DIFFER");
  all_agree = all_agree && agree;
}

bool same_classes(const ExperimentalClassification& a, const ExperimentalClassification& b) {
  if (a.classes.size() != b.classes.size()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    if (a.classes[i].members != b.classes[i].members) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int maxn = argc > 1 ? std::atoi(argv[1]) : 8;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d, maxn %d, best of %d\n", omp_get_max_threads(), maxn, reps);
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial_s", "openmp_s", "speedup");

  const MeshPattern p = parse_pattern("132:1234");
  row("fingerprint 132:1234", best_of(reps, [&] { avoidance_fingerprint_serial(p, maxn); }),
      best_of(reps, [&] { avoidance_fingerprint(p, maxn); }),
      avoidance_fingerprint_serial(p, maxn) == avoidance_fingerprint(p, maxn));

  const std::vector<MeshPattern> basis = {parse_pattern("1324"), parse_pattern("2143"), parse_pattern("12:273")};
  row("count_av mesh basis", best_of(reps, [&] { count_av_serial(basis, maxn); }),
      best_of(reps, [&] { count_av(basis, maxn); }), count_av_serial(basis, maxn) == count_av(basis, maxn));

  const Permutation u = parse_permutation("12");
  const int cn = std::min(maxn, 6);
  row("experimental classify 12", best_of(reps, [&] { experimental_classify_serial(u, cn); }),
      best_of(reps, [&] { experimental_classify(u, cn); }),
      same_classes(experimental_classify_serial(u, cn), experimental_classify(u, cn)));
  return all_agree ? 0 : 1;
}
