#include "meqlab/parallel.hpp"

namespace meqlab {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_default_threads(unsigned threads) { g_threads = threads; }

unsigned default_threads() {
  const unsigned t = g_threads.load();
  if (t != 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace meqlab
