// benchmarks/bench-main.cc
#include "benchmark/benchmark.h"

BENCHMARK_MAIN();
