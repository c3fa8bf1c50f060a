#pragma once

#include <chrono>
#include <random>

#include "jacobi.hpp"
#include "soaxis/axis.hpp"

struct PcaSuiteResult {
  int fixtures = 0;
  int failures = 0;
  double worst = 0.0;  // max component deviation, up to sign
  double seconds = 0.0;
};

// Random symmetric distance-like matrices (zero diagonal, entries in [0, 2]),
// sizes 3..8; power-iteration pc1 against the Jacobi reference.
inline PcaSuiteResult run_pca_suite(int count = 100, unsigned seed = 2016) {
  PcaSuiteResult res;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(3, 8);
  std::uniform_real_distribution<double> entry(0.0, 2.0);
  const auto t0 = std::chrono::steady_clock::now();
  for (int f = 0; f < count; ++f) {
    const auto k = static_cast<std::size_t>(size(rng));
    soaxis::DistanceMatrix dm;
    dm.d = soaxis::Matrix(k, k);
    std::vector<std::vector<double>> ref(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      dm.words.push_back("w" + std::to_string(i));
      for (std::size_t j = i + 1; j < k; ++j) {
        const double v = entry(rng);
        dm.d(i, j) = dm.d(j, i) = ref[i][j] = ref[j][i] = v;
      }
    }
    ++res.fixtures;
    try {
      const auto proj = soaxis::principal_axis(dm);
      const auto want = oracle::reference_pc1(ref);
      double same = 0, flipped = 0;
      for (std::size_t i = 0; i < k; ++i) {
        same = std::max(same, std::abs(proj.pc1[i] - want[i]));
        flipped = std::max(flipped, std::abs(proj.pc1[i] + want[i]));
      }
      const double dev = std::min(same, flipped);
      res.worst = std::max(res.worst, dev);
      if (dev > 1e-6) ++res.failures;
    } catch (const std::exception&) {
      ++res.failures;
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}
