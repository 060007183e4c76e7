#pragma once

#include <cstdint>
#include <string>

namespace moran::cli {

struct Options {
  std::string command;
  std::string spec;
  std::size_t depth = 0;  // 0: command default
  double tol = 0;  // 0: 1e-10 for spectral pressure, 1e-6 for finite-level sums
  std::uint64_t seed = 1;
  int precision = 64;
  std::string out = ".";
  std::string format;  // empty: every format the command produces
  std::size_t budget = 10'000'000;

  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t jmax = 5;
  std::size_t anchor = 6;
  std::size_t radii = 0;
  std::string method = "auto";
  std::string count = "words";
  std::string bernoulli;
  bool gaps = false;
  bool evidence = false;
};

/// Runs one command; returns the process exit status. Errors are reported on
/// stderr as a JSON object.
int run(const Options& opt);

}  // namespace moran::cli
