#pragma once

#include <cstdint>

#include "locpr/oracle.hpp"

namespace locpr {

enum class ConvergedBy { fixed, adaptive_certified, full_exploration };

inline const char* to_string(ConvergedBy c) {
  switch (c) {
    case ConvergedBy::fixed: return "fixed";
    case ConvergedBy::adaptive_certified: return "adaptive_certified";
    case ConvergedBy::full_exploration: return "full_exploration";
  }
  return "?";
}

/// A single-node PageRank estimate together with the configuration and
/// query cost that produced it. reserve_floor is the deterministic part of
/// the bidirectional estimator, (1/n) * sum of reserves; the returned value
/// never falls below it.
struct Estimate {
  double value = 0.0;
  double eps = 0.0;
  std::uint64_t n_r = 0;
  std::uint32_t trials = 1;
  QueryStats queries;
  ConvergedBy converged_by = ConvergedBy::fixed;
  double reserve_floor = 0.0;
};

}  // namespace locpr
