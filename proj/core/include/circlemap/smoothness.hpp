#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "circlemap/cf.hpp"

namespace circlemap {

inline constexpr int kMaxDiffOrder = 4;
inline constexpr int kBoundWindows = 6;   // windows inspected for boundedness
inline constexpr int kGrowWindows = 4;    // windows inspected for growth
inline constexpr double kBoundFactor = 5.0;

// Sliding-window Newton divided differences f[x_i, ..., x_{i+order}].
std::vector<double> divided_differences(const std::vector<double>& xs,
                                        const std::vector<double>& ys, int order);

struct SmoothnessReport {
  std::vector<double> b_samples, a_values;
  std::vector<double> a_error;     // per-sample uncertainty of a
  std::vector<double> residuals;   // rotation-number bracket width at each sample
  // index m-1 holds order m; windows ordered by increasing b
  std::array<std::vector<double>, kMaxDiffOrder> divided_diffs;
  std::array<std::vector<double>, kMaxDiffOrder> noise;  // propagated from a_error
  std::array<bool, kMaxDiffOrder> bounded{};
  std::array<bool, kMaxDiffOrder> grows{};
  std::array<double, kMaxDiffOrder> growth_exponents{};  // d ~ (1-b)^(-e)
  std::optional<int> estimated_k;
};

// Classification of given samples; y_err is the per-sample uncertainty.
// A difference below its propagated noise (or below 1e-9) counts as zero.
SmoothnessReport analyze_samples(const std::vector<double>& b, const std::vector<double>& a,
                                 const std::vector<double>& y_err);

// b_j = 1 - 2^-j for j = 3..j_max on the tongue of alpha. estimated_k is
// left empty when nothing is detected; probe() turns that into an error.
// q_cap bounds the convergents used per tongue point; 0 picks it from tol
// (resolving a to ~1e-15 needs denominators near 3e7).
SmoothnessReport probe_report(const ContinuedFraction& alpha, int j_max, double tol,
                              std::int64_t q_cap = 0);
SmoothnessReport probe(const ContinuedFraction& alpha, int j_max, double tol,
                       std::int64_t q_cap = 0);

}  // namespace circlemap
