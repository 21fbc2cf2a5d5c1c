#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace circlemap {

struct PeriodicTail {
  std::size_t start;   // 1-based index of the first repeating digit
  std::size_t period;
};

// alpha = [a_1, a_2, ...] = 1/(a_1 + 1/(a_2 + ...)), digits are 1-based.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::int64_t> digits,
                             std::optional<PeriodicTail> tail = std::nullopt,
                             bool terminates = false);

  static ContinuedFraction golden();
  static ContinuedFraction silver();
  static ContinuedFraction constant(std::int64_t digit);
  // Digits from the Gauss orbit of x (at most max_depth). A rational x
  // gives a terminating expansion instead of an error.
  static ContinuedFraction from_real(double x, int max_depth = 30);

  // a_k, k >= 1
  std::int64_t digit(std::size_t k) const;
  bool has_digit(std::size_t k) const;
  // nullopt for infinite (periodic) expansions
  std::optional<std::size_t> length() const;
  bool periodic() const { return tail_.has_value(); }
  bool terminates() const { return terminates_; }
  const std::optional<PeriodicTail>& tail() const { return tail_; }
  const std::vector<std::int64_t>& listed_digits() const { return digits_; }
  std::vector<std::int64_t> prefix(std::size_t n) const;

  // alpha_j = [a_{j+1}, a_{j+2}, ...]; alpha_0 is the number itself
  double tail_value(std::size_t j) const;
  double value() const { return tail_value(0); }

 private:
  std::vector<std::int64_t> digits_;
  std::optional<PeriodicTail> tail_;
  bool terminates_ = false;
};

struct Convergents {
  // index 0 holds p_0/q_0 = 0/1; index k holds p_k/q_k = [a_1..a_k]
  std::vector<std::int64_t> p, q;
};

struct GaussOrbit {
  std::vector<double> alpha;          // alpha_0 .. alpha_{n-1}
  std::vector<std::int64_t> digits;   // a_{k+1} = floor(1/alpha_k)
};

inline constexpr double kRationalThreshold = 1e-14;

GaussOrbit gauss_orbit(double x, int n);
Convergents convergents(const ContinuedFraction& cf, std::size_t n);
// digits of p/q by the Euclidean algorithm
std::vector<std::int64_t> digits_of(std::int64_t p, std::int64_t q);

struct BrjunoValue {
  double value;
  int depth;
  double tail_bound;
};
BrjunoValue brjuno(const ContinuedFraction& cf, int depth);

double digit_census(const ContinuedFraction& cf, std::int64_t K,
                    std::size_t window);
bool is_bounded_type(const ContinuedFraction& cf, std::int64_t bound,
                     std::size_t depth);

// "golden" | "silver" | "cf:1,2,3" | "cf:1,2,3|2" | decimal literal
ContinuedFraction parse_alpha(const std::string& spec);

}  // namespace circlemap
