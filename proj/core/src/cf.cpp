#include "circlemap/cf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "circlemap/errors.hpp"

namespace circlemap {

ContinuedFraction::ContinuedFraction(std::vector<std::int64_t> digits,
                                     std::optional<PeriodicTail> tail,
                                     bool terminates)
    : digits_(std::move(digits)), tail_(tail), terminates_(terminates) {
  for (auto d : digits_)
    if (d < 1) throw InvalidArgument("continued-fraction digits must be >= 1");
  if (tail_) {
    if (tail_->period == 0 || tail_->start < 1 ||
        tail_->start + tail_->period - 1 > digits_.size())
      throw InvalidArgument("periodic tail does not fit the listed digits");
    if (terminates_) throw InvalidArgument("a periodic expansion cannot terminate");
    digits_.resize(tail_->start - 1 + tail_->period);
  }
}

ContinuedFraction ContinuedFraction::golden() { return constant(1); }
ContinuedFraction ContinuedFraction::silver() { return constant(2); }

ContinuedFraction ContinuedFraction::constant(std::int64_t digit) {
  return ContinuedFraction({digit}, PeriodicTail{1, 1});
}

ContinuedFraction ContinuedFraction::from_real(double x, int max_depth) {
  if (!(x > 0.0 && x < 1.0))
    throw InvalidArgument("alpha must lie in (0,1)");
  std::vector<std::int64_t> d;
  double a = x;
  for (int k = 0; k < max_depth; ++k) {
    if (a < kRationalThreshold) return ContinuedFraction(d, std::nullopt, true);
    const double inv = 1.0 / a;
    const double fl = std::floor(inv);
    d.push_back(static_cast<std::int64_t>(fl));
    a = inv - fl;
  }
  return ContinuedFraction(d);
}

bool ContinuedFraction::has_digit(std::size_t k) const {
  if (k < 1) return false;
  return tail_ || k <= digits_.size();
}

std::int64_t ContinuedFraction::digit(std::size_t k) const {
  if (k < 1) throw InvalidArgument("digits are indexed from 1");
  if (k <= digits_.size()) return digits_[k - 1];
  if (!tail_) {
    if (terminates_) throw RationalDetected(static_cast<int>(digits_.size()));
    throw InvalidArgument("digit " + std::to_string(k) +
                          " is beyond the listed expansion");
  }
  const std::size_t off = (k - tail_->start) % tail_->period;
  return digits_[tail_->start - 1 + off];
}

std::optional<std::size_t> ContinuedFraction::length() const {
  if (tail_) return std::nullopt;
  return digits_.size();
}

std::vector<std::int64_t> ContinuedFraction::prefix(std::size_t n) const {
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(digit(k));
  return out;
}

double ContinuedFraction::tail_value(std::size_t j) const {
  std::size_t last;
  if (tail_) {
    last = j + 80;  // contraction is at least gamma^2 per digit
  } else {
    last = digits_.size();
    if (j >= last) return 0.0;
  }
  double t = 0.0;
  for (std::size_t k = last; k > j; --k)
    t = 1.0 / (static_cast<double>(digit(k)) + t);
  return t;
}

GaussOrbit gauss_orbit(double x, int n) {
  if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("gauss_orbit needs x in (0,1)");
  if (n < 0) throw InvalidArgument("gauss_orbit needs n >= 0");
  GaussOrbit o;
  double a = x;
  for (int k = 0; k < n; ++k) {
    if (a < kRationalThreshold) throw RationalDetected(k);
    o.alpha.push_back(a);
    const double inv = 1.0 / a;
    const double fl = std::floor(inv);
    o.digits.push_back(static_cast<std::int64_t>(fl));
    a = inv - fl;
  }
  return o;
}

Convergents convergents(const ContinuedFraction& cf, std::size_t n) {
  Convergents c;
  c.p.push_back(0);
  c.q.push_back(1);
  std::int64_t pm = 1, qm = 0;  // index -1
  constexpr std::int64_t lim = std::int64_t(1) << 62;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::int64_t a = cf.digit(k);
    const std::int64_t p0 = c.p.back(), q0 = c.q.back();
    if (a > 0 && (q0 > (lim - qm) / a || p0 > (lim - pm) / a))
      throw InvalidArgument("convergent denominators overflow 64 bits");
    c.p.push_back(a * p0 + pm);
    c.q.push_back(a * q0 + qm);
    pm = p0;
    qm = q0;
  }
  return c;
}

std::vector<std::int64_t> digits_of(std::int64_t p, std::int64_t q) {
  if (q <= 0 || p < 0 || p >= q)
    throw InvalidArgument("digits_of expects 0 <= p < q");
  std::vector<std::int64_t> d;
  while (p != 0) {
    const std::int64_t a = q / p;
    d.push_back(a);
    const std::int64_t r = q - a * p;
    q = p;
    p = r;
  }
  return d;
}

BrjunoValue brjuno(const ContinuedFraction& cf, int depth) {
  if (depth < 1) throw InvalidArgument("brjuno needs depth >= 1");
  if (auto len = cf.length()) {
    if (static_cast<std::size_t>(depth) > *len)
      throw RationalDetected(static_cast<int>(*len));
  }
  double beta = 1.0, sum = 0.0;
  for (int j = 0; j < depth; ++j) {
    const double a = cf.tail_value(static_cast<std::size_t>(j));
    if (a < kRationalThreshold) throw RationalDetected(j);
    sum += beta * std::log(1.0 / a);
    beta *= a;
  }
  double bound = 0.0;
  if (cf.periodic()) {
    const auto& t = *cf.tail();
    double amin = 1.0, amax = 0.0;
    const std::size_t j0 = std::max<std::size_t>(t.start - 1, std::size_t(depth));
    for (std::size_t j = j0; j < j0 + t.period; ++j) {
      const double a = cf.tail_value(j);
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
    // terms before the periodic part starts are bounded digit by digit
    double b = beta;
    for (std::size_t j = depth; j < j0; ++j) {
      const double ak = static_cast<double>(cf.digit(j + 1));
      bound += b * std::log(ak + 1.0);
      b /= ak;
    }
    bound += b * std::log(1.0 / amin) / (1.0 - amax);
  } else {
    // only listed digits are summed: alpha_j <= 1/a_{j+1}, log(1/alpha_j) <= log(a_{j+1}+1)
    const std::size_t len = *cf.length();
    double b = beta;
    for (std::size_t j = depth; j < len; ++j) {
      const double ak = static_cast<double>(cf.digit(j + 1));
      bound += b * std::log(ak + 1.0);
      b /= ak;
    }
  }
  return {sum, depth, bound};
}

static std::size_t census_span(const ContinuedFraction& cf, std::size_t window) {
  if (auto len = cf.length()) return *len;
  const auto& t = *cf.tail();
  return t.start - 1 + t.period + window;
}

double digit_census(const ContinuedFraction& cf, std::int64_t K,
                    std::size_t window) {
  if (window == 0) throw InvalidArgument("census window must be positive");
  const std::size_t n = census_span(cf, window);
  if (window > n) throw InvalidArgument("census window exceeds the digit count");
  std::size_t best = 0;
  for (std::size_t m = 1; m + window - 1 <= n; ++m) {
    std::size_t c = 0;
    for (std::size_t k = m; k < m + window; ++k)
      if (cf.digit(k) < K) ++c;
    best = std::max(best, c);
  }
  return double(best) / double(window);
}

bool is_bounded_type(const ContinuedFraction& cf, std::int64_t bound,
                     std::size_t depth) {
  if (auto len = cf.length())
    if (depth > *len) throw InvalidArgument("depth exceeds the digit count");
  for (std::size_t k = 1; k <= depth; ++k)
    if (cf.digit(k) > bound) return false;
  return true;
}

ContinuedFraction parse_alpha(const std::string& spec) {
  if (spec == "golden") return ContinuedFraction::golden();
  if (spec == "silver") return ContinuedFraction::silver();
  if (spec.rfind("cf:", 0) == 0) {
    std::string body = spec.substr(3);
    std::optional<std::size_t> period;
    if (auto bar = body.find('|'); bar != std::string::npos) {
      try {
        period = std::stoul(body.substr(bar + 1));
      } catch (const std::exception&) {
        throw InvalidArgument("bad period in alpha spec '" + spec + "'");
      }
      body = body.substr(0, bar);
    }
    std::vector<std::int64_t> d;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        d.push_back(v);
      } catch (const std::exception&) {
        throw InvalidArgument("bad digit '" + tok + "' in alpha spec");
      }
    }
    if (d.empty()) throw InvalidArgument("empty digit list in alpha spec");
    if (period) {
      if (*period == 0 || *period > d.size())
        throw InvalidArgument("period longer than the digit list");
      return ContinuedFraction(d, PeriodicTail{d.size() - *period + 1, *period});
    }
    return ContinuedFraction(d);
  }
  double x;
  try {
    std::size_t used = 0;
    x = std::stod(spec, &used);
    if (used != spec.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw InvalidArgument("unrecognized alpha spec '" + spec + "'");
  }
  return ContinuedFraction::from_real(x);
}

}  // namespace circlemap
