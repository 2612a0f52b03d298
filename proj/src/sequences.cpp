#include "carlab/sequences.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "carlab/errors.hpp"
#include "carlab/random.hpp"

namespace carlab {

namespace {

constexpr double half_pi = std::numbers::pi / 2;

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw InvalidInput("cannot parse " + what + " '" + text + "'");
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput("cannot parse seed '" + text + "'");
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_pair(const AngleSequence& alpha, const AngleSequence& beta) {
  if (alpha.size() != beta.size())
    throw InvalidInput("angle sequences have different lengths (" +
                       std::to_string(alpha.size()) + " vs " + std::to_string(beta.size()) +
                       ")");
}

} // namespace

AngleSequence::AngleSequence(std::vector<double> values, std::string tag)
    : values_(std::move(values)), tag_(std::move(tag)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] > -half_pi && values_[i] < half_pi))
      throw DomainError("angle " + std::to_string(i + 1) + " = " + std::to_string(values_[i]) +
                        " outside (-pi/2, pi/2)");
}

AngleSequence AngleSequence::prefix(std::size_t n) const {
  if (n > values_.size())
    throw InvalidInput("prefix longer than sequence");
  return AngleSequence(std::vector<double>(values_.begin(), values_.begin() + n), tag_);
}

AngleSequence AngleSequence::from_descriptor(const std::string& descriptor, std::size_t length) {
  std::vector<double> v;
  v.reserve(length);
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);

  if (head == "zero" && rest.empty()) {
    v.assign(length, 0.0);
  } else if (head == "harmonic" && rest.empty()) {
    for (std::size_t n = 1; n <= length; ++n)
      v.push_back(1.0 / static_cast<double>(n));
  } else if (head == "invsqrt" && rest.empty()) {
    for (std::size_t n = 1; n <= length; ++n)
      v.push_back(1.0 / std::sqrt(static_cast<double>(n)));
  } else if (head == "power" && !rest.empty()) {
    const double p = parse_double(rest, "exponent");
    for (std::size_t n = 1; n <= length; ++n)
      v.push_back(std::pow(static_cast<double>(n), -p));
  } else if (head == "random") {
    const auto second = rest.find(':');
    if (second == std::string::npos)
      throw InvalidInput("random descriptor must be random:<scale>:<seed>");
    const double scale = parse_double(rest.substr(0, second), "scale");
    const std::uint64_t seed = parse_seed(rest.substr(second + 1));
    if (!(scale > 0.0 && scale < half_pi))
      throw DomainError("random scale must lie in (0, pi/2)");
    Rng rng(seed);
    for (std::size_t n = 0; n < length; ++n)
      v.push_back(rng.uniform(-scale, scale));
  } else if (head == "file" && !rest.empty()) {
    std::vector<double> all = read_sequence_file(rest);
    if (length > all.size())
      throw InvalidInput("sequence file " + rest + " has " + std::to_string(all.size()) +
                         " terms, " + std::to_string(length) + " requested");
    all.resize(length);
    v = std::move(all);
  } else {
    throw InvalidInput("unknown sequence descriptor '" + descriptor + "'");
  }
  return AngleSequence(std::move(v), descriptor);
}

std::vector<double> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open sequence file " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    out.push_back(parse_double(line, "angle"));
  }
  if (in.bad())
    throw IoError("error reading sequence file " + path);
  return out;
}

void write_sequence_file(const std::string& path, std::span<const double> values) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write sequence file " + path);
  out << std::setprecision(17);
  for (double v : values)
    out << v << '\n';
  if (!out)
    throw IoError("error writing sequence file " + path);
}

std::vector<double> l2_partial_sums(const AngleSequence& alpha, const AngleSequence& beta) {
  check_pair(alpha, beta);
  std::vector<double> out(alpha.size());
  double s = 0.0;
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    const double d = alpha[n] - beta[n];
    s += d * d;
    out[n] = s;
  }
  return out;
}

std::vector<double> half_angle_partial_sums(const AngleSequence& alpha,
                                            const AngleSequence& beta) {
  check_pair(alpha, beta);
  std::vector<double> out(alpha.size());
  double s = 0.0;
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    const double h = std::sin((alpha[n] - beta[n]) / 2);
    s += h * h;
    out[n] = s;
  }
  return out;
}

namespace {

// Running product in log space: sign and log|P|.
class LogProduct {
public:
  void multiply(double t) {
    if (t == 0.0) {
      zero_ = true;
      return;
    }
    if (t < 0.0)
      negative_ = !negative_;
    log_abs_ += std::log(std::abs(t));
  }
  double value() const {
    if (zero_)
      return 0.0;
    const double m = std::exp(log_abs_);
    return negative_ ? -m : m;
  }

private:
  double log_abs_ = 0.0;
  bool negative_ = false;
  bool zero_ = false;
};

} // namespace

std::vector<double> overlap_partial_products(const AngleSequence& alpha,
                                             const AngleSequence& beta, std::size_t from,
                                             std::size_t to) {
  check_pair(alpha, beta);
  if (from < 1 || to < from || to > alpha.size())
    throw InvalidInput("overlap_partial_products: index range [" + std::to_string(from) + ", " +
                       std::to_string(to) + "] invalid for length " +
                       std::to_string(alpha.size()));
  std::vector<double> out;
  out.reserve(to - from + 1);
  LogProduct p;
  for (std::size_t j = from; j <= to; ++j) {
    p.multiply(std::cos(alpha[j - 1] - beta[j - 1]));
    out.push_back(p.value());
  }
  return out;
}

std::vector<double> partial_products(std::span<const double> factors) {
  std::vector<double> out;
  out.reserve(factors.size());
  LogProduct p;
  for (double t : factors) {
    p.multiply(t);
    out.push_back(p.value());
  }
  return out;
}

ProductBounds weierstrass_bounds(std::span<const double> defects) {
  double sum = 0.0;
  for (double a : defects) {
    if (!(a >= 0.0 && a <= 1.0))
      throw DomainError("weierstrass_bounds: defects must lie in [0, 1]");
    sum += a;
  }
  return {1.0 - sum, std::exp(-sum)};
}

const char* to_string(Trend t) {
  switch (t) {
  case Trend::equivalent: return "equivalent-trend";
  case Trend::inequivalent: return "inequivalent-trend";
  case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PairDiagnostics classify_pair(const AngleSequence& alpha, const AngleSequence& beta,
                              const WindowPolicy& policy) {
  check_pair(alpha, beta);
  const std::size_t len = alpha.size();
  if (len < policy.min_length || len == 0)
    throw InvalidInput("classify_pair: length " + std::to_string(len) + " below minimum " +
                       std::to_string(policy.min_length));
  const auto sums = l2_partial_sums(alpha, beta);
  const auto half = half_angle_partial_sums(alpha, beta);
  const auto products = overlap_partial_products(alpha, beta, 1, len);

  const std::size_t window = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(policy.tail_fraction * static_cast<double>(len))), 1,
      len - 1);
  const std::size_t before = len - 1 - window;

  PairDiagnostics d;
  d.length = len;
  d.l2_sum = sums.back();
  d.l2_tail_growth = sums.back() - sums[before];
  d.half_angle_sum = half.back();
  d.half_angle_tail_growth = half.back() - half[before];
  d.product = products.back();

  // sin^2(theta/2) ~ theta^2 / 4.
  const double half_epsilon = policy.sum_epsilon / 4;
  const bool sums_settle =
      d.l2_tail_growth < policy.sum_epsilon && d.half_angle_tail_growth < half_epsilon;
  const bool sums_grow =
      d.l2_tail_growth > policy.sum_epsilon && d.half_angle_tail_growth > half_epsilon;
  const double p = std::abs(d.product);
  if (sums_settle && p > policy.product_delta)
    d.trend = Trend::equivalent;
  else if (sums_grow && p < policy.product_delta)
    d.trend = Trend::inequivalent;
  else
    d.trend = Trend::inconclusive;
  return d;
}

} // namespace carlab
