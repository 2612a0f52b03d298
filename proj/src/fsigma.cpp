#include "carlab/fsigma.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_set>

#include "carlab/random.hpp"

namespace carlab {

const char* to_string(NetKind k) {
  return k == NetKind::exhaustive ? "exhaustive" : "random";
}

namespace {

// Coordinates: d real diagonal entries, then (re, im) of each upper
// off-diagonal entry.  A per-coordinate rounding error of h/2 moves H by at
// most h * sqrt(d/4 + d(d-1)/2) in Frobenius norm.
double grid_spacing(Index d, double epsilon) {
  const double dd = static_cast<double>(d);
  return epsilon / std::sqrt(dd / 4 + dd * (dd - 1) / 2);
}

int grid_radius(double h) {
  return static_cast<int>(std::floor(std::numbers::pi / h)) + 1;
}

void check_net_args(TruncationLevel level, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw DomainError("net resolution must lie in (0, 1]");
  if (level.n() > 4)
    throw DomainError("exhaustive nets are limited to level <= 4");
}

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& key) const {
    std::size_t h = 0;
    for (long long k : key)
      h ^= std::hash<long long>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<long long> rounded_key(const ComplexMatrix& u) {
  std::vector<long long> key;
  key.reserve(static_cast<std::size_t>(2 * u.size()));
  for (Index j = 0; j < u.cols(); ++j)
    for (Index i = 0; i < u.rows(); ++i) {
      key.push_back(std::llround(u(i, j).real() * 1e9));
      key.push_back(std::llround(u(i, j).imag() * 1e9));
    }
  return key;
}

} // namespace

double estimated_net_cardinality(TruncationLevel level, double epsilon) {
  check_net_args(level, epsilon);
  const Index d = level.dim();
  const double per_axis = 2.0 * grid_radius(grid_spacing(d, epsilon)) + 1.0;
  return std::pow(per_axis, static_cast<double>(d * d));
}

UnitaryNet enumerate_net(TruncationLevel level, double epsilon, double max_candidates) {
  const double estimate = estimated_net_cardinality(level, epsilon);
  if (estimate > max_candidates)
  {
    std::ostringstream msg;
    msg << std::setprecision(3) << "exhaustive net at level " << level.n() << " and resolution "
        << epsilon << " needs about " << estimate << " grid points (limit " << max_candidates
        << ")";
    throw SizeLimitError(msg.str());
  }
  const Index d = level.dim();
  const double h = grid_spacing(d, epsilon);
  const int radius = grid_radius(h);
  const std::size_t coords = static_cast<std::size_t>(d * d);

  // Per-coordinate visiting order 0, 1, -1, 2, -2, ... puts the identity first.
  std::vector<int> axis{0};
  for (int r = 1; r <= radius; ++r) {
    axis.push_back(r);
    axis.push_back(-r);
  }

  UnitaryNet net;
  net.level = level;
  net.resolution = epsilon;
  net.kind = NetKind::exhaustive;
  net.grid_spacing = h;

  std::unordered_set<std::vector<long long>, KeyHash> seen;
  std::vector<std::size_t> digits(coords, 0);
  const double norm_cap = std::numbers::pi + epsilon;
  for (;;) {
    ComplexMatrix hm = ComplexMatrix::Zero(d, d);
    std::size_t at = 0;
    for (Index i = 0; i < d; ++i)
      hm(i, i) = h * axis[digits[at++]];
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j) {
        const cplx z(h * axis[digits[at]], h * axis[digits[at + 1]]);
        at += 2;
        hm(i, j) = z;
        hm(j, i) = std::conj(z);
      }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hm);
    if (es.eigenvalues().cwiseAbs().maxCoeff() <= norm_cap) {
      const Eigen::VectorXcd phases =
          es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
      ComplexMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      if (seen.insert(rounded_key(u)).second)
        net.elements.push_back(std::move(u));
    }
    // Odometer over the coordinates, last coordinate fastest.
    std::size_t c = coords;
    while (c > 0) {
      --c;
      if (++digits[c] < axis.size())
        break;
      digits[c] = 0;
      if (c == 0) {
        c = coords; // wrapped around completely
        break;
      }
    }
    if (c == coords)
      break;
  }
  return net;
}

UnitaryNet random_net(TruncationLevel level, double nominal_resolution, std::size_t size,
                      std::uint64_t seed) {
  if (size < 1)
    throw InvalidInput("random_net: size must be >= 1");
  UnitaryNet net;
  net.level = level;
  net.resolution = nominal_resolution;
  net.kind = NetKind::random;
  const Index d = level.dim();
  net.elements.reserve(size);
  net.elements.push_back(ComplexMatrix::Identity(d, d));
  Rng rng(seed);
  while (net.elements.size() < size)
    net.elements.push_back(rng.haar_unitary(d));
  return net;
}

DensityReport net_density(const UnitaryNet& net, std::size_t samples, std::uint64_t seed) {
  if (net.elements.empty())
    throw InvalidInput("net_density: empty net");
  Rng rng(seed);
  const Index d = net.level.dim();
  const double root_d = std::sqrt(static_cast<double>(d));
  DensityReport r{samples, 0.0, 0.0};
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexMatrix target = rng.haar_unitary(d);
    double best = std::numeric_limits<double>::infinity();
    for (const ComplexMatrix& u : net.elements) {
      const ComplexMatrix diff = u - target;
      // ||A|| >= ||A||_F / sqrt(d): skip the eigen-solve when it cannot win.
      if (diff.norm() / root_d >= best)
        continue;
      best = std::min(best, operator_norm(diff));
    }
    r.max_nearest = std::max(r.max_nearest, best);
    r.mean_nearest += best;
  }
  if (samples > 0)
    r.mean_nearest /= static_cast<double>(samples);
  return r;
}

TestElementNet::TestElementNet(TruncationLevel level, std::vector<ComplexMatrix> elements)
    : level_(level), elements_(std::move(elements)) {
  for (const ComplexMatrix& a : elements_) {
    if (a.rows() != level_.dim() || a.cols() != level_.dim())
      throw InvalidInput("test element has the wrong dimension");
    if (operator_norm(a) > 1.0 + 1e-9)
      throw InvalidInput("test element is not a contraction");
  }
}

TestElementNet TestElementNet::standard(TruncationLevel level, std::uint64_t seed,
                                        int random_count) {
  Rng rng(seed);
  const Index d = level.dim();
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < random_count; ++i)
    out.push_back(rng.hermitian_contraction(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
  return TestElementNet(level, std::move(out));
}

std::optional<Witness> witness_search(const VectorState& phi, const VectorState& psi,
                                      const UnitaryNet& net, const TestElementNet& tests) {
  if (!(phi.level() == psi.level()) || !(phi.level() == net.level) ||
      !(phi.level() == tests.level()))
    throw InvalidInput("witness_search: states, net and test elements must share a level");
  for (std::size_t i = 0; i < net.elements.size(); ++i) {
    const double gap = sup_gap_unchecked(phi, psi, net.elements[i], tests.elements());
    if (gap < witness_threshold)
      return Witness{i, net.elements[i], gap};
  }
  return std::nullopt;
}

DistanceCheck distance_bound_check(const VectorState& phi, const VectorState& psi,
                                   const ComplexMatrix& u, const Numerics& numerics) {
  const double distance = state_distance(phi, pullback(psi, u, numerics));
  return {distance, distance < 2.0 - 1e-9};
}

ComplexMatrix perturb_unitary(const ComplexMatrix& v, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0 && delta < 2.0))
    throw DomainError("perturb_unitary: delta must lie in [0, 2)");
  check_square(v);
  Rng rng(seed);
  ComplexMatrix k = rng.hermitian_contraction(v.rows());
  const double top = operator_norm(k);
  if (top == 0.0 || delta == 0.0)
    return v;
  // ||I - exp(iK)|| = 2 sin(max|lambda| / 2) for max|lambda| <= pi.
  k *= 2.0 * std::asin(delta / 2.0) / top;
  return v * unitary_exp(k);
}

} // namespace carlab
