#include "carlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "carlab/random.hpp"

namespace carlab {

OverlapReport min_distance_closed_form(const UnitVector& xi, const UnitVector& eta) {
  if (xi.dim() != eta.dim())
    throw InvalidInput("min_distance_closed_form: dimension mismatch");
  OverlapReport r;
  r.overlap = overlap(xi, eta);
  r.abs_overlap = std::min(1.0, std::abs(r.overlap));
  r.closed_form_distance = std::sqrt(2.0 * (1.0 - r.abs_overlap));
  r.exact_constraint_distance = std::sqrt(std::max(0.0, 2.0 * (1.0 - r.overlap.real())));
  return r;
}

namespace {

// Points of the stabilizer are S = lambda |eta><eta| + B V B*, where the
// columns of B span eta's orthogonal complement, V is unitary on that
// complement and lambda is a phase (fixed to 1 under the exact constraint).
struct StabilizerPoint {
  ComplexMatrix v;
  double phase = 0.0;
};

class StabilizerSearch {
public:
  StabilizerSearch(const UnitVector& xi, const UnitVector& eta, Constraint constraint)
      : d_(xi.dim()), with_phase_(constraint == Constraint::state_equality),
        base_(two_plane_unitary(xi, eta)) {
    const ComplexVector& e = eta.values();
    // Householder QR of [eta | I] yields an orthonormal completion of eta.
    ComplexMatrix seed(d_, d_);
    seed.col(0) = e;
    seed.rightCols(d_ - 1) = ComplexMatrix::Identity(d_, d_).leftCols(d_ - 1);
    Eigen::HouseholderQR<ComplexMatrix> qr(seed);
    const ComplexMatrix q = qr.householderQ();
    complement_ = q.rightCols(d_ - 1);
    eta_proj_ = e * e.adjoint();

    // Orthonormal basis of the Hermitian (d-1)x(d-1) matrices.
    const Index m = d_ - 1;
    for (Index i = 0; i < m; ++i) {
      ComplexMatrix h = ComplexMatrix::Zero(m, m);
      h(i, i) = 1.0;
      generators_.push_back(h);
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j) {
        ComplexMatrix re = ComplexMatrix::Zero(m, m);
        re(i, j) = r;
        re(j, i) = r;
        generators_.push_back(re);
        ComplexMatrix im = ComplexMatrix::Zero(m, m);
        im(i, j) = cplx(0.0, r);
        im(j, i) = cplx(0.0, -r);
        generators_.push_back(im);
      }
  }

  Index complement_dim() const { return d_ - 1; }
  bool with_phase() const { return with_phase_; }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

  /// Schatten-2q norm of I - S*base (q = 0 means the operator norm).
  double objective(const StabilizerPoint& p, double q) const {
    const cplx lambda = with_phase_ ? std::polar(1.0, p.phase) : cplx(1.0);
    const ComplexMatrix s = lambda * eta_proj_ + complement_ * p.v * complement_.adjoint();
    const ComplexMatrix defect = ComplexMatrix::Identity(d_, d_) - s * base_;
    if (q == 0.0)
      return operator_norm(defect);
    const ComplexMatrix gram = defect.adjoint() * defect;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd sq = es.eigenvalues().cwiseMax(0.0);
    const double top = sq.maxCoeff();
    if (top == 0.0)
      return 0.0;
    double acc = 0.0;
    for (Index i = 0; i < sq.size(); ++i)
      acc += std::pow(sq(i) / top, q);
    return std::sqrt(top) * std::pow(acc, 0.5 / q);
  }

private:
  Index d_;
  bool with_phase_;
  ComplexMatrix base_;
  ComplexMatrix complement_;
  ComplexMatrix eta_proj_;
  std::vector<ComplexMatrix> generators_;
};

// Chart around a stabilizer point: coordinates (x_1..x_m, x_phase) map to
// (V exp(i sum x_j E_j), phase + x_phase).
StabilizerPoint chart(const StabilizerSearch& search, const StabilizerPoint& center,
                      const Eigen::VectorXd& x) {
  const auto& gens = search.generators();
  const Index m = search.complement_dim();
  ComplexMatrix k = ComplexMatrix::Zero(m, m);
  for (std::size_t j = 0; j < gens.size(); ++j)
    k += x(static_cast<Index>(j)) * gens[j];
  StabilizerPoint out{center.v * unitary_exp(k), center.phase};
  if (search.with_phase())
    out.phase += x(static_cast<Index>(gens.size()));
  return out;
}

} // namespace

OracleResult min_distance_search(const UnitVector& xi, const UnitVector& eta,
                                 Constraint constraint, long budget, std::uint64_t seed) {
  if (xi.dim() != eta.dim())
    throw InvalidInput("min_distance_search: dimension mismatch");
  if (xi.dim() < 2 || xi.dim() > 4)
    throw DomainError("min_distance_search: dimension " + std::to_string(xi.dim()) +
                      " not in {2, 3, 4}");
  if (budget < 1000)
    throw DomainError("min_distance_search: budget must be >= 1000");

  const StabilizerSearch search(xi, eta, constraint);
  const Index k = static_cast<Index>(search.generators().size()) + (search.with_phase() ? 1 : 0);
  Rng rng(seed);
  OracleResult result;
  result.value = std::numeric_limits<double>::infinity();

  constexpr double initial_scale = 0.5;
  constexpr double final_scale = 1e-7;
  auto spent = [&] { return result.evaluations >= budget; };

  while (!spent()) {
    ++result.restarts;
    StabilizerPoint center{rng.haar_unitary(search.complement_dim()),
                           search.with_phase() ? rng.uniform(-std::numbers::pi, std::numbers::pi)
                                               : 0.0};
    double f_center = search.objective(center, 0.0);
    ++result.evaluations;

    // Nelder-Mead rounds in a chart re-centred on the best point found, with
    // the initial simplex shrinking by 10x per round.
    for (double scale = initial_scale; scale >= final_scale && !spent(); scale /= 10) {
      auto f = [&](const Eigen::VectorXd& x) {
        if (spent())
          return std::numeric_limits<double>::infinity();
        ++result.evaluations;
        return search.objective(chart(search, center, x), 0.0);
      };
      std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(k + 1),
                                           Eigen::VectorXd::Zero(k));
      std::vector<double> values(simplex.size());
      values[0] = f_center;
      for (Index i = 0; i < k; ++i) {
        simplex[static_cast<std::size_t>(i + 1)](i) = scale;
        values[static_cast<std::size_t>(i + 1)] = f(simplex[static_cast<std::size_t>(i + 1)]);
      }
      std::vector<std::size_t> order(simplex.size());
      while (!spent()) {
        for (std::size_t i = 0; i < order.size(); ++i)
          order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front(), worst = order.back();
        const std::size_t second = order[order.size() - 2];
        double diameter = 0.0;
        for (const auto& p : simplex)
          diameter = std::max(diameter, (p - simplex[best]).lpNorm<Eigen::Infinity>());
        if (diameter < scale * 1e-3 || values[worst] - values[best] < 1e-15)
          break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (std::size_t i = 0; i < simplex.size(); ++i)
          if (i != worst)
            centroid += simplex[i];
        centroid /= static_cast<double>(k);

        const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
        const double f_reflected = f(reflected);
        if (f_reflected < values[best]) {
          const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
          const double f_expanded = f(expanded);
          if (f_expanded < f_reflected) {
            simplex[worst] = expanded;
            values[worst] = f_expanded;
          } else {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
          }
        } else if (f_reflected < values[second]) {
          simplex[worst] = reflected;
          values[worst] = f_reflected;
        } else {
          const bool outside = f_reflected < values[worst];
          const Eigen::VectorXd contracted =
              outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                      : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
          const double f_contracted = f(contracted);
          if (f_contracted < (outside ? f_reflected : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
          } else {
            for (std::size_t i = 0; i < simplex.size(); ++i) {
              if (i == best)
                continue;
              simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
              values[i] = f(simplex[i]);
            }
          }
        }
      }
      const auto best_it = std::min_element(values.begin(), values.end());
      const std::size_t best = static_cast<std::size_t>(best_it - values.begin());
      if (*best_it < f_center) {
        center = chart(search, center, simplex[best]);
        f_center = *best_it;
      }
    }
    result.value = std::min(result.value, f_center);
  }
  return result;
}

double min_distance_bruteforce(const UnitVector& xi, const UnitVector& eta, long budget,
                               std::uint64_t seed) {
  return min_distance_search(xi, eta, Constraint::exact_vector, budget, seed).value;
}

UnitVector tensor_product(std::span<const UnitVector> factors, const Numerics& numerics) {
  if (factors.empty())
    throw InvalidInput("tensor_product: no factors");
  UnitVector out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    out = kron(out, factors[i], numerics);
  return out;
}

ProductDistance product_min_distance(std::span<const UnitVector> xis,
                                     std::span<const UnitVector> etas,
                                     const Numerics& numerics) {
  if (xis.size() != etas.size() || xis.empty())
    throw InvalidInput("product_min_distance: factor lists must be nonempty and equal length");
  double p = 1.0;
  Index total = 1;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    if (xis[i].dim() != etas[i].dim())
      throw InvalidInput("product_min_distance: factor dimension mismatch");
    if (xis[i].dim() < 2)
      throw InvalidInput("product_min_distance: factor dimension must be >= 2");
    total *= xis[i].dim();
    if (total > numerics.max_dim)
      throw SizeLimitError("product_min_distance: total dimension exceeds cap");
    p *= std::abs(overlap(xis[i], etas[i]));
  }
  p = std::min(p, 1.0);
  ProductDistance out;
  out.product_overlap = p;
  out.constant_one = std::sqrt(2.0 * (1.0 - p));
  out.doubled_constant = 2.0 * out.constant_one;
  return out;
}

} // namespace carlab
