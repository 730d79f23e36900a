#include "ktop/metrics.hpp"

#include <bit>
#include <cmath>

#include "ktop/parallel.hpp"

namespace ktop {

namespace {

constexpr double kEigenvalueFloor = 1e-15;

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double entropy_from_bloch_length(double r) {
  r = std::min(r, 1.0);
  const double p = 0.5 * (1 + r);
  const double q = 0.5 * (1 - r);
  double s = 0.0;
  if (p > kEigenvalueFloor) s -= p * std::log2(p);
  if (q > kEigenvalueFloor) s -= q * std::log2(q);
  return s;
}

double entanglement_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.elements,
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda < -1e-9)
      throw InvariantViolation("entanglement_entropy: operator not PSD");
    if (lambda > kEigenvalueFloor) s -= lambda * std::log2(lambda);
  }
  return s;
}

double purity(const DensityOperator& rho) {
  // Tr rho^2 equals the squared Frobenius norm for Hermitian rho
  return rho.elements.squaredNorm();
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Eigen::MatrixXcd root = hermitian_sqrt(sigma.elements);
  Eigen::MatrixXcd inner = root * rho.elements * root;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner,
                                                     Eigen::EigenvaluesOnly);
  // roundoff leaves O(eps) eigenvalues in the null space whose square roots
  // would dominate the error budget; clip relative to the largest one
  const double floor = 1e-13 * std::max(0.0, es.eigenvalues().maxCoeff());
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > floor) f += std::sqrt(lambda);
  }
  return std::min(f, 1.0);
}

DensityOperator microcanonical(int n) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("microcanonical: n out of range");
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXd weight(n + 1);
  for (int w = 0; w <= n; ++w)
    weight(w) = std::exp(-log_binomial(n, w)) / (n + 1);
  for (std::int64_t b = 0; b < dim; ++b) {
    const int wb = std::popcount(std::uint64_t(b));
    for (std::int64_t c = 0; c < dim; ++c)
      if (std::popcount(std::uint64_t(c)) == wb) m(b, c) = weight(wb);
  }
  return DensityOperator::register_basis(n, std::move(m));
}

DensityOperator microcanonical_dicke(int n) {
  if (n < 1) throw std::invalid_argument("microcanonical_dicke: n out of range");
  return DensityOperator::dicke_basis(
      n, Eigen::MatrixXcd::Identity(n + 1, n + 1) / (n + 1));
}

namespace {

template <class State>
DensityOperator averaged_projectors(const Trajectory<State>& traj, int upto,
                                    bool include_initial,
                                    DensityOperator (*pure)(const State&)) {
  if (upto < 1 || upto > traj.steps())
    throw std::invalid_argument("time_averaged_density: upto out of range");
  const int first = include_initial ? 0 : 1;
  DensityOperator acc = pure(traj.states[first]);
  for (int k = first + 1; k <= upto; ++k)
    acc.elements += pure(traj.states[k]).elements;
  acc.elements /= double(upto - first + 1);
  return acc;
}

DensityOperator pure_register(const RegisterVector& s) { return DensityOperator::pure(s); }
DensityOperator pure_dicke(const DickeVector& s) { return DensityOperator::pure(s); }

}  // namespace

DensityOperator time_averaged_density(const Trajectory<RegisterVector>& traj,
                                      int upto, bool include_initial) {
  return averaged_projectors(traj, upto, include_initial, &pure_register);
}

DensityOperator time_averaged_density(const Trajectory<DickeVector>& traj,
                                      int upto, bool include_initial) {
  return averaged_projectors(traj, upto, include_initial, &pure_dicke);
}

std::string PauliCorrelations::string_label(std::uint64_t index, int n) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string s(n, 'I');
  for (int q = n - 1; q >= 0; --q) {
    s[q] = kLetters[index & 3u];
    index >>= 2;
  }
  return s;
}

std::uint64_t PauliCorrelations::index_of(const std::string& label) const {
  if (int(label.size()) != n)
    throw std::invalid_argument("PauliCorrelations: label length != n");
  std::uint64_t idx = 0;
  for (char c : label) {
    idx <<= 2;
    switch (c) {
      case 'I': break;
      case 'X': idx |= 1; break;
      case 'Y': idx |= 2; break;
      case 'Z': idx |= 3; break;
      default: throw std::invalid_argument("PauliCorrelations: bad label");
    }
  }
  return idx;
}

double PauliCorrelations::operator[](const std::string& label) const {
  return values(Eigen::Index(index_of(label)));
}

PauliCorrelations pauli_correlations(const DensityOperator& rho) {
  if (rho.basis != BasisTag::Register)
    throw std::invalid_argument("pauli_correlations: register basis required");
  const int n = rho.label;
  if (n > 8) throw std::invalid_argument("pauli_correlations: n exceeds 8");
  const std::uint64_t strings = std::uint64_t(1) << (2 * n);
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::VectorXd values(strings);
  parallel_for(strings, [&](std::size_t p) {
    // per qubit: I,Z leave the basis state; X,Y flip it with a phase
    std::uint64_t flip = 0;
    int letters[32];
    std::uint64_t rest = p;
    for (int q = n - 1; q >= 0; --q) {
      letters[q] = int(rest & 3u);
      rest >>= 2;
      if (letters[q] == 1 || letters[q] == 2) flip |= std::uint64_t(1) << (n - 1 - q);
    }
    Complex sum = 0.0;
    for (std::int64_t b = 0; b < dim; ++b) {
      Complex coeff = 1.0;
      for (int q = 0; q < n; ++q) {
        const int bit = bit_of(std::uint64_t(b), q, n);
        switch (letters[q]) {
          case 0: break;
          case 1: break;                                      // X
          case 2: coeff *= bit ? Complex(0, -1) : Complex(0, 1); break;  // Y
          case 3: if (bit) coeff = -coeff; break;             // Z
        }
      }
      sum += coeff * rho.elements(b, std::int64_t(std::uint64_t(b) ^ flip));
    }
    values(p) = sum.real();
  });
  return {n, std::move(values)};
}

OverlapSeries ergodicity_overlap_series(const SphericalDirection& initial,
                                        const FloquetParameters& p, int n,
                                        int n_max, bool include_initial) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("ergodicity_overlap_series: n out of range");
  if (n_max < 1)
    throw std::invalid_argument("ergodicity_overlap_series: n_max must be >= 1");
  const DensityOperator mc = microcanonical_dicke(n);
  DickeVector state = coherent_state_dicke(Spin::of_qubits(n), initial);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  int count = 0;
  if (include_initial) {
    acc += state.amplitudes * state.amplitudes.adjoint();
    ++count;
  }
  OverlapSeries series{p, initial, include_initial, {}};
  series.overlaps.reserve(n_max);
  for (int step = 1; step <= n_max; ++step) {
    state = step_dicke(state, p);
    acc += state.amplitudes * state.amplitudes.adjoint();
    ++count;
    series.overlaps.push_back(
        fidelity(DensityOperator::dicke_basis(n, acc / count), mc));
  }
  return series;
}

}  // namespace ktop
