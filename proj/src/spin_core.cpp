#include "ktop/spin_core.hpp"

#include <bit>
#include <cmath>

namespace ktop {

namespace {

constexpr double kNormTolerance = 1e-10;

double squared_norm_error(const Eigen::VectorXcd& v) {
  return std::abs(v.squaredNorm() - 1.0);
}

}  // namespace

double DickeVector::norm_error() const { return squared_norm_error(amplitudes); }

void DickeVector::validate() const {
  if (amplitudes.size() != dim())
    throw InvariantViolation("DickeVector: amplitude count != 2j+1");
  if (norm_error() > kNormTolerance)
    throw InvariantViolation("DickeVector: state not normalized");
}

double RegisterVector::norm_error() const { return squared_norm_error(amplitudes); }

void RegisterVector::validate() const {
  if (n < 1 || n > kMaxRegisterQubits)
    throw InvariantViolation("RegisterVector: qubit count out of range");
  if (amplitudes.size() != dim())
    throw InvariantViolation("RegisterVector: amplitude count != 2^n");
  if (norm_error() > kNormTolerance)
    throw InvariantViolation("RegisterVector: state not normalized");
}

DensityOperator DensityOperator::single_qubit(const Eigen::Matrix2cd& m) {
  return {BasisTag::SingleQubit, 0, m};
}

DensityOperator DensityOperator::register_basis(int n, Eigen::MatrixXcd m) {
  if (m.rows() != (Eigen::Index(1) << n))
    throw std::invalid_argument("DensityOperator: matrix size != 2^n");
  return {BasisTag::Register, n, std::move(m)};
}

DensityOperator DensityOperator::dicke_basis(int twice_j, Eigen::MatrixXcd m) {
  if (m.rows() != twice_j + 1)
    throw std::invalid_argument("DensityOperator: matrix size != 2j+1");
  return {BasisTag::Dicke, twice_j, std::move(m)};
}

DensityOperator DensityOperator::pure(const RegisterVector& psi) {
  return register_basis(psi.n, psi.amplitudes * psi.amplitudes.adjoint());
}

DensityOperator DensityOperator::pure(const DickeVector& psi) {
  return dicke_basis(psi.twice_j, psi.amplitudes * psi.amplitudes.adjoint());
}

void DensityOperator::validate() const {
  if (elements.rows() != elements.cols())
    throw InvariantViolation("DensityOperator: matrix not square");
  if ((elements - elements.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvariantViolation("DensityOperator: not Hermitian");
  if (std::abs(elements.trace().real() - 1.0) > 1e-10 ||
      std::abs(elements.trace().imag()) > 1e-10)
    throw InvariantViolation("DensityOperator: trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(elements,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InvariantViolation("DensityOperator: negative eigenvalue");
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

DickeVector coherent_state_dicke(Spin j, const SphericalDirection& dir) {
  const int tj = j.twice_j;
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(tj + 1);
  const double c = std::cos(dir.theta / 2);
  const double s = std::sin(dir.theta / 2);
  if (s == 0.0) {
    a(0) = 1.0;
  } else if (c == 0.0) {
    a(tj) = std::polar(1.0, -dir.phi * tj);
  } else {
    // log-space magnitudes keep large-j binomials from overflowing
    const double lc = std::log(c), ls = std::log(s);
    for (int k = 0; k <= tj; ++k) {
      const double mag =
          std::exp(0.5 * log_binomial(tj, k) + (tj - k) * lc + k * ls);
      a(k) = std::polar(mag, -dir.phi * k);
    }
    a.normalize();
  }
  return {tj, std::move(a)};
}

RegisterVector coherent_state_register(int n, const SphericalDirection& dir) {
  if (n < 1 || n > kMaxRegisterQubits)
    throw std::invalid_argument("coherent_state_register: n out of range");
  const double c = std::cos(dir.theta / 2);
  const double s = std::sin(dir.theta / 2);
  // amplitude depends only on the Hamming weight
  Eigen::VectorXcd per_weight(n + 1);
  for (int w = 0; w <= n; ++w)
    per_weight(w) = std::pow(c, n - w) * std::polar(std::pow(s, w), -dir.phi * w);
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::VectorXcd a(dim);
  for (std::int64_t b = 0; b < dim; ++b)
    a(b) = per_weight(std::popcount(std::uint64_t(b)));
  const double nrm = a.norm();
  if (nrm > 0) a /= nrm;
  return {n, std::move(a)};
}

Eigen::MatrixXcd collective_operator(Spin j, Axis axis) {
  const int tj = j.twice_j;
  const int dim = tj + 1;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  switch (axis) {
    case Axis::Z:
      for (int k = 0; k < dim; ++k) op(k, k) = j.magnetic_number(k);
      break;
    case Axis::X:
      // J+ |k> = sqrt(k (2j - k + 1)) |k-1>
      for (int k = 1; k < dim; ++k) {
        const double v = 0.5 * std::sqrt(double(k) * (tj - k + 1));
        op(k - 1, k) = v;
        op(k, k - 1) = v;
      }
      break;
    case Axis::Y:
      for (int k = 1; k < dim; ++k) {
        const double v = 0.5 * std::sqrt(double(k) * (tj - k + 1));
        op(k - 1, k) = Complex(0, -v);
        op(k, k - 1) = Complex(0, v);
      }
      break;
  }
  return op;
}

RegisterVector dicke_to_register(const DickeVector& state) {
  const int n = state.twice_j;
  if (n > kMaxRegisterQubits)
    throw std::invalid_argument("dicke_to_register: 2j exceeds register limit");
  Eigen::VectorXcd per_weight(n + 1);
  for (int k = 0; k <= n; ++k)
    per_weight(k) = state.amplitudes(k) * std::exp(-0.5 * log_binomial(n, k));
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::VectorXcd a(dim);
  for (std::int64_t b = 0; b < dim; ++b)
    a(b) = per_weight(std::popcount(std::uint64_t(b)));
  return {n, std::move(a)};
}

SymmetricProjection register_to_dicke(const RegisterVector& state) {
  const int n = state.n;
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n + 1);
  for (std::int64_t b = 0; b < state.dim(); ++b)
    d(std::popcount(std::uint64_t(b))) += state.amplitudes(b);
  for (int k = 0; k <= n; ++k) d(k) *= std::exp(-0.5 * log_binomial(n, k));
  const double projected = d.squaredNorm();
  if (projected < 1e-12)
    throw std::domain_error("state outside symmetric subspace");
  const double residual = std::max(0.0, state.amplitudes.squaredNorm() - projected);
  d /= std::sqrt(projected);
  return {DickeVector{n, std::move(d)}, residual};
}

BlochVector bloch_from_density(const DensityOperator& rho) {
  if (rho.dim() != 2)
    throw std::invalid_argument("bloch_from_density: expected a single qubit");
  const Eigen::MatrixXcd& m = rho.elements;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("bloch_from_density: matrix not Hermitian");
  const Complex off = m(0, 1);
  return {2 * off.real(), -2 * off.imag(), (m(0, 0) - m(1, 1)).real()};
}

}  // namespace ktop
