#include "ktop/floquet.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

namespace ktop {

void FloquetParameters::validate() const {
  if (!std::isfinite(kappa))
    throw std::invalid_argument("FloquetParameters: kappa must be finite");
  if (!std::isfinite(rotation_angle))
    throw std::invalid_argument("FloquetParameters: rotation angle must be finite");
}

Eigen::VectorXcd twist_phases(Spin j, double kappa) {
  const int dim = j.dim();
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j.magnetic_number(k);
    phases(k) = std::polar(1.0, -kappa * m * m / (2 * j.j()));
  }
  return phases;
}

const Eigen::MatrixXcd& kick_rotation_dicke(Spin j, double angle) {
  if (j.twice_j > 1024)
    throw std::invalid_argument("kick_rotation_dicke: j exceeds 512");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, Eigen::MatrixXcd> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({j.twice_j, angle});
  if (it != cache.end()) return it->second;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(collective_operator(j, Axis::Y));
  const Eigen::VectorXd& ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    phases(i) = std::polar(1.0, -angle * ev(i));
  Eigen::MatrixXcd u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return cache.emplace(std::make_pair(j.twice_j, angle), std::move(u))
      .first->second;
}

DickeVector apply_rotation(const DickeVector& state, double angle) {
  return {state.twice_j, kick_rotation_dicke(state.spin(), angle) * state.amplitudes};
}

DickeVector apply_twist(const DickeVector& state, double kappa) {
  return {state.twice_j,
          twist_phases(state.spin(), kappa).cwiseProduct(state.amplitudes)};
}

RegisterVector apply_rotation(const RegisterVector& state, double angle) {
  // exp(-i angle/2 sigma_y) on every qubit, swept in place
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  Eigen::VectorXcd a = state.amplitudes;
  const std::int64_t dim = state.dim();
  for (int q = 0; q < state.n; ++q) {
    const std::int64_t stride = std::int64_t(1) << q;
    for (std::int64_t base = 0; base < dim; base += 2 * stride) {
      for (std::int64_t offset = 0; offset < stride; ++offset) {
        const std::int64_t b0 = base + offset;
        const Complex a0 = a(b0);
        const Complex a1 = a(b0 + stride);
        a(b0) = c * a0 - s * a1;
        a(b0 + stride) = s * a0 + c * a1;
      }
    }
  }
  return {state.n, std::move(a)};
}

RegisterVector apply_twist(const RegisterVector& state, double kappa) {
  const int n = state.n;
  const double j = 0.5 * n;
  Eigen::VectorXcd per_weight(n + 1);
  for (int w = 0; w <= n; ++w) {
    const double m = j - w;
    per_weight(w) = std::polar(1.0, -kappa * m * m / (2 * j));
  }
  Eigen::VectorXcd a = state.amplitudes;
  for (std::int64_t b = 0; b < state.dim(); ++b)
    a(b) *= per_weight(std::popcount(std::uint64_t(b)));
  return {n, std::move(a)};
}

DickeVector step_dicke(const DickeVector& state, const FloquetParameters& p) {
  return apply_twist(apply_rotation(state, p.rotation_angle), p.kappa);
}

RegisterVector step_register(const RegisterVector& state, const FloquetParameters& p) {
  return apply_twist(apply_rotation(state, p.rotation_angle), p.kappa);
}

DensityOperator single_qubit_rdm_register(const RegisterVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n)
    throw std::invalid_argument("single_qubit_rdm_register: qubit out of range");
  const std::int64_t stride = std::int64_t(1) << (state.n - 1 - qubit);
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const auto& a = state.amplitudes;
  for (std::int64_t b = 0; b < state.dim(); ++b) {
    if (b & stride) continue;  // visit each pair once via its bit=0 member
    const Complex a0 = a(b);
    const Complex a1 = a(b | stride);
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 1) += a1 * std::conj(a1);
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return DensityOperator::single_qubit(rho);
}

BlochVector collective_bloch(const DickeVector& state) {
  const int tj = state.twice_j;
  const auto& a = state.amplitudes;
  Complex j_plus = 0.0;
  double j_z = 0.0;
  for (int k = 0; k <= tj; ++k) {
    j_z += state.spin().magnetic_number(k) * std::norm(a(k));
    if (k >= 1)
      j_plus += std::conj(a(k - 1)) * std::sqrt(double(k) * (tj - k + 1)) * a(k);
  }
  const double j = 0.5 * tj;
  return {j_plus.real() / j, j_plus.imag() / j, j_z / j};
}

DensityOperator single_qubit_rdm_dicke(const DickeVector& state) {
  const BlochVector r = collective_bloch(state);
  Eigen::Matrix2cd rho;
  rho << 0.5 * (1 + r.z), 0.5 * Complex(r.x, -r.y),
         0.5 * Complex(r.x, r.y), 0.5 * (1 - r.z);
  return DensityOperator::single_qubit(rho);
}

}  // namespace ktop
