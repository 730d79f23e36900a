#include "ktop/open_system.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ktop/metrics.hpp"

namespace ktop {

NoiseParameters NoiseParameters::uniform(double t1, double tphi,
                                         double rotation_ns,
                                         double interaction_ns) {
  NoiseParameters p;
  p.t1_ns = {t1};
  p.tphi_ns = {tphi};
  p.rotation_duration_ns = rotation_ns;
  p.interaction_duration_ns = interaction_ns;
  return p;
}

NoiseParameters NoiseParameters::disabled() {
  return uniform(std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), 20.0, 25.0);
}

double NoiseParameters::t1_for(int qubit) const {
  return t1_ns.size() == 1 ? t1_ns[0] : t1_ns.at(std::size_t(qubit));
}

double NoiseParameters::tphi_for(int qubit) const {
  return tphi_ns.size() == 1 ? tphi_ns[0] : tphi_ns.at(std::size_t(qubit));
}

bool NoiseParameters::enabled() const {
  for (double t : t1_ns)
    if (std::isfinite(t)) return true;
  for (double t : tphi_ns)
    if (std::isfinite(t)) return true;
  return false;
}

void NoiseParameters::validate(int n) const {
  auto check_times = [n](const std::vector<double>& ts, const char* what) {
    if (ts.size() != 1 && ts.size() != std::size_t(n))
      throw std::invalid_argument(std::string("NoiseParameters: ") + what +
                                  " needs 1 or n entries");
    for (double t : ts)
      if (!(t > 0))  // +inf allowed, NaN and non-positive rejected
        throw std::invalid_argument(std::string("NoiseParameters: ") + what +
                                    " must be positive");
  };
  check_times(t1_ns, "t1");
  check_times(tphi_ns, "tphi");
  if (!(rotation_duration_ns > 0) || !(interaction_duration_ns > 0))
    throw std::invalid_argument("NoiseParameters: durations must be positive");
}

double kappa_from_pulse(double g_rad_per_s, double t_s) {
  if (t_s < 0) throw std::invalid_argument("kappa_from_pulse: negative duration");
  return 3.0 * g_rad_per_s * t_s;
}

namespace {

// Kraus pairs acting on the (i, i') block structure of one qubit:
// amplitude damping K0 = diag(1, sqrt(1-g)), K1 = sqrt(g)|0><1|;
// phase damping    K0 = diag(1, sqrt(1-l)), K1 = diag(0, sqrt(l)).
void damp_qubit(Eigen::MatrixXcd& rho, int n, int qubit, double gamma,
                double lambda) {
  const std::int64_t dim = rho.rows();
  const std::int64_t stride = std::int64_t(1) << (n - 1 - qubit);
  const double s_ad = std::sqrt(1.0 - gamma);
  const double s_pd = std::sqrt(1.0 - lambda);
  const double off_scale = s_ad * s_pd;
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & stride) continue;
    const std::int64_t b1 = b | stride;
    for (std::int64_t c = 0; c < dim; ++c) {
      if (c & stride) continue;
      const std::int64_t c1 = c | stride;
      const Complex r11 = rho(b1, c1);
      rho(b, c) += gamma * r11;
      rho(b1, c1) = (1.0 - gamma) * r11;
      rho(b, c1) *= off_scale;
      rho(b1, c) *= off_scale;
    }
  }
}

}  // namespace

DensityOperator apply_channels(const DensityOperator& rho,
                               const NoiseParameters& noise,
                               double duration_ns) {
  if (rho.basis != BasisTag::Register)
    throw std::invalid_argument("apply_channels: register basis required");
  const int n = rho.label;
  if (n > 7) throw std::invalid_argument("apply_channels: n exceeds 7");
  noise.validate(n);
  if (duration_ns < 0)
    throw std::invalid_argument("apply_channels: negative duration");
  DensityOperator out = rho;
  for (int q = 0; q < n; ++q) {
    const double gamma = 1.0 - std::exp(-duration_ns / noise.t1_for(q));
    const double lambda = 1.0 - std::exp(-2.0 * duration_ns / noise.tphi_for(q));
    damp_qubit(out.elements, n, q, gamma, lambda);
  }
  return out;
}

namespace {

Eigen::MatrixXcd dense_step_unitary(int n, const FloquetParameters& p) {
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(b) = 1.0;
    u.col(b) = step_register({n, std::move(e)}, p).amplitudes;
  }
  return u;
}

}  // namespace

std::vector<DensityOperator> noisy_evolve(const SphericalDirection& initial,
                                          int n, const FloquetParameters& p,
                                          const NoiseParameters& noise,
                                          int steps) {
  if (n < 1 || n > 7) throw std::invalid_argument("noisy_evolve: n out of range");
  if (steps < 0) throw std::invalid_argument("noisy_evolve: steps must be >= 0");
  p.validate();
  noise.validate(n);
  const Eigen::MatrixXcd u = dense_step_unitary(n, p);
  DensityOperator rho = DensityOperator::pure(coherent_state_register(n, initial));
  std::vector<DensityOperator> out;
  out.reserve(std::size_t(steps));
  for (int k = 0; k < steps; ++k) {
    rho.elements = u * rho.elements * u.adjoint();
    rho = apply_channels(rho, noise, noise.step_duration_ns());
    out.push_back(rho);
  }
  return out;
}

Eigen::Matrix2cd tomography_rotation_matrix(TomographyRotation r) {
  const double c = std::sqrt(0.5);
  Eigen::Matrix2cd m;
  switch (r) {
    case TomographyRotation::I:
      m = Eigen::Matrix2cd::Identity();
      break;
    case TomographyRotation::XHalfPi:  // exp(-i pi/4 sigma_x)
      m << c, Complex(0, -c), Complex(0, -c), c;
      break;
    case TomographyRotation::YHalfPi:  // exp(-i pi/4 sigma_y)
      m << c, -c, c, c;
      break;
    case TomographyRotation::XPi:  // exp(-i pi/2 sigma_x) = -i sigma_x
      m << 0, Complex(0, -1), Complex(0, -1), 0;
      break;
  }
  return m;
}

std::string tomography_rotation_name(TomographyRotation r) {
  switch (r) {
    case TomographyRotation::I: return "I";
    case TomographyRotation::XHalfPi: return "Xpi2";
    case TomographyRotation::YHalfPi: return "Ypi2";
    case TomographyRotation::XPi: return "Xpi";
  }
  return "?";
}

std::string TomographySetting::name() const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += tomography_rotation_name(labels[i]);
  }
  return out;
}

Eigen::MatrixXcd TomographySetting::unitary() const {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Ones(1, 1);
  for (TomographyRotation r : labels) {
    const Eigen::Matrix2cd m = tomography_rotation_matrix(r);
    Eigen::MatrixXcd next(u.rows() * 2, u.cols() * 2);
    next << m(0, 0) * u, m(0, 1) * u, m(1, 0) * u, m(1, 1) * u;
    u = std::move(next);
  }
  return u;
}

std::vector<TomographySetting> tomography_settings(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("tomography_settings: n out of range");
  const std::uint64_t total = std::uint64_t(1) << (2 * n);
  std::vector<TomographySetting> out;
  out.reserve(total);
  for (std::uint64_t s = 0; s < total; ++s) {
    TomographySetting setting;
    setting.labels.resize(std::size_t(n));
    std::uint64_t rest = s;
    for (int q = n - 1; q >= 0; --q) {
      setting.labels[std::size_t(q)] = TomographyRotation(rest & 3u);
      rest >>= 2;
    }
    out.push_back(std::move(setting));
  }
  return out;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd outcome_probabilities(const DensityOperator& rho,
                                      const TomographySetting& setting) {
  const Eigen::MatrixXcd u = setting.unitary();
  Eigen::VectorXd probs = (u * rho.elements * u.adjoint()).diagonal().real();
  probs = probs.cwiseMax(0.0);
  const double total = probs.sum();
  if (total > 0) probs /= total;
  return probs;
}

}  // namespace

std::vector<CountRecord> simulate_counts(
    const DensityOperator& rho, const std::vector<TomographySetting>& settings,
    std::uint64_t shots, std::uint64_t seed) {
  if (rho.basis != BasisTag::Register)
    throw std::invalid_argument("simulate_counts: register basis required");
  if (shots < 1) throw std::invalid_argument("simulate_counts: shots must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<CountRecord> records;
  records.reserve(settings.size());
  for (const TomographySetting& setting : settings) {
    if (setting.qubits() != rho.label)
      throw std::invalid_argument("simulate_counts: setting size mismatch");
    const Eigen::VectorXd probs = outcome_probabilities(rho, setting);
    Eigen::VectorXd cdf(probs.size());
    double run = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      run += probs(i);
      cdf(i) = run;
    }
    CountRecord record{setting, shots, std::vector<std::uint64_t>(probs.size(), 0)};
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
      const double r = uniform01(rng) * run;
      Eigen::Index lo = 0, hi = cdf.size() - 1;
      while (lo < hi) {
        const Eigen::Index mid = (lo + hi) / 2;
        if (cdf(mid) > r) hi = mid; else lo = mid + 1;
      }
      ++record.counts[std::size_t(lo)];
    }
    records.push_back(std::move(record));
  }
  return records;
}

namespace {

struct MleProblem {
  int n = 0;
  std::vector<Eigen::MatrixXcd> povm;   // E_{s,b} = U_s^dag |b><b| U_s
  std::vector<double> frequency;  // normalized to sum 1 across all records
};

MleProblem build_problem(const std::vector<TomographySetting>& settings,
                         const std::vector<Eigen::VectorXd>& weights) {
  if (settings.empty() || settings.size() != weights.size())
    throw std::invalid_argument("mle_reconstruct: empty or mismatched records");
  MleProblem prob;
  prob.n = settings.front().qubits();
  const std::int64_t dim = std::int64_t(1) << prob.n;
  double total = 0.0;
  for (std::size_t s = 0; s < settings.size(); ++s) {
    if (settings[s].qubits() != prob.n || weights[s].size() != dim)
      throw std::invalid_argument("mle_reconstruct: inconsistent record shapes");
    const Eigen::MatrixXcd u = settings[s].unitary();
    for (std::int64_t b = 0; b < dim; ++b) {
      const Eigen::VectorXcd row = u.row(b).adjoint();  // U^dag e_b
      prob.povm.push_back(row * row.adjoint());
      prob.frequency.push_back(weights[s](b));
      total += weights[s](b);
    }
  }
  if (!(total > 0)) throw std::invalid_argument("mle_reconstruct: no counts");
  for (double& f : prob.frequency) f /= total;
  return prob;
}

void require_informationally_complete(const MleProblem& prob) {
  const std::int64_t dim = std::int64_t(1) << prob.n;
  const std::int64_t vec_dim = dim * dim;
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(vec_dim, vec_dim);
  for (const Eigen::MatrixXcd& e : prob.povm) {
    const Eigen::Map<const Eigen::VectorXcd> v(e.data(), vec_dim);
    frame.noalias() += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame,
                                                     Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (top <= 0 || es.eigenvalues().minCoeff() < top * 1e-10)
    throw std::invalid_argument("tomographically incomplete");
}

DensityOperator run_mle(const MleProblem& prob) {
  require_informationally_complete(prob);
  const std::int64_t dim = std::int64_t(1) << prob.n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) / double(dim);
  constexpr int kMaxIterations = 10000;
  constexpr double kUpdateTolerance = 1e-10;
  constexpr double kProbabilityFloor = 1e-12;
  double last_loglik = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::MatrixXcd r_op = Eigen::MatrixXcd::Zero(dim, dim);
    double loglik = 0.0;
    for (std::size_t i = 0; i < prob.povm.size(); ++i) {
      const double f = prob.frequency[i];
      const double p = std::max(
          (prob.povm[i].cwiseProduct(rho.transpose())).sum().real(),
          kProbabilityFloor);
      if (f > 0) loglik += f * std::log(p);
      r_op.noalias() += (f / p) * prob.povm[i];
    }
    if (loglik + 1e-9 * std::abs(loglik) + 1e-12 < last_loglik)
      throw InvariantViolation("mle_reconstruct: likelihood decreased");
    last_loglik = loglik;
    Eigen::MatrixXcd next = r_op * rho * r_op;
    next = 0.5 * (next + next.adjoint().eval());
    next /= next.trace().real();
    const double delta = (next - rho).cwiseAbs().maxCoeff();
    rho = std::move(next);
    if (delta < kUpdateTolerance) break;
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  DensityOperator out = DensityOperator::register_basis(prob.n, std::move(rho));
  out.validate();
  return out;
}

}  // namespace

DensityOperator mle_reconstruct(const std::vector<CountRecord>& records) {
  std::vector<TomographySetting> settings;
  std::vector<Eigen::VectorXd> weights;
  settings.reserve(records.size());
  weights.reserve(records.size());
  for (const CountRecord& record : records) {
    std::uint64_t sum = 0;
    Eigen::VectorXd w(Eigen::Index(record.counts.size()));
    for (std::size_t b = 0; b < record.counts.size(); ++b) {
      sum += record.counts[b];
      w(Eigen::Index(b)) = double(record.counts[b]);
    }
    if (sum != record.shots)
      throw std::invalid_argument("mle_reconstruct: counts do not sum to shots");
    settings.push_back(record.setting);
    weights.push_back(std::move(w));
  }
  return run_mle(build_problem(settings, weights));
}

DensityOperator mle_reconstruct_probabilities(
    const std::vector<TomographySetting>& settings,
    const std::vector<Eigen::VectorXd>& probabilities) {
  return run_mle(build_problem(settings, probabilities));
}

double overlap_with_theory(const DensityOperator& rho_expmt,
                           const DensityOperator& rho_thy) {
  return fidelity(rho_expmt, rho_thy);
}

}  // namespace ktop
