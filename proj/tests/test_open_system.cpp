#include <doctest.h>

#include <cmath>

#include "ktop/metrics.hpp"
#include "ktop/open_system.hpp"
#include "test_support.hpp"

using namespace ktop;
using ktop_test::random_density;

TEST_CASE("kappa from pulse parameters") {
  CHECK(kappa_from_pulse(12.0, 0.0) == 0.0);
  // g/2pi = 5 MHz, T = 5 ns
  const double g = 2 * kPi * 5e6;
  CHECK(kappa_from_pulse(g, 5e-9) == doctest::Approx(0.4712).epsilon(1e-3));
  // g/2pi = 5.3 MHz, T = 25 ns lands close to the nominal 2.5
  CHECK(kappa_from_pulse(2 * kPi * 5.3e6, 25e-9) == doctest::Approx(2.4976).epsilon(1e-3));
  CHECK_THROWS_AS(kappa_from_pulse(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("channels vanish when noise is disabled") {
  std::mt19937_64 rng(50);
  const DensityOperator rho =
      DensityOperator::register_basis(2, random_density(rng, 4));
  const DensityOperator out = apply_channels(rho, NoiseParameters::disabled(), 45.0);
  CHECK((out.elements - rho.elements).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("amplitude damping moves excited population down") {
  Eigen::Matrix2cd excited;
  excited << 0, 0, 0, 1;
  const DensityOperator rho = DensityOperator::register_basis(1, excited);
  // gamma = 1/2 at duration = T1 ln 2
  const double t1 = 100.0;
  const NoiseParameters noise = NoiseParameters::uniform(
      t1, std::numeric_limits<double>::infinity(), 20, 25);
  const DensityOperator half = apply_channels(rho, noise, t1 * std::log(2.0));
  CHECK(std::abs(half.elements(0, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(half.elements(1, 1) - Complex(0.5, 0)) < 1e-12);

  const DensityOperator late = apply_channels(rho, noise, 1e9);
  CHECK(std::abs(late.elements(0, 0) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("channels preserve trace and positivity") {
  std::mt19937_64 rng(51);
  const NoiseParameters noise = NoiseParameters::uniform(15000, 3000, 20, 25);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityOperator rho =
        DensityOperator::register_basis(3, random_density(rng, 8));
    const DensityOperator out = apply_channels(rho, noise, 45.0);
    CHECK(std::abs(out.elements.trace().real() - 1.0) < 1e-12);
    out.validate();
  }
}

TEST_CASE("per-qubit decay times are honored") {
  NoiseParameters noise;
  noise.t1_ns = {100.0, std::numeric_limits<double>::infinity()};
  noise.tphi_ns = {std::numeric_limits<double>::infinity()};
  Eigen::MatrixXcd both = Eigen::MatrixXcd::Zero(4, 4);
  both(3, 3) = 1.0;  // |11>
  const DensityOperator out = apply_channels(
      DensityOperator::register_basis(2, both), noise, 100.0 * std::log(2.0));
  // qubit 0 decays, qubit 1 does not
  CHECK(std::abs(out.elements(1, 1) - Complex(0.5, 0)) < 1e-12);  // |01>
  CHECK(std::abs(out.elements(3, 3) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(out.elements(2, 2)) < 1e-12);
}

TEST_CASE("noisy evolution reduces to the unitary backend without noise") {
  const FloquetParameters p{2.5, kPi / 2};
  const SphericalDirection dir(1.0, -0.5);
  const auto noisy = noisy_evolve(dir, 3, p, NoiseParameters::disabled(), 8);
  auto traj = evolve(coherent_state_register(3, dir), p, 8);
  REQUIRE(noisy.size() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(purity(noisy[std::size_t(k)]) - 1.0) < 1e-10);
    CHECK(fidelity(noisy[std::size_t(k)],
                   DensityOperator::pure(traj.states[std::size_t(k) + 1])) >
          1.0 - 1e-10);
  }
}

TEST_CASE("purity decreases strictly under decoherence") {
  const FloquetParameters p{2.5, kPi / 2};
  const NoiseParameters noise = NoiseParameters::uniform(15000, 3000, 20, 25);
  const auto states = noisy_evolve({kPi / 2 - 0.3, 0.6}, 3, p, noise, 10);
  double last = 1.0;
  for (const DensityOperator& rho : states) {
    const double value = purity(rho);
    CHECK(value < last);
    last = value;
  }
}

TEST_CASE("tomography settings enumeration") {
  CHECK(tomography_settings(1).size() == 4);
  const auto settings = tomography_settings(3);
  REQUIRE(settings.size() == 64);
  CHECK(settings[0].name() == "I,I,I");
  CHECK(settings[1].name() == "I,I,Xpi2");   // qubit 0 most significant
  CHECK(settings[4].name() == "I,Xpi2,I");
  CHECK(settings[63].name() == "Xpi,Xpi,Xpi");
  CHECK_THROWS_AS(tomography_settings(6), std::invalid_argument);
}

TEST_CASE("tomography rotations are unitary and correct") {
  for (TomographyRotation r : {TomographyRotation::I, TomographyRotation::XHalfPi,
                               TomographyRotation::YHalfPi, TomographyRotation::XPi}) {
    const Eigen::Matrix2cd u = tomography_rotation_matrix(r);
    CHECK((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  // Xpi flips z
  Eigen::Matrix2cd up;
  up << 1, 0, 0, 0;
  const Eigen::Matrix2cd u = tomography_rotation_matrix(TomographyRotation::XPi);
  const Eigen::Matrix2cd flipped = u * up * u.adjoint();
  CHECK(std::abs(flipped(1, 1) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("counts from a computational basis state") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 8);
  zero(0, 0) = 1.0;
  const DensityOperator rho = DensityOperator::register_basis(3, zero);
  const std::vector<TomographySetting> identity_only = {tomography_settings(3)[0]};
  const auto records = simulate_counts(rho, identity_only, 5000, 4);
  REQUIRE(records.size() == 1);
  CHECK(records[0].counts[0] == 5000);
}

TEST_CASE("counts converge to the uniform distribution") {
  const DensityOperator mixed =
      DensityOperator::register_basis(3, Eigen::MatrixXcd::Identity(8, 8) / 8.0);
  const std::vector<TomographySetting> one = {tomography_settings(3)[37]};
  const std::uint64_t shots = 1000000;
  const auto records = simulate_counts(mixed, one, shots, 11);
  // 3 sigma for p = 1/8 at 1e6 shots
  const double tolerance = 3 * std::sqrt(0.125 * 0.875 / double(shots));
  for (std::uint64_t c : records[0].counts)
    CHECK(std::abs(double(c) / double(shots) - 0.125) < tolerance);
}

TEST_CASE("GHZ counts follow the exact rotated distribution") {
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = std::sqrt(0.5);
  const DensityOperator rho = DensityOperator::pure(RegisterVector{3, ghz});
  TomographySetting all_x_half{{TomographyRotation::XHalfPi,
                                TomographyRotation::XHalfPi,
                                TomographyRotation::XHalfPi}};
  // exact probabilities via an independent dense route
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < 3; ++q)
    u = ktop_test::kron(u, tomography_rotation_matrix(TomographyRotation::XHalfPi));
  const Eigen::VectorXd exact = (u * rho.elements * u.adjoint()).diagonal().real();

  const std::uint64_t shots = 200000;
  const auto records = simulate_counts(rho, {all_x_half}, shots, 21);
  for (int b = 0; b < 8; ++b) {
    const double p = exact(b);
    const double tolerance = 4 * std::sqrt(std::max(p * (1 - p), 1e-9) / double(shots));
    CHECK(std::abs(double(records[0].counts[std::size_t(b)]) / double(shots) - p) <
          tolerance);
  }

  const auto again = simulate_counts(rho, {all_x_half}, 1000, 21);
  const auto again2 = simulate_counts(rho, {all_x_half}, 1000, 21);
  CHECK(again[0].counts == again2[0].counts);
}

TEST_CASE("MLE recovers a random state from exact probabilities") {
  std::mt19937_64 rng(140);
  const DensityOperator truth =
      DensityOperator::register_basis(3, random_density(rng, 8));
  const auto settings = tomography_settings(3);
  std::vector<Eigen::VectorXd> probs;
  for (const TomographySetting& s : settings) {
    const Eigen::MatrixXcd u = s.unitary();
    probs.push_back((u * truth.elements * u.adjoint()).diagonal().real());
  }
  const DensityOperator out = mle_reconstruct_probabilities(settings, probs);
  CHECK(fidelity(out, truth) > 0.999);
}

TEST_CASE("MLE fixed point at the maximally mixed state") {
  // the iteration starts at I/dim; exact uniform data keeps it there
  const auto settings = tomography_settings(2);
  std::vector<Eigen::VectorXd> probs(settings.size(),
                                     Eigen::VectorXd::Constant(4, 0.25));
  const DensityOperator out = mle_reconstruct_probabilities(settings, probs);
  CHECK((out.elements - Eigen::MatrixXcd::Identity(4, 4) / 4).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("MLE from sampled counts") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 8);
  zero(0, 0) = 1.0;
  const DensityOperator truth = DensityOperator::register_basis(3, zero);
  const auto records = simulate_counts(truth, tomography_settings(3), 10000, 9);
  const DensityOperator out = mle_reconstruct(records);
  CHECK(fidelity(out, truth) > 0.99);

  const DensityOperator mixed =
      DensityOperator::register_basis(3, Eigen::MatrixXcd::Identity(8, 8) / 8.0);
  const auto mixed_records = simulate_counts(mixed, tomography_settings(3), 10000, 10);
  const DensityOperator mixed_out = mle_reconstruct(mixed_records);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      mixed_out.elements - mixed.elements, Eigen::EigenvaluesOnly);
  CHECK(0.5 * es.eigenvalues().cwiseAbs().sum() < 0.05);  // trace distance
}

TEST_CASE("incomplete settings are rejected") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(4, 4);
  zero(0, 0) = 1.0;
  const DensityOperator rho = DensityOperator::register_basis(2, zero);
  const std::vector<TomographySetting> only_identity = {tomography_settings(2)[0]};
  const auto records = simulate_counts(rho, only_identity, 1000, 2);
  CHECK_THROWS_WITH_AS(mle_reconstruct(records), "tomographically incomplete",
                       std::invalid_argument);
}

TEST_CASE("overlap with theory") {
  const FloquetParameters p{2.5, kPi / 2};
  const SphericalDirection dir(1.18, 2.62);
  const NoiseParameters noise = NoiseParameters::uniform(15000, 3000, 20, 25);
  const auto noisy = noisy_evolve(dir, 3, p, noise, 10);
  const auto ideal = evolve(coherent_state_register(3, dir), p, 10);

  const DensityOperator first_ideal = DensityOperator::pure(ideal.states[1]);
  CHECK(overlap_with_theory(first_ideal, first_ideal) ==
        doctest::Approx(1.0).epsilon(1e-9));

  const double early = overlap_with_theory(noisy[0], DensityOperator::pure(ideal.states[1]));
  const double late = overlap_with_theory(noisy[9], DensityOperator::pure(ideal.states[10]));
  CHECK(early > 0.0);
  CHECK(early < 1.0);
  CHECK(late < early);

  Eigen::Matrix2cd up, down;
  up << 1, 0, 0, 0;
  down << 0, 0, 0, 1;
  CHECK(overlap_with_theory(DensityOperator::single_qubit(up),
                            DensityOperator::single_qubit(down)) < 1e-12);
}
