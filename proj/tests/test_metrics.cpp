#include <doctest.h>

#include <cmath>

#include "ktop/metrics.hpp"
#include "test_support.hpp"

using namespace ktop;
using ktop_test::random_density;

namespace {

DensityOperator qubit_with_bloch_length(double r) {
  Eigen::Matrix2cd m;
  m << 0.5 * (1 + r), 0, 0, 0.5 * (1 - r);
  return DensityOperator::single_qubit(m);
}

}  // namespace

TEST_CASE("entropy of reference states") {
  CHECK(entanglement_entropy(qubit_with_bloch_length(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_entropy(qubit_with_bloch_length(1.0)) == 0.0);
  // eigenvalues 0.8/0.2
  CHECK(entanglement_entropy(qubit_with_bloch_length(0.6)) ==
        doctest::Approx(0.7219280948873623).epsilon(1e-12));
  CHECK(entropy_from_bloch_length(0.6) ==
        doctest::Approx(0.7219280948873623).epsilon(1e-12));

  Eigen::Matrix2cd negative;
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(entanglement_entropy(DensityOperator::single_qubit(negative)),
                  InvariantViolation);
}

TEST_CASE("entropy is basis independent and bounded") {
  std::mt19937_64 rng(600);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix2cd rho = random_density(rng, 2);
    const Eigen::Matrix2cd u = ktop_test::random_unitary_2x2(rng);
    const double s0 = entanglement_entropy(DensityOperator::single_qubit(rho));
    const double s1 = entanglement_entropy(
        DensityOperator::single_qubit(u * rho * u.adjoint()));
    CHECK(std::abs(s0 - s1) < 1e-10);
    CHECK(s0 >= 0.0);
    CHECK(s0 <= 1.0 + 1e-9);
  }
  for (int dim : {4, 8}) {
    const Eigen::MatrixXcd rho = random_density(rng, dim);
    const double s = entanglement_entropy(DensityOperator::register_basis(
        dim == 4 ? 2 : 3, rho));
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(double(dim)) + 1e-9);
  }
}

TEST_CASE("purity reference values") {
  CHECK(purity(qubit_with_bloch_length(1.0)) == doctest::Approx(1.0));
  CHECK(purity(qubit_with_bloch_length(0.6)) == doctest::Approx(0.68).epsilon(1e-12));
  const DensityOperator mixed = DensityOperator::register_basis(
      3, Eigen::MatrixXcd::Identity(8, 8) / 8.0);
  CHECK(purity(mixed) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("purity is constant along a unitary trajectory") {
  const auto traj = evolve(coherent_state_register(3, {1.0, 2.0}),
                           FloquetParameters{2.5, kPi / 2}, 40);
  for (const RegisterVector& s : traj.states)
    CHECK(std::abs(purity(DensityOperator::pure(s)) - 1.0) < 1e-10);
}

TEST_CASE("fidelity properties") {
  std::mt19937_64 rng(41);
  const Eigen::MatrixXcd a = random_density(rng, 4);
  const Eigen::MatrixXcd b = random_density(rng, 4);
  const DensityOperator ra = DensityOperator::register_basis(2, a);
  const DensityOperator rb = DensityOperator::register_basis(2, b);
  CHECK(fidelity(ra, ra) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(fidelity(ra, rb) - fidelity(rb, ra)) < 1e-9);
  CHECK(fidelity(ra, rb) < 1.0 - 1e-8);  // distinct random states

  Eigen::Matrix2cd up, down;
  up << 1, 0, 0, 0;
  down << 0, 0, 0, 1;
  CHECK(fidelity(DensityOperator::single_qubit(up),
                 DensityOperator::single_qubit(down)) < 1e-12);

  CHECK_THROWS_AS(fidelity(ra, DensityOperator::single_qubit(up)),
                  std::invalid_argument);
}

TEST_CASE("pure symmetric state against the microcanonical ensemble") {
  const DensityOperator psi =
      DensityOperator::pure(coherent_state_register(3, {1.3, 0.4}));
  CHECK(fidelity(psi, microcanonical(3)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("microcanonical ensembles") {
  const DensityOperator one = microcanonical(1);
  CHECK((one.elements - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);

  // n = 2: triplet projector / 3
  const DensityOperator two = microcanonical(2);
  Eigen::MatrixXcd triplet = Eigen::MatrixXcd::Zero(4, 4);
  triplet(0, 0) = triplet(3, 3) = 1.0;
  triplet(1, 1) = triplet(1, 2) = triplet(2, 1) = triplet(2, 2) = 0.5;
  CHECK((two.elements - triplet / 3).cwiseAbs().maxCoeff() < 1e-14);

  const DensityOperator three = microcanonical(3);
  CHECK(std::abs(three.elements.trace().real() - 1.0) < 1e-12);
  CHECK(purity(three) == doctest::Approx(0.25).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(three.elements);
  int rank = 0;
  for (Eigen::Index i = 0; i < 8; ++i)
    if (es.eigenvalues()(i) > 1e-12) {
      ++rank;
      CHECK(es.eigenvalues()(i) == doctest::Approx(0.25).epsilon(1e-12));
    }
  CHECK(rank == 4);
  three.validate();
}

TEST_CASE("time-averaged density matrix") {
  const FloquetParameters p{2.5, kPi / 2};
  const auto traj = evolve(coherent_state_register(3, {1.18, 2.62}), p, 12);

  const DensityOperator first = time_averaged_density(traj, 1);
  CHECK((first.elements - DensityOperator::pure(traj.states[1]).elements)
            .cwiseAbs().maxCoeff() < 1e-14);

  const auto cycle = evolve(coherent_state_register(3, {1.0, 0.3}),
                            FloquetParameters{0.0, kPi / 2}, 4);
  const DensityOperator averaged = time_averaged_density(cycle, 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(averaged.elements,
                                                     Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index i = 0; i < 8; ++i)
    if (es.eigenvalues()(i) > 1e-10) ++rank;
  CHECK(rank <= 4);
  averaged.validate();

  // a chaotic-region state approaches the microcanonical ensemble
  const DensityOperator late = time_averaged_density(traj, 10);
  CHECK(fidelity(late, microcanonical(3)) > 0.9);
  late.validate();

  CHECK_THROWS_AS(time_averaged_density(traj, 0), std::invalid_argument);
  CHECK_THROWS_AS(time_averaged_density(traj, 13), std::invalid_argument);
}

TEST_CASE("pauli correlation tables") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 8);
  zero(0, 0) = 1.0;
  const PauliCorrelations t0 =
      pauli_correlations(DensityOperator::register_basis(3, zero));
  CHECK(t0["III"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t0["ZII"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t0["ZZI"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t0["ZZZ"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(t0["XII"]) < 1e-12);
  CHECK(std::abs(t0["IYZ"]) < 1e-12);

  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = std::sqrt(0.5);
  const PauliCorrelations tg =
      pauli_correlations(DensityOperator::pure(RegisterVector{3, ghz}));
  CHECK(tg["XXX"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tg["ZZI"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(tg["ZII"]) < 1e-12);

  CHECK(PauliCorrelations::string_label(0, 3) == "III");
  CHECK(PauliCorrelations::string_label(0x1B, 3) == "XYZ");
  CHECK(tg.index_of("XYZ") == 0x1B);
}

TEST_CASE("pauli sum rule") {
  std::mt19937_64 rng(88);
  for (int n : {1, 2, 3, 4}) {
    const Eigen::MatrixXcd rho = random_density(rng, Eigen::Index(1) << n);
    const DensityOperator op = DensityOperator::register_basis(n, rho);
    const PauliCorrelations table = pauli_correlations(op);
    CHECK(table.values.maxCoeff() <= 1.0 + 1e-9);
    CHECK(table.values.minCoeff() >= -1.0 - 1e-9);
    const double sum = table.values.squaredNorm();
    CHECK(std::abs(sum - double(Eigen::Index(1) << n) * purity(op)) < 1e-8);
  }
}

TEST_CASE("overlap series: single step gives exactly one half") {
  const auto series =
      ergodicity_overlap_series({0.7, 1.9}, FloquetParameters{2.5, kPi / 2}, 3, 1);
  REQUIRE(series.overlaps.size() == 1);
  CHECK(series.overlaps[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("overlap series matches the full-register route") {
  const FloquetParameters p{2.5, kPi / 2};
  const SphericalDirection dir(1.18, 2.62);
  const auto series = ergodicity_overlap_series(dir, p, 3, 8);
  const auto traj = evolve(coherent_state_register(3, dir), p, 8);
  const DensityOperator mc = microcanonical(3);
  for (int upto = 1; upto <= 8; ++upto) {
    const double reference = fidelity(time_averaged_density(traj, upto), mc);
    CHECK(std::abs(series.overlaps[std::size_t(upto) - 1] - reference) < 1e-10);
  }
}

TEST_CASE("regular initial states stay below chaotic ones") {
  const FloquetParameters p{2.5, kPi / 2};
  const auto chaotic = ergodicity_overlap_series({1.18, 2.62}, p, 3, 10);
  const auto regular = ergodicity_overlap_series({kPi / 2, -kPi / 2}, p, 3, 10);
  // every pure state gives exactly 0.5 after one step
  CHECK(std::abs(chaotic.overlaps[0] - 0.5) < 1e-9);
  CHECK(std::abs(regular.overlaps[0] - 0.5) < 1e-9);
  for (std::size_t i = 1; i < 10; ++i)
    CHECK(regular.overlaps[i] < chaotic.overlaps[i]);
}

TEST_CASE("including the initial state shifts the series by one step") {
  // U preserves the symmetric projector, so mean over states 0..N equals
  // mean over states 1..N+1 in fidelity against the ensemble.
  const FloquetParameters p{2.5, kPi / 2};
  const SphericalDirection dir(2.45, 0.87);
  const auto inclusive = ergodicity_overlap_series(dir, p, 3, 9, true);
  const auto exclusive = ergodicity_overlap_series(dir, p, 3, 10, false);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(std::abs(inclusive.overlaps[i] - exclusive.overlaps[i + 1]) < 1e-10);
}
