#include <doctest.h>

#include <cmath>

#include "epe/covariance.hpp"
#include "epe/lattice.hpp"
#include "support/random_states.hpp"

using namespace epe;

namespace {

// Closed-form eigenvalues of a real-symmetric 2x2 [[a, b], [b, a]]: a -+ b,
// with eigenvectors (1, -+1)/sqrt(2). Oracle for the 2x2 examples below.
std::pair<double, double> two_site_eigenvalues(double a, double b) {
  return {a - b, a + b};
}

Matrix matrix2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("thermal covariance at infinite temperature vanishes") {
  SingleParticleHamiltonian h(Matrix::Zero(1, 1));
  const CovarianceMatrix c = build_thermal_covariance(h, 0.0);
  CHECK(c.entries()(0, 0) == Complex(0.0, 0.0));

  testing::Rng rng(11);
  SingleParticleHamiltonian h4(testing::random_hermitian(4, rng));
  CHECK(build_thermal_covariance(h4, 0.0).entries().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("thermal covariance empties a positive-energy mode at low temperature") {
  SingleParticleHamiltonian h(Matrix::Constant(1, 1, Complex(1.0, 0.0)));
  const CovarianceMatrix c = build_thermal_covariance(h, 1e3);
  CHECK(std::abs(c.entries()(0, 0).real() + 1.0) < 1e-12);
}

TEST_CASE("thermal covariance of a two-site hopper matches the 2x2 oracle") {
  // Oracle: h eigenvalues -+1 on (1, -+1)/sqrt(2); C eigenvalue -tanh(beta e / 2).
  const auto [e_minus, e_plus] = two_site_eigenvalues(0.0, 1.0);
  CHECK(e_minus == -1.0);
  CHECK(e_plus == 1.0);
  const double tanh1 = 0.7615941559557649;  // frozen -tanh(beta/2 * e) at beta = 2
  CHECK(std::abs(std::tanh(1.0) - tanh1) < 1e-15);

  SingleParticleHamiltonian h(matrix2(0, 1, 1, 0));
  const CovarianceMatrix c = build_thermal_covariance(h, 2.0);
  const EigenSystem es = hermitian_eigensystem(c.entries());
  CHECK(es.values[0] == doctest::Approx(-tanh1).epsilon(1e-12));
  CHECK(es.values[1] == doctest::Approx(tanh1).epsilon(1e-12));

  // -tanh(1) attaches to the +1 eigenvector (1, 1)/sqrt(2).
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK((c.entries() * plus + tanh1 * plus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("thermal covariance rejects bad input") {
  Matrix bad = matrix2(0, 1, 0, 0);
  CHECK_THROWS_AS(SingleParticleHamiltonian{bad}, ValidationError);
  SingleParticleHamiltonian h(matrix2(0, 1, 1, 0));
  CHECK_THROWS_AS(build_thermal_covariance(h, -1.0), ValidationError);
  CHECK_THROWS_AS(build_thermal_covariance(h, std::numeric_limits<double>::infinity()),
                  ValidationError);
}

TEST_CASE("thermal spectrum stays strictly inside (-1, 1) at finite beta") {
  testing::Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const CovarianceMatrix c = testing::random_mixed_covariance(8, rng);
    const EigenSystem es = hermitian_eigensystem(c.entries());
    CHECK(es.values.cwiseAbs().maxCoeff() < 1.0);
  }
}

TEST_CASE("low-temperature thermal state converges to the gapped ground state") {
  const SingleParticleHamiltonian h = ssh_chain(6, 1.0, 0.5);  // dimerized, gap O(1)
  const CovarianceMatrix cold = build_thermal_covariance(h, 1e3);
  const CovarianceMatrix gs = ground_state_covariance(h, h.dim() / 2);
  CHECK((cold.entries() - gs.entries()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ground state fills the lowest orbital of a two-site hopper") {
  // Oracle: occupied orbital (1, -1)/sqrt(2) at energy -1; projector arithmetic
  // 2P - I gives [[0, -1], [-1, 0]].
  SingleParticleHamiltonian h(matrix2(0, 1, 1, 0));
  const CovarianceMatrix c = ground_state_covariance(h, 1);
  CHECK((c.entries() - matrix2(0, -1, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c.purity_residual() < 1e-10);
}

TEST_CASE("empty and full ground states are trivial") {
  SingleParticleHamiltonian h(matrix2(0, 1, 1, 0));
  CHECK((ground_state_covariance(h, 0).entries() + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((ground_state_covariance(h, 2).entries() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("periodic half-filled chain at L = 4 has a degenerate Fermi level") {
  // Oracle: e_k = 2 t cos k vanishes at k = +-pi/2 for L = 4.
  const SingleParticleHamiltonian h = chain_1d(4, 1.0, Boundary::periodic);
  CHECK_THROWS_AS(ground_state_covariance(h, 2), DegeneracyError);
}

TEST_CASE("restriction reads the requested block") {
  const CovarianceMatrix bell(matrix2(0, 1, 1, 0));
  CHECK(restricted(bell, Region::interval(0, 1)).entries()(0, 0) == Complex(0.0, 0.0));

  const CovarianceMatrix eye3{Matrix::Identity(3, 3)};
  const CovarianceMatrix block = restricted(eye3, Region({std::vector<Index>{0, 2}}));
  CHECK(block.dim() == 2);
  CHECK((block.entries() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  const CovarianceMatrix toy(matrix2(0.5, 0.3, 0.3, 0.5));
  CHECK(restricted(toy, Region::interval(0, 1)).entries()(0, 0) == Complex(0.5, 0.0));

  CHECK_THROWS_AS(restricted(bell, Region({std::vector<Index>{5}})), ValidationError);
}

TEST_CASE("restriction carries basis labels") {
  const CovarianceMatrix c(Matrix::Zero(3, 3), {"p", "q", "r"});
  const CovarianceMatrix block = restricted(c, Region({std::vector<Index>{0, 2}}));
  REQUIRE(block.basis_labels().size() == 2);
  CHECK(block.basis_labels()[0] == "p");
  CHECK(block.basis_labels()[1] == "r");
}

TEST_CASE("cross block extracts C_AB") {
  const CovarianceMatrix bell(matrix2(0, 1, 1, 0));
  const Region a = Region::interval(0, 1);
  const Region b = Region::interval(1, 2);
  CHECK(cross_block(bell, a, b)(0, 0) == Complex(1.0, 0.0));

  const CovarianceMatrix infinite_t{Matrix::Zero(2, 2)};
  CHECK(cross_block(infinite_t, a, b).cwiseAbs().maxCoeff() == 0.0);

  const CovarianceMatrix toy(matrix2(0.5, 0.3, 0.3, 0.5));
  CHECK(cross_block(toy, a, b)(0, 0) == Complex(0.3, 0.0));

  CHECK_THROWS_AS(cross_block(bell, a, a), ValidationError);
}

TEST_CASE("cross blocks of a random state are mutually adjoint") {
  testing::Rng rng(7);
  const CovarianceMatrix c = testing::random_mixed_covariance(6, rng);
  const auto [a, b] = testing::random_bipartition(6, rng);
  const Matrix c_ab = cross_block(c, a, b);
  const Matrix c_ba = cross_block(c, b, a);
  CHECK((c_ab - c_ba.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("binary entropy hits its anchor values") {
  const double ln2 = 0.6931471805599453;
  CHECK(binary_entropy(0.0) == doctest::Approx(ln2).epsilon(1e-15));
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(-1.0) == 0.0);
  // Frozen from the scalar formula: -(0.75 ln 0.75 + 0.25 ln 0.25).
  const double s_half = 0.5623351446188084;
  CHECK(binary_entropy(0.5) == doctest::Approx(s_half).epsilon(1e-14));
  CHECK(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25)) ==
        doctest::Approx(s_half).epsilon(1e-15));
}

TEST_CASE("binary entropy is symmetric and clamps boundary noise") {
  for (double lambda : {0.1, 0.37, 0.82, 0.999}) {
    CHECK(binary_entropy(lambda) == doctest::Approx(binary_entropy(-lambda)).epsilon(1e-15));
  }
  CHECK(binary_entropy(1.0 + 5e-11) == 0.0);
  CHECK_THROWS_AS(binary_entropy(1.0 + 1e-9), ValidationError);
}

TEST_CASE("scalar entropy agrees with the spectral function of a 1x1 block") {
  for (double lambda : {-0.9, -0.25, 0.0, 0.5, 0.99}) {
    const CovarianceMatrix c{Matrix::Constant(1, 1, Complex(lambda, 0.0))};
    const double spectral = von_neumann_entropy(c, Region::interval(0, 1));
    CHECK(std::abs(spectral - binary_entropy(lambda)) < 1e-14);
  }
}

TEST_CASE("von Neumann entropy anchors") {
  const double ln2 = 0.6931471805599453;
  const CovarianceMatrix maximally_mixed{Matrix::Zero(3, 3)};
  CHECK(von_neumann_entropy(maximally_mixed, Region::interval(0, 3)) ==
        doctest::Approx(3.0 * ln2).epsilon(1e-14));

  const CovarianceMatrix bell(matrix2(0, 1, 1, 0));
  CHECK(von_neumann_entropy(bell, Region::interval(0, 1)) ==
        doctest::Approx(ln2).epsilon(1e-14));

  Matrix product(2, 2);
  product << 1, 0, 0, -1;
  const CovarianceMatrix pure{std::move(product)};
  CHECK(von_neumann_entropy(pure, Region::interval(0, 2)) == 0.0);
}

TEST_CASE("entropy is invariant under relabeling within A") {
  testing::Rng rng(3);
  const Index dim = 6;
  const CovarianceMatrix c = testing::random_mixed_covariance(dim, rng);
  const Region a = Region::interval(0, 3);
  const double before = von_neumann_entropy(c, a);

  Matrix u = Matrix::Identity(dim, dim);
  u.topLeftCorner(3, 3) = testing::random_unitary(3, rng);
  Matrix rotated = u * c.entries() * u.adjoint();
  rotated = Complex(0.5, 0.0) * (rotated + Matrix(rotated.adjoint()));
  const double after = von_neumann_entropy(CovarianceMatrix(std::move(rotated)), a);
  CHECK(after == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("region plumbing validates its inputs") {
  CHECK_THROWS_AS(Region({std::vector<Index>{2, 1}}), ValidationError);
  CHECK_THROWS_AS(Region({std::vector<Index>{1, 1}}), ValidationError);
  const Region a({std::vector<Index>{0, 2}});
  const Region b({std::vector<Index>{1, 3}});
  CHECK(a.disjoint_from(b));
  const Region joint = a.disjoint_union(b);
  CHECK(joint.size() == 4);
  CHECK_THROWS_AS(a.disjoint_union(a), ValidationError);
  CHECK(a.complement_in(4).indices() == std::vector<Index>{1, 3});
}
