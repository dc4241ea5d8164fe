#include <cmath>
#include <complex>

#include "dicke/errors.hpp"
#include "dicke/schur.hpp"
#include "dicke/sectors.hpp"
#include "dicke/states.hpp"
#include "doctest.h"
#include "oracle.hpp"

namespace {

using dicke::BlockState;
using dicke::CMat;
using dicke::FullState;
using dicke::product_gibbs_sector_weights;
using dicke::project_to_blocks;
using dicke::schur_transform;

// Pure-state density matrix from an amplitude vector.
FullState pure(const dicke::CVec& psi) { return {psi * psi.adjoint()}; }

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("standard states validate and have the advertised diagonals") {
    FullState::ground(3).validate();
    FullState::maximally_mixed(3).validate();
    FullState::all_excited(3).validate();
    const FullState g = FullState::product_gibbs(3, 0.4);
    g.validate();
    // Basis state with k excited bits carries weight q^k/(1+q)^N.
    const double norm = std::pow(1.4, -3);
    CHECK(g.rho(0, 0).real() == doctest::Approx(norm));
    CHECK(g.rho(5, 5).real() == doctest::Approx(norm * 0.16));  // |101>
    CHECK(g.rho(7, 7).real() == doctest::Approx(norm * 0.064));
    CHECK(g.rho(3, 5) == std::complex<double>(0.0, 0.0));
  }

  TEST_CASE("validate rejects broken density matrices") {
    FullState bad = FullState::ground(2);
    bad.rho(0, 1) = 0.25;  // not Hermitian
    CHECK_THROWS_AS(bad.validate(), dicke::ValidationError);
    bad = FullState::ground(2);
    bad.rho(0, 0) = 0.5;  // trace deficit
    CHECK_THROWS_AS(bad.validate(), dicke::ValidationError);
    bad = FullState::ground(2);
    bad.rho(1, 1) = 0.5;
    bad.rho(0, 0) = 0.5;
    bad.rho(0, 1) = bad.rho(1, 0) = 0.6;  // indefinite
    CHECK_THROWS_AS(bad.validate(), dicke::ValidationError);
    CHECK_THROWS_AS((void)FullState::product_gibbs(2, 1.5), dicke::DomainError);
  }

  TEST_CASE("two-qubit product Gibbs weights split 7/9 and 2/9 at q = 1/2") {
    const auto blocks = product_gibbs_sector_weights(2, 0.5);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].twice_j == 2);
    CHECK(blocks[0].weight == doctest::Approx(7.0 / 9.0));
    CHECK(blocks[1].twice_j == 0);
    CHECK(blocks[1].weight == doctest::Approx(2.0 / 9.0));
    // Triplet ladder carries the q-profile (1, q, q^2)/Z.
    CHECK(blocks[0].ladder[0] == doctest::Approx(4.0 / 7.0));
    CHECK(blocks[0].ladder[1] == doctest::Approx(2.0 / 7.0));
    CHECK(blocks[0].ladder[2] == doctest::Approx(1.0 / 7.0));
  }

  TEST_CASE("product Gibbs weights at the endpoints") {
    auto blocks = product_gibbs_sector_weights(2, 1.0);
    CHECK(blocks[0].weight == doctest::Approx(0.75));  // dimension ratio
    CHECK(blocks[1].weight == doctest::Approx(0.25));
    blocks = product_gibbs_sector_weights(2, 0.0);
    CHECK(blocks[0].weight == doctest::Approx(1.0));
    CHECK(blocks[1].weight == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)product_gibbs_sector_weights(2, -0.1),
                    dicke::DomainError);
    CHECK_THROWS_AS((void)product_gibbs_sector_weights(2, 1.1),
                    dicke::DomainError);
  }

  TEST_CASE("product Gibbs weights are normalized and isotropic at large N") {
    for (double q : {0.0, 0.3, 1.0}) {
      const auto blocks = product_gibbs_sector_weights(20, q);
      double total = 0.0;
      for (const auto& b : blocks) {
        CHECK(b.isotropic());
        total += b.weight;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("combinatorial weights match explicit projection up to N = 6") {
    for (int n = 1; n <= 6; ++n) {
      const auto schur = schur_transform(n);
      for (double q : {0.25, 0.8}) {
        const auto fast = product_gibbs_sector_weights(n, q);
        const auto slow =
            project_to_blocks(FullState::product_gibbs(n, q), schur);
        REQUIRE(fast.size() == slow.blocks.size());
        for (size_t i = 0; i < fast.size(); ++i) {
          const auto& f = fast[i];
          const auto& s = slow.blocks[i];
          CHECK(f.twice_j == s.twice_j);
          CHECK(std::abs(f.weight - s.weight) < 1e-12);
          CHECK((f.ladder - s.ladder).cwiseAbs().maxCoeff() < 1e-12);
          // chi of a permutation-invariant state is a multiple of identity.
          const CMat iso = f.weight / double(f.multiplicity) *
                           CMat::Identity(s.chi.rows(), s.chi.cols());
          CHECK((s.chi - iso).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }

  TEST_CASE("projection splits a partly antisymmetric pure state 1/3 : 2/3") {
    const auto schur = schur_transform(2);
    dicke::CVec psi = dicke::CVec::Zero(4);
    const double r3 = 1.0 / std::sqrt(3.0);
    psi(0) = r3;   // |00>
    psi(1) = r3;   // |01>
    psi(2) = -r3;  // |10>
    const BlockState bs = project_to_blocks(pure(psi), schur);
    CHECK(bs.blocks[0].weight == doctest::Approx(1.0 / 3.0));
    CHECK(bs.blocks[1].weight == doctest::Approx(2.0 / 3.0));
    bs.validate();
  }

  TEST_CASE("ground state projects entirely onto the bright family") {
    for (int n : {2, 4}) {
      const auto schur = schur_transform(n);
      const BlockState bs = project_to_blocks(FullState::ground(n), schur);
      CHECK(bs.blocks[0].twice_j == n);
      CHECK(bs.blocks[0].weight == doctest::Approx(1.0));
      CHECK(bs.blocks[0].ladder[0] == doctest::Approx(1.0));
      for (size_t i = 1; i < bs.blocks.size(); ++i)
        CHECK(bs.blocks[i].weight == doctest::Approx(0.0));
    }
  }

  TEST_CASE("block weights of a random density matrix sum to one") {
    const auto schur = schur_transform(3);
    const FullState rho = {dicke::oracle::random_density(8, 20240817)};
    const BlockState bs = project_to_blocks(rho, schur);
    CHECK(std::abs(bs.total_weight() - 1.0) < 1e-12);
    for (const auto& b : bs.blocks) {
      // chi must come back Hermitian and PSD.
      CHECK((b.chi - b.chi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<CMat> es(b.chi, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
  }

  TEST_CASE("project / reconstruct round trip") {
    const auto schur = schur_transform(3);
    // Product Gibbs states have exact block-product form, so the round trip
    // must return the original matrix.
    const FullState rho = FullState::product_gibbs(3, 0.6);
    const BlockState bs = project_to_blocks(rho, schur);
    const CMat back = reconstruct_density(bs, schur);
    CHECK((back - rho.rho).cwiseAbs().maxCoeff() < 1e-12);
    // For general states the round trip is a projection: applying it twice
    // changes nothing.
    const FullState rnd = {dicke::oracle::random_density(8, 7)};
    const BlockState once = project_to_blocks(rnd, schur);
    const BlockState twice =
        project_to_blocks(FullState{reconstruct_density(once, schur)}, schur);
    for (size_t i = 0; i < once.blocks.size(); ++i) {
      CHECK((once.blocks[i].chi - twice.blocks[i].chi).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((once.blocks[i].ladder - twice.blocks[i].ladder)
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("dimension mismatch and invalid inputs are rejected") {
    const auto schur = schur_transform(2);
    CHECK_THROWS_AS(
        (void)project_to_blocks(FullState::ground(3), schur),
        dicke::ValidationError);
    FullState bad = FullState::ground(2);
    bad.rho(0, 1) = 0.3;
    CHECK_THROWS_AS((void)project_to_blocks(bad, schur),
                    dicke::ValidationError);
  }

  TEST_CASE("Dicke diagonality is detected") {
    const auto schur = schur_transform(2);
    CHECK(is_dicke_diagonal(FullState::product_gibbs(2, 0.5), schur));
    CHECK(is_dicke_diagonal(FullState::ground(2), schur));
    dicke::CVec psi = dicke::CVec::Zero(4);
    psi(0) = psi(1) = 1.0 / std::sqrt(2.0);  // coherence across families
    CHECK_FALSE(is_dicke_diagonal(pure(psi), schur));
  }

  TEST_CASE("blockstate validation catches structural damage") {
    const auto schur = schur_transform(2);
    BlockState bs =
        project_to_blocks(FullState::product_gibbs(2, 0.5), schur);
    bs.blocks[0].weight = 0.9;  // breaks both normalization and chi trace
    CHECK_THROWS_AS(bs.validate(), dicke::ValidationError);
    bs = project_to_blocks(FullState::product_gibbs(2, 0.5), schur);
    bs.blocks[0].ladder = dicke::Vec::Ones(3);
    CHECK_THROWS_AS(bs.validate(), dicke::ValidationError);
  }

  TEST_CASE("isotropic blocks materialize chi on demand") {
    dicke::Block b;
    b.twice_j = 1;
    b.multiplicity = 2;
    b.weight = 0.5;
    b.ladder = dicke::Vec::Constant(2, 0.5);
    const CMat chi = b.explicit_chi();
    CHECK((chi - 0.25 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    b.multiplicity = 1'000'000;
    CHECK_THROWS_AS((void)b.explicit_chi(), dicke::ResourceError);
  }

  TEST_CASE("symmetric Dicke states are normalized equal superpositions") {
    const dicke::Vec d1 = dicke::symmetric_dicke_state(3, 1);
    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(d1(1) == doctest::Approx(r3));
    CHECK(d1(2) == doctest::Approx(r3));
    CHECK(d1(4) == doctest::Approx(r3));
    CHECK(d1.norm() == doctest::Approx(1.0));
    // Distinct excitation numbers give orthogonal states.
    const dicke::Vec d2 = dicke::symmetric_dicke_state(3, 2);
    CHECK(std::abs(d1.dot(d2)) < 1e-15);
    CHECK_THROWS_AS((void)dicke::symmetric_dicke_state(3, 4),
                    dicke::DomainError);
    CHECK_THROWS_AS((void)dicke::symmetric_dicke_state(25, 0),
                    dicke::DomainError);
  }

  TEST_CASE("bright populations recover p_sym of a product Gibbs state") {
    const int n = 3;
    const double q = 0.5;
    const auto pops =
        dicke::bright_populations(FullState::product_gibbs(n, q).rho);
    REQUIRE(int(pops.size()) == n + 1);
    const double norm = std::pow(1.0 + q, -n);
    double p_sym = 0.0;
    for (int k = 0; k <= n; ++k) {
      CHECK(pops[k] == doctest::Approx(norm * std::pow(q, k)));
      p_sym += pops[k];
    }
    // The sum is the bright-family weight from the combinatorial route.
    const auto blocks = product_gibbs_sector_weights(n, q);
    CHECK(p_sym == doctest::Approx(blocks[0].weight));
    // Pure edge states sit at the ladder ends.
    const auto top = dicke::bright_populations(FullState::all_excited(3).rho);
    CHECK(top[3] == doctest::Approx(1.0));
    CHECK(top[0] + top[1] + top[2] == doctest::Approx(0.0));
  }
}
