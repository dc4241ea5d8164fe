#include <cmath>

#include "dicke/errors.hpp"
#include "dicke/full_liouvillian.hpp"
#include "dicke/schur.hpp"
#include "dicke/sectors.hpp"
#include "dicke/states.hpp"
#include "doctest.h"

namespace {

using dicke::Mat;
using dicke::schur_transform;
using dicke::SchurTransform;

// Convenience: the column of |j, m, sigma> as a dense vector.
dicke::Vec basis_column(const SchurTransform& s, int tj, int sigma, int tm) {
  return s.matrix().col(s.column(tj, sigma, tm));
}

}  // namespace

TEST_SUITE("schur") {
  TEST_CASE("single qubit transform is the identity") {
    const auto s = schur_transform(1);
    CHECK((s.matrix() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
    REQUIRE(s.labels().size() == 2);
    CHECK(s.labels()[0].twice_j == 1);
    CHECK(s.labels()[0].twice_m == -1);
    CHECK(s.labels()[1].twice_m == 1);
  }

  TEST_CASE("two qubits: triplet ladder and the singlet") {
    const auto s = schur_transform(2);
    const double r = 1.0 / std::sqrt(2.0);
    // Basis index order |00>, |01>, |10>, |11>; m counts excitations - N/2.
    dicke::Vec c;
    c = basis_column(s, 2, 1, -2);
    CHECK(c(0) == doctest::Approx(1.0));
    c = basis_column(s, 2, 1, 0);
    CHECK(c(1) == doctest::Approx(r));
    CHECK(c(2) == doctest::Approx(r));
    c = basis_column(s, 2, 1, 2);
    CHECK(c(3) == doctest::Approx(1.0));
    c = basis_column(s, 0, 1, 0);  // singlet (|01> - |10>)/sqrt(2)
    CHECK(c(0) == doctest::Approx(0.0));
    CHECK(c(1) == doctest::Approx(r));
    CHECK(c(2) == doctest::Approx(-r));
    CHECK(c(3) == doctest::Approx(0.0));
  }

  TEST_CASE("three qubits: both degenerate doublets, entry by entry") {
    const auto s = schur_transform(3);
    const double r6 = 1.0 / std::sqrt(6.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    // sigma = 1 doublet: mixes all three single-excitation products.
    dicke::Vec c = basis_column(s, 1, 1, -1);
    CHECK(c(1) == doctest::Approx(r6));       // |001>
    CHECK(c(2) == doctest::Approx(r6));       // |010>
    CHECK(c(4) == doctest::Approx(-2 * r6));  // |100>
    c = basis_column(s, 1, 1, 1);
    CHECK(c(3) == doctest::Approx(2 * r6));   // |011>
    CHECK(c(5) == doctest::Approx(-r6));      // |101>
    CHECK(c(6) == doctest::Approx(-r6));      // |110>
    // sigma = 2 doublet: the last-two-qubit singlet dressed by qubit 1.
    c = basis_column(s, 1, 2, -1);
    CHECK(c(1) == doctest::Approx(r2));       // |001>
    CHECK(c(2) == doctest::Approx(-r2));      // |010>
    c = basis_column(s, 1, 2, 1);
    CHECK(c(5) == doctest::Approx(r2));       // |101>
    CHECK(c(6) == doctest::Approx(-r2));      // |110>
  }

  TEST_CASE("bright columns are the symmetric Dicke states") {
    for (int n : {2, 3, 5}) {
      const auto s = schur_transform(n);
      for (int k = 0; k <= n; ++k) {
        const dicke::Vec expect = dicke::symmetric_dicke_state(n, k);
        const dicke::Vec got = basis_column(s, n, 1, 2 * k - n);
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }

  TEST_CASE("transform is orthogonal up to N = 8") {
    for (int n = 1; n <= 8; ++n) {
      const auto s = schur_transform(n);
      const Mat gram = s.matrix().transpose() * s.matrix();
      const double err =
          (gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
      CHECK(err < 1e-12);
    }
  }

  TEST_CASE("labels are ordered j descending, sigma ascending, m ascending") {
    const auto s = schur_transform(4);
    const auto& labels = s.labels();
    REQUIRE(int(labels.size()) == 16);
    for (size_t i = 1; i < labels.size(); ++i) {
      const auto& a = labels[i - 1];
      const auto& b = labels[i];
      const bool ordered =
          (b.twice_j < a.twice_j) ||
          (b.twice_j == a.twice_j && b.sigma > a.sigma) ||
          (b.twice_j == a.twice_j && b.sigma == a.sigma && b.twice_m > a.twice_m);
      CHECK(ordered);
    }
    // Each (j, sigma) multiplet is contiguous and column() inverts labels().
    for (size_t i = 0; i < labels.size(); ++i)
      CHECK(s.column(labels[i].twice_j, labels[i].sigma, labels[i].twice_m) ==
            int(i));
    CHECK(s.family_start(4) == 0);
    CHECK(s.family_start(2) == 5);
    CHECK(s.family_start(0) == 14);
  }

  TEST_CASE("multiplet counts match the sector table") {
    for (int n = 1; n <= 6; ++n) {
      const auto s = schur_transform(n);
      for (const auto& sec : dicke::enumerate_sectors(n)) {
        int count = 0;
        for (const auto& l : s.labels())
          if (l.twice_j == sec.twice_j && l.twice_m == -sec.twice_j) ++count;
        CHECK(std::uint64_t(count) == sec.multiplicity);
      }
    }
  }

  TEST_CASE("unknown labels are rejected") {
    const auto s = schur_transform(2);
    CHECK_THROWS_AS((void)s.column(4, 1, 0), dicke::DomainError);
    CHECK_THROWS_AS((void)s.column(2, 2, 0), dicke::DomainError);
    CHECK_THROWS_AS((void)s.column(2, 1, 1), dicke::DomainError);  // bad parity
  }

  TEST_CASE("collective lowering is block diagonal in the spin basis") {
    for (int n : {3, 4}) {
      const auto s = schur_transform(n);
      const Mat jm = Mat(dicke::collective_lowering(n));
      const Mat in_basis = s.matrix().transpose() * jm * s.matrix();
      const auto& labels = s.labels();
      for (int r = 0; r < in_basis.rows(); ++r) {
        for (int c = 0; c < in_basis.cols(); ++c) {
          const auto& lr = labels[r];
          const auto& lc = labels[c];
          const bool same_multiplet =
              lr.twice_j == lc.twice_j && lr.sigma == lc.sigma;
          if (!same_multiplet) {
            CHECK(std::abs(in_basis(r, c)) < 1e-12);
          } else if (lr.twice_m == lc.twice_m - 2) {
            // In-multiplet matrix element sqrt((j+m)(j-m+1)).
            const double expect =
                std::sqrt(dicke::lowering_factor(lc.twice_j, lc.twice_m));
            CHECK(in_basis(r, c) == doctest::Approx(expect));
          } else {
            CHECK(std::abs(in_basis(r, c)) < 1e-12);
          }
        }
      }
    }
  }

  TEST_CASE("dense construction is capped") {
    CHECK_THROWS_AS((void)schur_transform(13), dicke::ResourceError);
    CHECK_THROWS_AS((void)schur_transform(0), dicke::DomainError);
  }
}
