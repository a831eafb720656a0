#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cplab/error.hpp"
#include "cplab/linalg.hpp"
#include "cplab/random.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace cplab;

TEST_SUITE("linalg") {
  TEST_CASE("hermitian_eig on fixed matrices") {
    const auto id = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0));

    const auto x = hermitian_eig(oracle::sx());
    CHECK(x.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(x.eigenvalues[1] == doctest::Approx(1.0));
  }

  TEST_CASE("hermitian_eig reconstructs random Hermitian matrices with a unitary basis") {
    Rng rng(21);
    for (std::size_t n : {1u, 2u, 4u, 9u, 16u}) {
      for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix m = random_hermitian(rng, n);
        const auto e = hermitian_eig(m);
        const double scale = std::max(1.0, m.frobenius_norm());
        CHECK(oracle::frob_diff(e.reconstruct(), m) <= 1e-10 * scale);
        const ComplexMatrix vv = oracle::matmul(oracle::dagger(e.eigenvectors), e.eigenvectors);
        CHECK(oracle::frob_diff(vv, ComplexMatrix::identity(n)) <= 1e-10);
        CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
      }
    }
  }

  TEST_CASE("degenerate spectra still give orthonormal eigenvectors") {
    Rng rng(22);
    // U diag(1,1,1,-2) U^dagger
    const auto u = hermitian_eig(random_hermitian(rng, 4)).eigenvectors;
    const std::vector<cplx> diag{1.0, 1.0, 1.0, -2.0};
    const ComplexMatrix m = u * ComplexMatrix::diagonal(diag) * u.adjoint();
    const auto e = hermitian_eig(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(-2.0));
    CHECK(e.eigenvalues[3] == doctest::Approx(1.0));
    CHECK(oracle::frob_diff(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(4)) <= 1e-10);
  }

  TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), Error);
    const ComplexMatrix upper{{1.0, 1.0}, {0.0, 1.0}};
    try {
      hermitian_eig(upper);
      FAIL("expected NonHermitian");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonHermitian);
    }
    try {
      hermitian_eig(ComplexMatrix(3, 2));
      FAIL("expected NonSquare");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonSquare);
    }
  }

  TEST_CASE("min_eigenvalue examples") {
    CHECK(min_eigenvalue(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
    CHECK(min_eigenvalue(oracle::sz()) == doctest::Approx(-1.0));
    ComplexMatrix proj(3, 3);
    proj(0, 0) = 1.0;
    CHECK(std::abs(min_eigenvalue(proj)) <= 1e-15);
  }

  TEST_CASE("matrix_exp fixed values") {
    const ComplexMatrix zero(3, 3);
    const ComplexMatrix e0 = matrix_exp(zero);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(e0(i, j) == (i == j ? cplx(1.0) : cplx(0.0)));

    const std::vector<cplx> d{std::log(2.0), 0.0};
    const ComplexMatrix e = matrix_exp(ComplexMatrix::diagonal(d));
    CHECK(std::abs(e(0, 0) - 2.0) <= 1e-14);
    CHECK(std::abs(e(1, 1) - 1.0) <= 1e-14);
    CHECK(std::abs(e(0, 1)) == 0.0);
  }

  TEST_CASE("matrix_exp inverse identity and agreement with a Taylor oracle") {
    Rng rng(23);
    for (int rep = 0; rep < 50; ++rep) {
      const ComplexMatrix m = random_complex_matrix(rng, 4, 4);
      const ComplexMatrix prod = matrix_exp(m) * matrix_exp(-m);
      CHECK(oracle::frob_diff(prod, ComplexMatrix::identity(4)) <= 1e-9);
      const ComplexMatrix ref = oracle::exp_taylor(m);
      CHECK(oracle::frob_diff(matrix_exp(m), ref) <= 1e-11 * std::max(1.0, ref.frobenius_norm()));
    }
  }

  TEST_CASE("matrix_exp handles large norms through squaring") {
    Rng rng(24);
    const ComplexMatrix h = random_hermitian(rng, 5);
    // Anti-Hermitian 30 i H gives a unitary.
    const ComplexMatrix u = matrix_exp(cplx(0.0, 30.0) * h);
    CHECK(oracle::frob_diff(u * u.adjoint(), ComplexMatrix::identity(5)) <= 1e-10);
  }

  TEST_CASE("matrix_exp group law exp((s+t)M) = exp(sM) exp(tM)") {
    Rng rng(25);
    for (int rep = 0; rep < 50; ++rep) {
      const ComplexMatrix m = random_complex_matrix(rng, 4, 4);
      const double s = rng.uniform();
      const double t = rng.uniform();
      const ComplexMatrix lhs = matrix_exp((s + t) * m);
      const ComplexMatrix rhs = matrix_exp(s * m) * matrix_exp(t * m);
      CHECK(oracle::frob_diff(lhs, rhs) <= 1e-9);
    }
  }

  TEST_CASE("matrix_exp rejects non-square input") { CHECK_THROWS_AS(matrix_exp(ComplexMatrix(2, 3)), Error); }

  TEST_CASE("LU inverse, determinant and singular detection") {
    Rng rng(26);
    const ComplexMatrix a = random_complex_matrix(rng, 5, 5);
    CHECK(oracle::frob_diff(a * inverse(a), ComplexMatrix::identity(5)) <= 1e-12);
    const ComplexMatrix two{{2.0, 1.0}, {4.0, 3.0}};
    CHECK(std::abs(determinant(two) - 2.0) <= 1e-15);
    const ComplexMatrix sing{{1.0, 2.0}, {2.0, 4.0}};
    CHECK(LuDecomposition(sing).singular());
    CHECK_THROWS_AS(inverse(sing), Error);
  }

  TEST_CASE("null_space of a rank-deficient matrix") {
    const ComplexMatrix m{{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}};
    const ComplexMatrix n = null_space(m, 1e-12);
    CHECK(n.cols() == 2);
    CHECK((m * n).frobenius_norm() <= 1e-14);
  }

  TEST_CASE("similarity_to_transpose fixed examples") {
    // symmetric W: the identity is a valid answer, and whatever comes back must satisfy the contract
    const ComplexMatrix sym{{1.0, 2.0}, {2.0, cplx(0, 3)}};
    CHECK(similarity_residual(sym, ComplexMatrix::identity(2)) == 0.0);
    const ComplexMatrix phi_sym = similarity_to_transpose(sym);
    CHECK(similarity_residual(sym, phi_sym) <= 1e-8 * std::max(1.0, sym.frobenius_norm()));

    // Jordan block
    const ComplexMatrix jordan{{0.0, 1.0}, {0.0, 0.0}};
    const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(oracle::frob_diff(inverse(swap) * jordan * swap, jordan.transpose()) == 0.0);
    const ComplexMatrix phi = similarity_to_transpose(jordan);
    CHECK(similarity_residual(jordan, phi) <= 1e-8);
    CHECK(std::abs(determinant(phi)) > 1e-10);
  }

  TEST_CASE("similarity_to_transpose on repeated eigenvalues") {
    Rng rng(27);
    for (int rep = 0; rep < 50; ++rep) {
      // diag(a, a, b) and J_2(a) (+) b, both conjugated by a random S
      const ComplexMatrix derog = testing_support::jordan_conjugate(rng, {1, 1, 1}, true);
      const ComplexMatrix defective = testing_support::jordan_conjugate(rng, {2, 1}, true);
      for (const auto* w : {&derog, &defective}) {
        const ComplexMatrix phi = similarity_to_transpose(*w);
        CHECK(similarity_residual(*w, phi) <= 1e-8 * std::max(1.0, w->frobenius_norm()));
        CHECK(std::abs(determinant(phi)) > 1e-10);
      }
    }
  }

  TEST_CASE("similarity_to_transpose is deterministic for a fixed seed") {
    Rng rng(28);
    const ComplexMatrix w = random_complex_matrix(rng, 3, 3);
    const ComplexMatrix a = similarity_to_transpose(w, {.seed = 5});
    const ComplexMatrix b = similarity_to_transpose(w, {.seed = 5});
    CHECK(oracle::max_abs_diff(a, b) == 0.0);
  }

  TEST_CASE("Tolerances scale with the matrix norm") {
    const Tolerances tol;
    CHECK(tol.positivity_abs(ComplexMatrix(2, 2)) == doctest::Approx(1e-9));
    CHECK(tol.positivity_abs(10.0 * ComplexMatrix::identity(4)) == doctest::Approx(20e-9));
  }
}
