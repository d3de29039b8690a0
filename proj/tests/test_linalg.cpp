#include <doctest.h>

#include "rbamg/linalg/decomp.hpp"
#include "rbamg/linalg/sparse.hpp"
#include "rbamg/random.hpp"
#include "support.hpp"

using namespace rbamg;

TEST_SUITE("linalg") {
  TEST_CASE("matmul identity, zero and a hand-computed product") {
    Rng rng(1);
    const DenseMatrix X = random_matrix(rng, 2, 3, true);
    CHECK(DenseMatrix::identity(2) * X == X);
    CHECK((DenseMatrix::zeros(2, 2) * X).max_abs() == 0.0);

    const DenseMatrix A{{2, -1}, {-1, 2}};
    const DenseMatrix half{{0.5, 0}, {0, 0.5}};
    CHECK(A * half == DenseMatrix{{1, -0.5}, {-0.5, 1}});
  }

  TEST_CASE("shape mismatches throw and name both shapes") {
    const DenseMatrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(a * b, DimensionError);
    try {
      (void)(a * b);
    } catch (const DimensionError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("2x3") != std::string::npos);
    }
    CHECK_THROWS_AS(a * Vector(2), DimensionError);
    CHECK_THROWS_AS(a + DenseMatrix(3, 2), DimensionError);
  }

  TEST_CASE("solve_dense examples") {
    Rng rng(2);
    const DenseMatrix B = random_matrix(rng, 3, 2);
    CHECK(test::max_abs_diff(solve_dense(DenseMatrix::identity(3), B), B) == 0.0);
    const DenseMatrix two = 2.0 * DenseMatrix::identity(3);
    CHECK(test::max_abs_diff(solve_dense(two, DenseMatrix::identity(3)),
                             0.5 * DenseMatrix::identity(3)) < 1e-16);
    const Vector x = solve_dense(DenseMatrix{{2, -1}, {-1, 2}}, Vector{1, 1});
    CHECK(std::abs(x[0] - 1.0) < 1e-15);
    CHECK(std::abs(x[1] - 1.0) < 1e-15);
  }

  TEST_CASE("solve_dense residual on well-conditioned input") {
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
      const DenseMatrix A = random_well_conditioned(rng, 20, true);
      const DenseMatrix B = random_matrix(rng, 20, 4, true);
      const DenseMatrix X = solve_dense(A, B);
      CHECK((A * X - B).norm_fro() <= 1e-10 * (1.0 + B.norm_fro()));
    }
  }

  TEST_CASE("singular matrices report the failing pivot") {
    const DenseMatrix S{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK_THROWS_AS(solve_dense(S, DenseMatrix::identity(3)), SingularError);
    try {
      LUFactorization lu(S);
      FAIL("expected SingularError");
    } catch (const SingularError& e) {
      CHECK(e.pivot() == 2);
    }
    CHECK_THROWS_AS(inverse(DenseMatrix::zeros(2, 2)), SingularError);
    CHECK_THROWS_AS(solve_dense(DenseMatrix(2, 3), DenseMatrix(2, 1)), DimensionError);
  }

  TEST_CASE("problem matrices invert to identity") {
    for (const auto& spec : {ProblemSpec::poisson1d(64), ProblemSpec::poisson2d(8, 8),
                             ProblemSpec::advdiff1d(64, 80.0)}) {
      const DenseMatrix A = test::dense(spec);
      const DenseMatrix X = solve_dense(A, DenseMatrix::identity(A.rows()));
      CHECK((A * X - DenseMatrix::identity(A.rows())).max_abs() <= 1e-9);
    }
  }

  TEST_CASE("eig_dense on a diagonal matrix") {
    const auto eig = eig_dense(DenseMatrix{{1, 0}, {0, 3}});
    REQUIRE(eig.values.size() == 2);
    CHECK(eig.values[0] == Scalar{3.0});
    CHECK(eig.values[1] == Scalar{1.0});
    CHECK(test::max_abs_diff(eig.right, DenseMatrix{{0, 1}, {1, 0}}) < 1e-15);
    CHECK(test::max_abs_diff(eig.left * eig.right, DenseMatrix::identity(2)) < 1e-15);
  }

  TEST_CASE("eig_dense on the 2x2 Jacobi propagator") {
    const auto eig = eig_dense(DenseMatrix{{0, 0.5}, {0.5, 0}});
    CHECK(std::abs(eig.values[0] - 0.5) < 1e-15);
    CHECK(std::abs(eig.values[1] + 0.5) < 1e-15);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(eig.right(0, 0) - s) < 1e-14);
    CHECK(std::abs(eig.right(1, 0) - s) < 1e-14);
    // Second column is proportional to [1, -1]; its largest entry is made
    // real positive, so either sign pattern may carry it.
    CHECK(std::abs(eig.right(0, 1) + eig.right(1, 1)) < 1e-14);
    CHECK(std::abs(std::abs(eig.right(0, 1)) - s) < 1e-14);
  }

  TEST_CASE("eig_dense left vectors invert the right vectors") {
    Rng rng(4);
    const DenseMatrix G = random_matrix(rng, 5, 5);
    const DenseMatrix A = G + G.transpose();
    const auto eig = eig_dense(A);
    CHECK(test::max_abs_diff(eig.left, inverse(eig.right)) < 1e-10);
    DenseMatrix VL = eig.right;
    for (Index j = 0; j < 5; ++j)
      for (Index i = 0; i < 5; ++i) VL(i, j) *= eig.values[j];
    CHECK((VL * eig.left - A).norm_fro() <= 1e-8 * A.norm_fro());
    for (Index i = 1; i < 5; ++i)
      CHECK(std::abs(eig.values[i - 1]) >= std::abs(eig.values[i]));
  }

  TEST_CASE("defective matrices are rejected") {
    CHECK_THROWS_AS(eig_dense(DenseMatrix{{1, 1}, {0, 1}}), ConvergenceError);
    CHECK(eigenvalues(DenseMatrix{{1, 1}, {0, 1}}).size() == 2);
  }

  TEST_CASE("singular values, rank and null space") {
    const DenseMatrix A{{1, 0, 0}, {0, 2, 0}};
    const auto sv = singular_values(A);
    CHECK(std::abs(sv[0] - 2.0) < 1e-15);
    CHECK(std::abs(sv[1] - 1.0) < 1e-15);
    CHECK(numerical_rank(A, 1e-12) == 2);
    const DenseMatrix N = null_space(A);
    REQUIRE(N.cols() == 1);
    CHECK((A * N).max_abs() < 1e-15);
    CHECK(std::abs(std::abs(N(2, 0)) - 1.0) < 1e-15);
    CHECK(std::isinf(condition_number(DenseMatrix{{1, 1}, {1, 1}})));
    CHECK(std::abs(spectral_radius(DenseMatrix{{0, 0.5}, {0.5, 0}}) - 0.5) < 1e-15);
  }

  TEST_CASE("sparse matrices from triplets") {
    const SparseMatrix S = SparseMatrix::from_triplets(
        3, 3, {{0, 0, 1.0}, {2, 1, 4.0}, {0, 0, 2.0}, {1, 2, 5.0}, {1, 2, -5.0}});
    CHECK(S.nnz() == 2);
    CHECK(S.at(0, 0) == Scalar{3.0});
    CHECK(S.at(1, 2) == Scalar{});
    CHECK(S.at(2, 1) == Scalar{4.0});
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), DimensionError);

    Rng rng(5);
    const SparseMatrix P = generate(ProblemSpec::poisson2d(5, 4));
    const Vector x = random_vector(rng, 20, true);
    CHECK(test::rel_diff(P * x, P.to_dense() * x) < 1e-15);
    CHECK(SparseMatrix::from_dense(P.to_dense()) == P);
    CHECK(P.is_symmetric());
    CHECK_FALSE(generate(ProblemSpec::advdiff1d(5, 10.0)).is_symmetric());
  }
}
