#include <doctest.h>

#include "rbamg/random.hpp"
#include "rbamg/transfer_flow.hpp"
#include "support.hpp"

using namespace rbamg;

TEST_SUITE("splitting") {
  TEST_CASE("CFSplit validates its coarse set") {
    const CFSplit s(5, {3, 1});
    CHECK(s.coarse() == std::vector<Index>{1, 3});
    CHECK(s.fine() == std::vector<Index>{0, 2, 4});
    CHECK(s.is_coarse(3));
    CHECK_FALSE(s.is_coarse(0));
    CHECK_THROWS_AS(CFSplit(3, {}), PreconditionError);
    CHECK_THROWS_AS(CFSplit(2, {0, 1}), PreconditionError);
    CHECK_THROWS_AS(CFSplit(4, {1, 1}), PreconditionError);
    CHECK_THROWS_AS(CFSplit(4, {4}), PreconditionError);
  }

  TEST_CASE("stride, every-other and red-black splits") {
    CHECK(every_other_split(7).coarse() == std::vector<Index>{1, 3, 5});
    CHECK(stride_split(10, 3, 0).coarse() == std::vector<Index>{0, 3, 6, 9});
    CHECK_THROWS_AS(stride_split(10, 0, 0), PreconditionError);
    const CFSplit rb = red_black_split(3, 2);
    CHECK(rb.coarse() == std::vector<Index>{0, 2, 4});
  }

  TEST_CASE("canonical basis for n = 2 and n = 3") {
    const TransferBasis b2 = canonical_basis(CFSplit(2, {0}));
    CHECK(b2.P == DenseMatrix{{1}, {0}});
    CHECK(b2.Q == DenseMatrix{{0}, {1}});
    CHECK(b2.P_dual == b2.P.transpose());
    CHECK(b2.Q_dual == b2.Q.transpose());

    const TransferBasis b3 = canonical_basis(CFSplit(3, {1}));
    CHECK(b3.P == DenseMatrix{{0}, {1}, {0}});
    CHECK(b3.P * b3.P_dual + b3.Q * b3.Q_dual == DenseMatrix::identity(3));
  }

  TEST_CASE("canonical basis relations hold exactly on random splits") {
    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
      const TransferBasis b = canonical_basis(random_split(rng, 8, 3));
      CHECK(basis_residuals(b).worst() == 0.0);
    }
  }

  TEST_CASE("basis_from_columns completes P") {
    const CFSplit split(5, {0, 1});
    const TransferBasis canon = canonical_basis(split);
    const TransferBasis again = basis_from_columns(canon.P, canon.P_dual);
    CHECK(test::max_abs_diff(again.Q, canon.Q) < 1e-15);
    CHECK(test::max_abs_diff(again.Q_dual, canon.Q_dual) < 1e-15);

    const TransferBasis b = basis_from_columns(DenseMatrix{{1}, {1}}, DenseMatrix{{1, 0}});
    CHECK(std::abs(b.Q_dual(0, 0) + 1.0) < 1e-15);
    CHECK(std::abs(b.Q_dual(0, 1) - 1.0) < 1e-15);
    CHECK(test::max_abs_diff(b.Q, DenseMatrix{{0}, {1}}) < 1e-15);
    CHECK(basis_residuals(b).worst() < 1e-15);
  }

  TEST_CASE("basis_from_columns on random well-conditioned input") {
    Rng rng(32);
    const DenseMatrix G = random_well_conditioned(rng, 10, true);
    const DenseMatrix P = G.block(0, 0, 10, 4);
    const DenseMatrix P_dual = inverse(G).block(0, 0, 4, 10);
    CHECK(basis_residuals(basis_from_columns(P, P_dual)).worst() <= 1e-11);
    CHECK(basis_residuals(random_basis(rng, 10, 4, true)).worst() <= 1e-11);
  }

  TEST_CASE("basis_from_columns rejects rank-deficient or mismatched input") {
    const DenseMatrix P{{1, 2}, {1, 2}, {0, 0}};
    CHECK_THROWS_AS(basis_from_columns(P, P.transpose()), PreconditionError);
    CHECK_THROWS_AS(basis_from_columns(DenseMatrix{{1}, {0}}, DenseMatrix{{1, 0, 0}}),
                    DimensionError);
    CHECK_THROWS_AS(basis_from_pair(DenseMatrix{{1}, {0}}, DenseMatrix{{1}, {0}}),
                    PreconditionError);
  }

  TEST_CASE("restriction: rank check and R_hat A = R A_hat") {
    Rng rng(33);
    const auto s = test::jacobi(ProblemSpec::advdiff1d(8, 12.0));
    const DenseMatrix R = random_matrix(rng, 3, 8);
    const Restriction r = make_restriction(R, s);
    REQUIRE(r.R_hat.has_value());
    CHECK(test::max_abs_diff(*r.R_hat * s.A, R * s.A_hat) < 1e-13);
    CHECK_THROWS_AS(make_restriction(DenseMatrix(2, 8), s), PreconditionError);
    CHECK_THROWS_AS(make_restriction(DenseMatrix(2, 7), s), DimensionError);
  }

  TEST_CASE("R A_hat Q: ideal restriction vs P_dual") {
    const auto s = test::jacobi(ProblemSpec::poisson1d(9));
    const CFSplit split = every_other_split(9);
    const TransferBasis b = canonical_basis(split);
    CHECK(check_orthogonality_RAQ(ideal_restriction(s, split), s, b) <= 1e-12);
    CHECK(check_orthogonality_RAQ(b.P_dual, s, b) > 0.1);
  }
}
