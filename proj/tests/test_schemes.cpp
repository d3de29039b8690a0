#include <doctest.h>

#include "rbamg/memory.hpp"
#include "rbamg/random.hpp"
#include "rbamg/schemes.hpp"
#include "rbamg/transfer_flow.hpp"
#include "support.hpp"

using namespace rbamg;

namespace {

struct Problem {
  RelaxationSetup s;
  Vector b, x0, x;
  Problem(RelaxationSetup setup, Rng& rng, bool zero_rhs = false)
      : s(std::move(setup)),
        b(zero_rhs ? Vector(s.size()) : random_vector(rng, s.size())),
        x0(random_vector(rng, s.size())),
        x(solve_dense(s.A, b)) {}
  Vector e0() const { return x - x0; }
  Vector error(const CycleResult& r) const { return x - r.x_new; }
};

}  // namespace

TEST_SUITE("schemes") {
  TEST_CASE("scheme names round-trip") {
    for (Scheme s : {Scheme::markovian, Scheme::semi_markovian, Scheme::non_markovian, Scheme::exact})
      CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(scheme_from_string("galerkin"), Error);
  }

  TEST_CASE("every scheme leaves the exact solution in place") {
    Rng rng(51);
    const auto s = test::jacobi(ProblemSpec::poisson1d(9));
    const CFSplit split = every_other_split(9);
    const TransferBasis b = ideal_basis(s, split);
    const DenseMatrix R = ideal_restriction(s, split);
    const Vector rhs = random_vector(rng, 9);
    const Vector x = solve_dense(s.A, rhs);
    for (Scheme sc : {Scheme::markovian, Scheme::semi_markovian, Scheme::non_markovian, Scheme::exact}) {
      const CycleResult r = run_cycle(sc, s, b, R, rhs, x, 3);
      CHECK(test::rel_diff(r.x_new, x) <= 1e-12);
      CHECK(r.coarse_solution.norm() <= 1e-12);
    }
  }

  TEST_CASE("markovian with R A_hat Q = 0 leaves Q Q_dual T^k e0") {
    Rng rng(52);
    const CFSplit split = every_other_split(16);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(16)), rng);
    const TransferBasis b = ideal_basis(p.s, split);
    const DenseMatrix R = ideal_restriction(p.s, split);
    const CycleResult r = markovian_cycle(p.s, b, R, p.b, p.x0, 3);
    const Vector expect = b.Q * (b.Q_dual * test::apply_power(p.s.T, p.e0(), 3));
    CHECK(test::rel_diff(p.error(r), expect) <= 1e-11);
  }

  TEST_CASE("markovian error matches the assembled propagator") {
    Rng rng(53);
    const CFSplit split = every_other_split(32);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(32)), rng);
    const TransferBasis b = canonical_basis(split);
    const DenseMatrix R = ideal_restriction(p.s, split);
    const CycleResult r = markovian_cycle(p.s, b, R, p.b, p.x0, 3, {.assemble_propagator = true});
    REQUIRE(r.propagator.has_value());
    const Vector predicted = *r.propagator * p.e0();
    CHECK(std::abs(p.error(r).norm() / p.e0().norm() - predicted.norm() / p.e0().norm()) <= 1e-10);
    CHECK(test::rel_diff(p.error(r), predicted) <= 1e-10);
  }

  TEST_CASE("markovian with a singular coarse operator") {
    Rng rng(54);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(6)), rng);
    const TransferBasis b = canonical_basis(every_other_split(6));
    CHECK_THROWS_AS(markovian_cycle(p.s, b, DenseMatrix(3, 6), p.b, p.x0, 2), SingularError);
    CHECK_THROWS_AS(markovian_cycle(p.s, b, b.P_dual, p.b, p.x0, 0), PreconditionError);
    CHECK_THROWS_AS(markovian_cycle(p.s, b, DenseMatrix(2, 6), p.b, p.x0, 1), DimensionError);
  }

  TEST_CASE("semi-markovian: nilpotent Tqq solves in one cycle") {
    Rng rng(55);
    const CFSplit split(3, {1});
    const Problem p(test::jacobi(ProblemSpec::poisson1d(3), 1.0), rng);
    const TransferBasis b = canonical_basis(split);
    const DenseMatrix R = ideal_restriction(p.s, split);
    const CycleResult r = semi_markovian_cycle(p.s, b, R, p.b, p.x0, 1);
    CHECK(p.error(r).norm() <= 1e-11 * p.e0().norm());
  }

  TEST_CASE("semi-markovian error is Q Tqq^k Q_dual e0") {
    Rng rng(56);
    const CFSplit split = every_other_split(16);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(16)), rng);
    const TransferBasis b = canonical_basis(split);
    const DenseMatrix R = ideal_restriction(p.s, split);
    const CycleResult r = semi_markovian_cycle(p.s, b, R, p.b, p.x0, 4);
    const DenseMatrix tqq = b.Q_dual * p.s.T * b.Q;
    CHECK(test::rel_diff(p.error(r), b.Q * test::apply_power(tqq, b.Q_dual * p.e0(), 4)) <= 1e-11);
  }

  TEST_CASE("semi-markovian rejects R A_hat Q != 0 and quotes the norm") {
    Rng rng(57);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(8)), rng);
    const TransferBasis b = canonical_basis(every_other_split(8));
    try {
      (void)semi_markovian_cycle(p.s, b, b.P_dual, p.b, p.x0, 2);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      const double raq = check_orthogonality_RAQ(b.P_dual, p.s, b);
      std::ostringstream v;
      v << raq;
      CHECK(std::string(e.what()).find(v.str()) != std::string::npos);
    }
  }

  TEST_CASE("non-markovian agrees with semi-markovian when R A_hat Q = 0") {
    Rng rng(58);
    const CFSplit split = every_other_split(16);
    const Problem p(test::jacobi(ProblemSpec::advdiff1d(16, 20.0)), rng);
    const TransferBasis b = canonical_basis(split);
    const DenseMatrix R = ideal_restriction(p.s, split);
    const CycleResult semi = semi_markovian_cycle(p.s, b, R, p.b, p.x0, 3);
    const CycleResult non = non_markovian_cycle(p.s, b, R, p.b, p.x0, 3);
    CHECK(test::rel_diff(non.x_new, semi.x_new) <= 1e-11);
  }

  TEST_CASE("non-markovian is exact when Q_dual T Q = 0") {
    Rng rng(59);
    const CFSplit split(3, {1});
    const Problem p(test::jacobi(ProblemSpec::poisson1d(3), 1.0), rng);
    const TransferBasis b = canonical_basis(split);
    const CycleResult r = non_markovian_cycle(p.s, b, b.P_dual, p.b, p.x0, 1);
    CHECK(p.error(r).norm() <= 1e-11 * p.e0().norm());
  }

  TEST_CASE("non-markovian error matches the assembled propagator") {
    Rng rng(60);
    const Problem p(test::jacobi(ProblemSpec::poisson1d(16)), rng);
    const TransferBasis b = random_basis(rng, 16, 8);
    const CycleResult r = non_markovian_cycle(p.s, b, b.P_dual, p.b, p.x0, 3, {.assemble_propagator = true});
    CHECK(test::rel_diff(p.error(r), *r.propagator * p.e0()) <= 1e-10);
    CHECK(r.memory_correction_norm > 0.0);
  }

  TEST_CASE("exact scheme converges in one cycle for random transfers") {
    Rng rng(61);
    const Problem p(test::jacobi(ProblemSpec::advdiff1d(8, 10.0)), rng);
    for (int t = 0; t < 3; ++t) {
      const TransferBasis b = random_basis(rng, 8, 3, true);
      const DenseMatrix R = random_matrix(rng, 3, 8, true);
      const CycleResult r = exact_cycle(p.s, b, R, p.b, p.x0, 1, {.exact_solution = p.x});
      CHECK(p.error(r).norm() <= 1e-10 * p.e0().norm());
      CHECK(r.effective_operator_mismatch <= 1e-10);
      CHECK(r.noise_norm.has_value());
    }
    CHECK(assemble_propagator(Scheme::exact, p.s, canonical_basis(every_other_split(8)),
                              canonical_basis(every_other_split(8)).P_dual, 2)
              .max_abs() == 0.0);
  }

  TEST_CASE("exact scheme effective operators agree") {
    Rng rng(62);
    const auto s = test::jacobi(ProblemSpec::poisson1d(10));
    const TransferBasis b = random_basis(rng, 10, 4);
    const DenseMatrix R = random_matrix(rng, 4, 10);
    const auto ops = exact_effective_operators(s, b, R);
    CHECK(test::max_abs_diff(ops.A_sigma, ops.R_tilde * s.A_hat * b.P) <= 1e-12 * ops.A_sigma.max_abs());
    CHECK((b.Q_dual * s.A_hat * ops.P_tilde).max_abs() <= 1e-12);
  }

  TEST_CASE("exact scheme rejects Tqq^k with an eigenvalue at 1") {
    Rng rng(63);
    const DenseMatrix A = test::dense(ProblemSpec::poisson1d(3));
    const auto s = build_setup(A, DenseMatrix{{0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0}});
    const TransferBasis b = canonical_basis(CFSplit(3, {1}));
    const Vector rhs = random_vector(rng, 3), x0 = random_vector(rng, 3);
    try {
      (void)exact_cycle(s, b, b.P_dual, rhs, x0, 2);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("larger k") != std::string::npos);
    }
  }
}
