#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pxp/errors.hpp"
#include "pxp/operators.hpp"
#include "pxp/states.hpp"

using namespace pxp;

namespace {

Complex amp(const StateVector& s, Pattern p) {
  return s.amplitudes()[static_cast<Eigen::Index>(index_of(*s.basis(), p))];
}

}  // namespace

TEST_CASE("polarized") {
  const auto b = make_basis(4);
  const auto p = polarized(b);
  CHECK(p.amplitudes()[0] == Complex(1.0));
  CHECK(p.amplitudes().norm() == 1.0);
  for (int j = 1; j <= 4; ++j) {
    CHECK(build_site_operator(*b, j, Pauli::Z).expectation(p.amplitudes()).real() == -1.0);
  }
  CHECK(fidelity(p, p) == 1.0);
}

TEST_CASE("neel") {
  const auto b = make_basis(4);
  const auto n = neel(b);
  CHECK(n.amplitudes()[4] == Complex(1.0));
  CHECK(index_of(*b, 5) == 4);
  CHECK(fidelity(polarized(b), n) == 0.0);

  const auto b6 = make_basis(6);
  double z = 0.0;
  for (int j = 1; j <= 6; ++j) z += build_site_operator(*b6, j, Pauli::Z).expectation(neel(b6).amplitudes()).real();
  CHECK(z == 0.0);

  // odd L ends excited at site L
  const auto b5 = make_basis(5);
  CHECK(amp(neel(b5), 0b10101) == Complex(1.0));
}

TEST_CASE("theta_plus endpoints are exact") {
  for (int L : {4, 7, 12}) {
    const auto b = make_basis(L);
    CHECK(theta_plus(b, 0.0).amplitudes() == polarized(b).amplitudes());
    CHECK(theta_plus(b, std::numbers::pi / 2).amplitudes() == neel(b).amplitudes());
  }
}

TEST_CASE("theta_plus at pi/4 on four sites") {
  const auto b = make_basis(4);
  const auto s = theta_plus(b, std::numbers::pi / 4);
  CHECK(amp(s, 0b0000).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(amp(s, 0b0101).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(amp(s, 0b0001).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(amp(s, 0b0100).real() == doctest::Approx(0.5).epsilon(1e-15));
  for (Pattern p : {0b0010u, 0b1000u, 0b1001u, 0b1010u}) CHECK(amp(s, p) == Complex(0.0));
  CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-15);
  CHECK(fidelity(s, polarized(b)) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("theta_plus is normalized without projection and continuous") {
  for (int L : {2, 5, 10, 14}) {
    const auto b = make_basis(L);
    for (double t = 0.0; t <= std::numbers::pi / 2; t += 0.1) {
      const auto s = theta_plus(b, t);
      CHECK(std::abs(s.amplitudes().squaredNorm() - 1.0) < 1e-14);
      const double delta = 1e-6;
      if (t + delta <= std::numbers::pi / 2) {
        CHECK((theta_plus(b, t + delta).amplitudes() - s.amplitudes()).norm() < 1e-5 * L);
      }
    }
  }
  const auto b = make_basis(4);
  CHECK_THROWS_AS(theta_plus(b, -0.1), DomainError);
  CHECK_THROWS_AS(theta_plus(b, 1.6), DomainError);
}

TEST_CASE("theta_plus agrees with the general product loader") {
  const auto b = make_basis(8);
  const double t = 0.37;
  ProductStateSpec spec;
  for (int j = 1; j <= 8; ++j) {
    spec.sites.push_back(j % 2 ? std::pair<Complex, Complex>{std::cos(t), std::sin(t)}
                               : std::pair<Complex, Complex>{1.0, 0.0});
  }
  const auto a = product_state(b, spec);
  CHECK((a.amplitudes() - theta_plus(b, t).amplitudes()).norm() < 1e-14);
}

TEST_CASE("product loader projects and renormalizes") {
  const auto b = make_basis(2);
  const double r = 1 / std::sqrt(2.0);
  // (|0> + |1>)(|0> + |1>)/2 loses |11>
  const auto s = product_state(b, {{{r, r}, {r, r}}});
  CHECK(s.amplitudes().cwiseAbs().isApprox(Eigen::VectorXd::Constant(3, 1 / std::sqrt(3.0))));
  CHECK_THROWS_AS(product_state(b, {{{0.0, 1.0}, {0.0, 1.0}}}), InvalidStateError);
  CHECK_THROWS_AS(product_state(b, {{{1.0, 1.0}, {1.0, 0.0}}}), DomainError);
}

TEST_CASE("fidelity is symmetric") {
  const auto b = make_basis(6);
  const auto x = theta_plus(b, 0.3);
  const auto y = theta_plus(b, 1.1);
  CHECK(fidelity(x, y) == fidelity(y, x));
  CHECK(fidelity(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  const auto other = make_basis(6);
  CHECK(fidelity(x, theta_plus(other, 1.1)) == doctest::Approx(fidelity(x, y)));
  CHECK_THROWS(fidelity(x, neel(make_basis(4))));
}

TEST_CASE("state labels") {
  const auto b = make_basis(4);
  CHECK(make_state(b, "neel").amplitudes() == neel(b).amplitudes());
  CHECK(make_state(b, "polarized").amplitudes() == polarized(b).amplitudes());
  const auto t = make_state(b, "theta:0.7853981634");
  CHECK((t.amplitudes() - theta_plus(b, std::numbers::pi / 4).amplitudes()).norm() < 1e-9);
  CHECK_THROWS_AS(validate_state_spec("ferro"), UsageError);
  CHECK_THROWS_AS(validate_state_spec("theta:abc"), UsageError);
  CHECK_THROWS_AS(validate_state_spec("theta:2"), UsageError);
  CHECK_NOTHROW(validate_state_spec("theta:0"));
}
