#include <doctest.h>

#include <cmath>

#include "archetypal/risk.hpp"
#include "oracles.hpp"

using namespace archetypal;

TEST_CASE("dd_set_set examples") {
  Matrix v(3, 2);
  v << 0, 0, 1, 0, 0, 1;
  Matrix u(1, 2);
  u << 1, 1;
  CHECK(dd_set_set(u, v).value == doctest::Approx(0.5));
  CHECK(dd_set_set(v, v).value < 1e-24);
}

TEST_CASE("risk_lagrangian hand example") {
  Matrix x(2, 2);
  x << 0, 0, 2, 0;
  Matrix h(1, 2);
  h << 1, 0;
  const RiskValue r = risk_lagrangian(x, h, 1.0);
  CHECK(r.fit_term == doctest::Approx(2.0));
  // (1,0) lies on the segment, so the anchoring term is 0, not 1.
  CHECK(r.reg_term < 1e-24);
  CHECK(r.total == doctest::Approx(2.0));
  h << 1, 1;
  const RiskValue r2 = risk_lagrangian(x, h, 1.0);
  CHECK(r2.fit_term == doctest::Approx(4.0));
  CHECK(r2.reg_term == doctest::Approx(1.0));
  CHECK(r2.total == doctest::Approx(5.0));
}

TEST_CASE("risk is quadratic under scaling") {
  CounterRng rng(21);
  for (int t = 0; t < 20; ++t) {
    const Matrix x = oracle::gaussian(rng, 15, 3);
    const Matrix h = oracle::gaussian(rng, 3, 3, 1.5);
    const double c = 0.5 + 2.0 * rng.uniform();
    const double a = risk_lagrangian(x, h, 0.7).total;
    const double b = risk_lagrangian(c * x, c * h, 0.7).total;
    CHECK(b == doctest::Approx(c * c * a).epsilon(1e-9));
  }
}

TEST_CASE("infinite lambda") {
  Matrix x(3, 2);
  x << 0, 0, 1, 0, 0, 1;
  Matrix inside(2, 2);
  inside << 0.2, 0.2, 0.1, 0.3;
  CHECK(std::isfinite(risk_lagrangian(x, inside, INFINITY).total));
  Matrix outside = inside;
  outside(0, 0) = 2.0;
  CHECK(std::isinf(risk_lagrangian(x, outside, INFINITY).total));
}

TEST_CASE("risk_gradient examples") {
  Matrix x(1, 2);
  x << 0, 0;
  Matrix h(1, 2);
  h << 1, 0;
  const RiskGradient g = risk_gradient(x, h, 1.0);
  CHECK(g.value(0, 0) == doctest::Approx(4.0));
  CHECK(std::abs(g.value(0, 1)) < 1e-15);

  Matrix tri(3, 2);
  tri << 0, 0, 1, 0, 0, 1;
  CHECK(risk_gradient(tri, tri, 2.0).value.norm() < 1e-12);

  Matrix dep(3, 2);
  dep << 0, 0, 1, 0, 2, 0;
  CHECK_THROWS_AS(risk_gradient(tri, dep, 1.0), DegeneracyError);
}

TEST_CASE("risk_gradient matches central differences") {
  CounterRng rng(22);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const Matrix x = oracle::gaussian(rng, 12, 3);
    const Matrix h = oracle::gaussian(rng, 3, 3, 1.3);
    const double lambda = 0.1 + rng.uniform();
    const Matrix g = risk_gradient(x, h, lambda, Exec::serial).value;
    const Matrix fd = oracle::central_difference(
        [&](const Matrix& hh) { return risk_lagrangian(x, hh, lambda, Exec::serial).total; },
        h);
    CHECK((g - fd).cwiseAbs().maxCoeff() <= 1e-4 * std::max(1.0, g.cwiseAbs().maxCoeff()));
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("evaluate_risk serial and parallel are bitwise equal") {
  CounterRng rng(23);
  const Matrix x = oracle::gaussian(rng, 200, 4);
  const Matrix h = oracle::gaussian(rng, 3, 4, 2.0);
  const HullProjector hull(x);
  const RiskEvaluation s = evaluate_risk(x, hull, h, 0.5, Exec::serial);
  const RiskEvaluation p = evaluate_risk(x, hull, h, 0.5, Exec::parallel);
  CHECK(s.risk.total == p.risk.total);
  CHECK(s.gradient == p.gradient);
}

TEST_CASE("loss_L examples") {
  Matrix h0(2, 2);
  h0 << 0, 0, 1, 1;
  CHECK(loss_L(h0, h0) == 0.0);
  Matrix perm(2, 2);
  perm << 1, 1, 0, 0;
  CHECK(loss_L(h0, perm) == 0.0);
  Matrix a(1, 2), b(1, 2);
  a << 0, 0;
  b << 3, 4;
  CHECK(loss_L(a, b) == doctest::Approx(25.0));
  Matrix more(3, 2);
  more << 5, 5, 0, 0, 1, 1;
  CHECK(loss_L(h0, more) == 0.0);
}

TEST_CASE("spectrum") {
  Matrix i2 = Matrix::Identity(2, 2);
  const SpectrumDiagnostics s = spectrum(i2);
  CHECK(s.sigma_max == doctest::Approx(1.0));
  CHECK(s.kappa == doctest::Approx(1.0));
  Matrix d(2, 2);
  d << 3, 0, 0, 1;
  CHECK(spectrum(d).kappa == doctest::Approx(3.0));
  CHECK_THROWS_AS(spectrum(Matrix::Zero(2, 2)), InvalidInput);

  // Eigenvalues of H H^T are the squared singular values.
  CounterRng rng(24);
  const Matrix h = oracle::gaussian(rng, 4, 10);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h * h.transpose());
  const Vector ev = eig.eigenvalues();
  CHECK(spectrum(h).kappa == doctest::Approx(std::sqrt(ev.maxCoeff() / ev.minCoeff())).epsilon(1e-9));
}

TEST_CASE("loss bounded by set distances on random pairs") {
  CounterRng rng(25);
  for (int t = 0; t < 200; ++t) {
    const Index r = oracle::uniform_int(rng, 2, 4);
    const Index d = oracle::uniform_int(rng, r, 6);
    const Matrix h0 = oracle::gaussian(rng, r, d);
    const Matrix h = h0 + oracle::gaussian(rng, r, d, 0.5 * rng.uniform());
    const double lhs = std::sqrt(loss_L(h0, h));
    const double rhs =
        std::sqrt(2.0) * spectrum(h0).kappa * std::sqrt(dd_set_set(h0, h).value) +
        (1.0 + std::sqrt(2.0)) * std::sqrt(static_cast<double>(r)) *
            std::sqrt(dd_set_set(h, h0).value);
    CHECK(rhs - lhs >= -1e-9);
  }
}
