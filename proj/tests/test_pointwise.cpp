#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinq/g2.hpp"
#include "spinq/pointwise.hpp"
#include "spinq/spin7.hpp"

using namespace spinq;

namespace {

NumForm to_num(const Form& f, const Point& p = Point{}) {
  int n = f.algebra()->dim();
  NumForm out = NumForm::zero(n, f.degree());
  for (const auto& [idx, c] : f.coefficients()) out.c[tuple_rank(idx, n)] = c.eval(p.values);
  return out;
}

}  // namespace

TEST_CASE("numeric ops agree with symbolic ops on random forms") {
  auto a = FrameAlgebra::create(7, {});
  std::mt19937_64 rng(31);
  auto rnd = [&](int deg) {
    Form f = Form::zero(a, deg);
    for (const auto& idx : increasing_tuples(7, deg)) {
      long long num = static_cast<long long>(rng() % 9) - 4;
      if (num) f += Form::term(a, idx, Scalar(num));
    }
    return f;
  };
  for (int trial = 0; trial < 10; ++trial) {
    Form x = rnd(2), y = rnd(3);
    NumForm nx = to_num(x), ny = to_num(y);
    CHECK((num_wedge(nx, ny) - to_num(wedge(x, y))).max_abs() < 1e-12);
    CHECK((num_hodge(nx) - to_num(hodge(x))).max_abs() < 1e-12);
    CHECK(num_pair(nx, nx) == doctest::Approx(norm_sq(x).rational_value().to_double()));
    Eigen::VectorXd v(7);
    for (int i = 0; i < 7; ++i) v(i) = static_cast<double>(static_cast<long long>(rng() % 5) - 2);
    VectorField vf{a, std::vector<Scalar>(7, Scalar(0))};
    for (int i = 0; i < 7; ++i) vf.components[i] = Scalar(static_cast<long long>(v(i)));
    CHECK((num_interior(v, ny) - to_num(interior(vf, y))).max_abs() < 1e-12);
  }
}

TEST_CASE("restriction to a rotated frame preserves model structures") {
  // restrict Phi0 on flat R^8 to a random oriented orthonormal frame: the
  // resulting numeric G2/Spin(7) data keeps its algebraic invariants
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(8, {});
  Form Phi = standard_Phi0(a);
  std::mt19937_64 rng(5);
  Eigen::MatrixXd seed(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) seed(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  Eigen::MatrixXd legs = orthonormal_frame(seed, Eigen::MatrixXd(0, 8), 8);
  if (legs.determinant() < 0) legs.row(7) = -legs.row(7);  // keep orientation
  NumForm nPhi = restrict_to_frame(Phi, Point{}, legs);
  // Phi ^ Phi = 14 vol survives rotation
  NumForm prod = num_wedge(nPhi, nPhi);
  CHECK(prod.c[0] == doctest::Approx(14.0));
  CHECK((num_hodge(nPhi) - nPhi).max_abs() < 1e-9);
  // torsion extraction of the constant form with zero derivative
  NumSpin7 s{nPhi};
  auto t = num_spin7_torsion(s, NumForm::zero(8, 5));
  CHECK(t.T1.max_abs() < 1e-12);
  CHECK(t.T5.max_abs() < 1e-12);
}

TEST_CASE("numeric j inverts numeric i") {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(8, {});
  NumSpin7 s{to_num(standard_Phi0(a))};
  std::mt19937_64 rng(9);
  Eigen::MatrixXd h(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j) {
      h(i, j) = static_cast<double>(static_cast<long long>(rng() % 11) - 5) / 2.0;
      h(j, i) = h(i, j);
    }
  Eigen::MatrixXd back = num_extract_j(s, num_insert_i(s, h));
  CHECK((back - h).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hitchin J and metric recover the standard SU(3) data") {
  // omega = e12 + e34 + e56, Omega = (e1 + i e2)(e3 + i e4)(e5 + i e6)
  NumForm omega = NumForm::zero(6, 2);
  omega.at({1, 2}) = 1;
  omega.at({3, 4}) = 1;
  omega.at({5, 6}) = 1;
  NumForm op = NumForm::zero(6, 3);  // real part: e135 - e146 - e236 - e245
  op.at({1, 3, 5}) = 1;
  op.at({1, 4, 6}) = -1;
  op.at({2, 3, 6}) = -1;
  op.at({2, 4, 5}) = -1;
  Eigen::MatrixXd J = hitchin_J(op);
  CHECK((J * J + Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-9);
  // J e1 = e2 pattern up to overall sign; fix the sign via omega-compatibility
  Eigen::MatrixXd g = su3_metric(omega, J);
  double sgn = g(0, 0) > 0 ? 1.0 : -1.0;
  if (sgn < 0) {
    J = -J;
    g = su3_metric(omega, J);
  }
  CHECK((g - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((J.col(0) - Eigen::VectorXd::Unit(6, 1)).cwiseAbs().maxCoeff() < 1e-9);
  // Omega^- = Im: e136 + e145 + e235 - e246
  NumForm om = NumForm::zero(6, 3);
  om.at({1, 3, 6}) = 1;
  om.at({1, 4, 5}) = 1;
  om.at({2, 3, 5}) = 1;
  om.at({2, 4, 6}) = -1;
  // -Omega^+(J ., ., .) averaged over slots equals Omega^-
  NumForm avg = NumForm::zero(6, 3);
  for (const auto& idx : increasing_tuples(6, 3)) {
    double v = 0;
    for (int slot = 0; slot < 3; ++slot) {
      Indices jdx = idx;
      Eigen::VectorXd col = J.col(idx[slot] - 1);
      for (int k = 1; k <= 6; ++k) {
        if (col(k - 1) == 0.0) continue;
        jdx[slot] = k;
        v += col(k - 1) * op.get(jdx);
      }
      jdx[slot] = idx[slot];
    }
    avg.at(idx) = -v / 3.0;
  }
  CHECK((avg - om).max_abs() < 1e-9);
}

TEST_CASE("orthonormal frame with kernel rows") {
  Eigen::MatrixXd kernel(1, 4);
  kernel << 1, 1, 0, 0;
  Eigen::MatrixXd fr = orthonormal_frame(Eigen::MatrixXd(0, 4), kernel, 3);
  CHECK(fr.rows() == 3);
  for (int r = 0; r < 3; ++r) {
    CHECK(std::fabs(fr.row(r).dot(kernel.row(0))) < 1e-12);
    CHECK(fr.row(r).norm() == doctest::Approx(1.0));
  }
}
