#include "test_main.hpp"

#include <random>

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/oracle/full_hilbert.hpp"
#include "helpers.hpp"

using namespace cohav;
using cohav::testing::pi;

namespace {

ModelSpec random_spec(ModelKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {kind, u(rng), u(rng), u(rng), u(rng), u(rng), std::abs(u(rng))};
}

Eigen::MatrixXcd projected_full_hamiltonian(const ModelSpec& spec, int n) {
  const Eigen::MatrixXcd iso = oracle::symmetric_isometry(n);
  return iso.adjoint() * oracle::hamiltonian(spec, n) * iso;
}

}  // namespace

TEST_CASE("ZZZZ N=1 Hamiltonian matches the 4x4 tensor construction") {
  const auto h = assemble(testing::unit_spec(ModelKind::zzzz), 1);
  const Eigen::MatrixXcd ref = projected_full_hamiltonian(testing::unit_spec(ModelKind::zzzz), 1);
  CHECK((h.matrix.cast<cplx>() - ref).cwiseAbs().maxCoeff() < 1e-15);
  // Frozen from the oracle: order (m,s) = (1/2,0), (1/2,1), (-1/2,0), (-1/2,1).
  const Eigen::Vector4d expected(1.5, -0.5, -0.5, -0.5);
  CHECK(h.matrix.diagonal().isApprox(expected));
  CHECK(h.matrix.isDiagonal());
}

TEST_CASE("zero couplings give the zero matrix") {
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    ModelSpec s = testing::unit_spec(kind);
    s.delta = 0.0;
    s.epsilon = 0.0;
    CHECK(assemble(s, 6).matrix.isZero(0.0));
  }
}

TEST_CASE("assembled Hamiltonians equal the full-space Hamiltonian restricted to the symmetric sector") {
  std::mt19937_64 rng(21);
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    for (int n = 1; n <= 8; ++n) {
      const ModelSpec spec = random_spec(kind, rng);
      const auto h = assemble(spec, n);
      CHECK((h.matrix.cast<cplx>() - projected_full_hamiltonian(spec, n)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
      if (kind == ModelKind::zzzz) CHECK(h.matrix.isDiagonal());
    }
  }
}

TEST_CASE("x-derivative of the Hamiltonian") {
  const ModelSpec s{ModelKind::zzxx, 0.7, 1.3, 0.4, 0.9, 1.1, 1.0};
  const double h = 1e-6;
  const Eigen::MatrixXd fd =
      (assemble(with_parameter(s, Param::x, s.x + h), 5).matrix - assemble(with_parameter(s, Param::x, s.x - h), 5).matrix) /
      (2 * h);
  CHECK((fd - assemble_x_derivative(s, 5)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("model and parameter names") {
  CHECK(parse_model_kind("ZZXX") == ModelKind::zzxx);
  CHECK(to_string(ModelKind::zzzx) == "zzzx");
  CHECK_THROWS_AS(parse_model_kind("zzyy"), InvalidArgument);
  CHECK(parse_param("w1") == Param::omega1);
  CHECK_THROWS_AS(parse_param("delta"), InvalidArgument);
  ModelSpec bad = testing::unit_spec(ModelKind::zzzz);
  bad.t = -1.0;
  CHECK_THROWS_AS(assemble(bad, 2), InvalidArgument);
  bad.t = 1.0;
  bad.x = std::nan("");
  CHECK_THROWS_AS(assemble(bad, 2), InvalidArgument);
  CHECK_THROWS_AS(assemble(testing::unit_spec(ModelKind::zzzz), 0), InvalidArgument);
}

TEST_CASE("eigensystem: diagonal input gives sorted values and a permutation") {
  Eigen::MatrixXd d = Eigen::Vector4d(3.0, -1.0, 2.0, 0.5).asDiagonal();
  const auto es = eigensystem(d);
  CHECK(es.values().isApprox(Eigen::Vector4d(-1.0, 0.5, 2.0, 3.0)));
  const Eigen::MatrixXd v = es.vectors();
  CHECK((v.cwiseAbs().rowwise().sum().array() == 1.0).all());
  CHECK((v.cwiseAbs().colwise().sum().array() == 1.0).all());
}

TEST_CASE("eigensystem: Pauli X spectrum") {
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  const auto es = eigensystem(x);
  CHECK(es.values()[0] == doctest::Approx(-1.0));
  CHECK(es.values()[1] == doctest::Approx(1.0));
}

TEST_CASE("eigensystem: random complex Hermitian d=50 is unitarily diagonalized") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) a(i, j) = {g(rng), g(rng)};
  a = (a + a.adjoint()).eval();
  const auto es = eigensystem(a);
  CHECK((es.vectors.adjoint() * es.vectors - Eigen::MatrixXcd::Identity(50, 50)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a * es.vectors - es.vectors * es.values.asDiagonal()).norm() < 1e-9 * a.norm());
  for (int i = 1; i < 50; ++i) CHECK(es.values[i] >= es.values[i - 1]);
  CHECK_THROWS_AS(eigensystem(Eigen::MatrixXcd(Eigen::MatrixXcd::Random(4, 4))), InvalidArgument);
}

TEST_CASE("eigensystem: residual and orthogonality for structured and dense real input") {
  std::mt19937_64 rng(8);
  std::vector<Eigen::MatrixXd> inputs;
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) inputs.push_back(assemble(random_spec(kind, rng), 60).matrix);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Random(40, 40);
  inputs.push_back(dense + dense.transpose());
  // A cycle: forces the dense path for one component.
  Eigen::MatrixXd ring = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) ring(i, (i + 1) % 6) = ring((i + 1) % 6, i) = 1.0;
  inputs.push_back(ring);
  for (const auto& h : inputs) {
    const auto es = eigensystem(h);
    const Eigen::MatrixXd v = es.vectors();
    const Eigen::VectorXd w = es.values();
    CHECK((h * v - v * w.asDiagonal()).norm() <= 1e-9 * std::max(1.0, h.norm()));
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff() < 1e-10);
    for (Eigen::Index i = 1; i < w.size(); ++i) CHECK(w[i] >= w[i - 1]);
  }
  // ZZXX splits into two parity chains.
  const auto zzxx = eigensystem(assemble(testing::unit_spec(ModelKind::zzxx), 10));
  CHECK(zzxx.blocks().size() == 2);
}

TEST_CASE("evolve: t = 0 is the identity") {
  const auto psi = build_product_state(6, testing::figure_angles());
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    const auto out = evolve(assemble(testing::unit_spec(kind), 6), 0.0, psi);
    CHECK((out.amplitudes().array() == psi.amplitudes().array()).all());
  }
}

TEST_CASE("evolve: pure dephasing keeps amplitude moduli") {
  const auto psi = build_product_state(7, testing::favorable_angles());
  for (double t : {0.3, 1.0, 17.0}) {
    const auto out = evolve(assemble(testing::unit_spec(ModelKind::zzzz), 7), t, psi);
    CHECK((out.amplitudes().cwiseAbs() - psi.amplitudes().cwiseAbs()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("evolve: ZZXX N=4 matches full-space propagation") {
  const ModelSpec spec = testing::unit_spec(ModelKind::zzxx);
  const auto out = evolve(assemble(spec, 4), 1.0, build_product_state(4, testing::figure_angles()));
  const Eigen::VectorXcd full = oracle::propagate(spec, 4, oracle::product_state(4, testing::figure_angles()), 1.0);
  CHECK((out.amplitudes() - oracle::project_symmetric(4, full)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS(evolve(assemble(spec, 3), 1.0, build_product_state(4, testing::figure_angles())), InvalidArgument);
}

TEST_CASE("full-space propagation stays in the symmetric sector and matches evolve, N <= 10") {
  std::mt19937_64 rng(99);
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    for (int n = 1; n <= 10; ++n) {
      const ModelSpec spec = random_spec(kind, rng);
      const auto ang = testing::random_angles(rng);
      const Eigen::VectorXcd full = oracle::propagate(spec, n, oracle::product_state(n, ang), spec.t);
      const Eigen::VectorXcd proj = oracle::project_symmetric(n, full);
      CHECK(std::abs(proj.norm() - 1.0) < 1e-10);
      const auto sym = evolve(assemble(spec, n), spec.t, build_product_state(n, ang));
      CHECK((sym.amplitudes() - proj).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("evolve: unitarity, composition and energy conservation") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    for (int n : {1, 3, 16, 80}) {
      const ModelSpec spec = random_spec(kind, rng);
      const auto h = assemble(spec, n);
      const auto es = eigensystem(h);
      const auto psi = build_product_state(n, testing::random_angles(rng));
      const double t1 = ut(rng), t2 = ut(rng);
      const auto a = evolve(h, t1 + t2, psi);
      const auto b = evolve(es, t2, evolve(es, t1, psi));
      CHECK(std::abs(a.norm() - 1.0) < 1e-10);
      CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-9);
      const Eigen::MatrixXcd hc = h.matrix.cast<cplx>();
      const double e0 = psi.amplitudes().dot(hc * psi.amplitudes()).real();
      const double e1 = a.amplitudes().dot(hc * a.amplitudes()).real();
      CHECK(std::abs(e0 - e1) < 1e-9 * std::max(1.0, hc.norm()));
    }
  }
}

TEST_CASE("propagation difference equals the subtracted propagations") {
  std::mt19937_64 rng(77);
  for (auto kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    for (auto p : {Param::x, Param::omega0, Param::omega1}) {
      const ModelSpec spec = random_spec(kind, rng);
      const int n = 9;
      const double h = 1e-2;
      const auto psi = build_product_state(n, testing::random_angles(rng));
      const Eigen::MatrixXd dh = assemble_derivative(spec, n, p);
      const double theta = parameter_value(spec, p);
      const auto ha = assemble(with_parameter(spec, p, theta - h), n);
      const auto hb = assemble(with_parameter(spec, p, theta + h), n);
      CHECK((hb.matrix - ha.matrix - 2.0 * h * dh).cwiseAbs().maxCoeff() < 1e-13);
      const Eigen::VectorXcd direct = evolve(hb, spec.t, psi).amplitudes() - evolve(ha, spec.t, psi).amplitudes();
      const Eigen::VectorXcd duhamel =
          propagation_difference(eigensystem(ha), eigensystem(hb), 2.0 * h * dh, spec.t, psi.amplitudes());
      CHECK((direct - duhamel).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("propagation difference across different block structures") {
  // x = 0 makes H_a diagonal while H_b couples.
  ModelSpec spec = testing::unit_spec(ModelKind::zzxx);
  spec.x = 0.0;
  const int n = 5;
  const auto psi = build_product_state(n, testing::figure_angles());
  const auto ha = assemble(spec, n);
  const auto hb = assemble(with_parameter(spec, Param::x, 0.3), n);
  const Eigen::VectorXcd direct = evolve(hb, 1.0, psi).amplitudes() - evolve(ha, 1.0, psi).amplitudes();
  const Eigen::VectorXcd duhamel = propagation_difference(eigensystem(ha), eigensystem(hb),
                                                          0.3 * assemble_x_derivative(spec, n), 1.0, psi.amplitudes());
  CHECK((direct - duhamel).cwiseAbs().maxCoeff() < 1e-12);
}
