#include "cohav/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "cohav/errors.hpp"

namespace cohav {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::zzzz: return "zzzz";
    case ModelKind::zzxx: return "zzxx";
    case ModelKind::zzzx: return "zzzx";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "zzzz") return ModelKind::zzzz;
  if (lower == "zzxx") return ModelKind::zzxx;
  if (lower == "zzzx") return ModelKind::zzzx;
  throw InvalidArgument("unknown model kind '" + std::string(name) + "' (expected zzzz, zzxx or zzzx)");
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::x: return "x";
    case Param::omega0: return "omega0";
    case Param::omega1: return "omega1";
  }
  return "unknown";
}

Param parse_param(std::string_view name) {
  if (name == "x") return Param::x;
  if (name == "omega0" || name == "w0") return Param::omega0;
  if (name == "omega1" || name == "w1") return Param::omega1;
  throw InvalidArgument("unknown parameter '" + std::string(name) + "' (expected x, omega0 or omega1)");
}

void ModelSpec::validate() const {
  for (double v : {delta, epsilon, omega0, omega1, x, t}) {
    if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
  }
  if (t < 0.0) throw InvalidArgument("evolution time must be >= 0");
}

std::vector<Channel> interaction_channels(ModelKind kind) {
  switch (kind) {
    case ModelKind::zzzz: return {{pauli_z(), pauli_z()}};
    case ModelKind::zzxx: return {{pauli_x(), pauli_x()}};
    case ModelKind::zzzx: return {{pauli_z(), pauli_x()}};
  }
  throw InvalidArgument("unknown model kind");
}

namespace {

void require_probes(int n_probes) {
  if (n_probes < 1) throw InvalidArgument("number of probes must be >= 1");
}

// epsilon * x * (K (x) B) added into h.
void add_interaction(Eigen::MatrixXd& h, ModelKind kind, int n, double scale) {
  for (int k = 0; k <= n; ++k) {
    const double m = 0.5 * n - k;
    switch (kind) {
      case ModelKind::zzzz:
        h(2 * k, 2 * k) += scale * m;
        h(2 * k + 1, 2 * k + 1) -= scale * m;
        break;
      case ModelKind::zzzx:
        h(2 * k, 2 * k + 1) += scale * m;
        h(2 * k + 1, 2 * k) += scale * m;
        break;
      case ModelKind::zzxx:
        if (k < n) {
          const double v = scale * jx_element(n, k);
          // (k, s) <-> (k+1, 1-s)
          h(2 * k, 2 * (k + 1) + 1) += v;
          h(2 * (k + 1) + 1, 2 * k) += v;
          h(2 * k + 1, 2 * (k + 1)) += v;
          h(2 * (k + 1), 2 * k + 1) += v;
        }
        break;
    }
  }
}

}  // namespace

HamiltonianMatrix assemble(const ModelSpec& spec, int n_probes) {
  spec.validate();
  require_probes(n_probes);
  const Eigen::Index d = 2 * (Eigen::Index(n_probes) + 1);
  HamiltonianMatrix h{n_probes, spec.kind, Eigen::MatrixXd::Zero(d, d)};
  for (int k = 0; k <= n_probes; ++k) {
    const double m = 0.5 * n_probes - k;
    h.matrix(2 * k, 2 * k) = spec.delta * (spec.omega1 * m + 0.5 * spec.omega0);
    h.matrix(2 * k + 1, 2 * k + 1) = spec.delta * (spec.omega1 * m - 0.5 * spec.omega0);
  }
  add_interaction(h.matrix, spec.kind, n_probes, spec.epsilon * spec.x);
  return h;
}

Eigen::MatrixXd assemble_x_derivative(const ModelSpec& spec, int n_probes) {
  spec.validate();
  require_probes(n_probes);
  const Eigen::Index d = 2 * (Eigen::Index(n_probes) + 1);
  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(d, d);
  add_interaction(dh, spec.kind, n_probes, spec.epsilon);
  return dh;
}

Eigen::MatrixXd assemble_derivative(const ModelSpec& spec, int n_probes, Param p) {
  if (p == Param::x) return assemble_x_derivative(spec, n_probes);
  spec.validate();
  require_probes(n_probes);
  const Eigen::Index d = 2 * (Eigen::Index(n_probes) + 1);
  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k <= n_probes; ++k) {
    for (int s = 0; s < 2; ++s) {
      const Eigen::Index i = SymmetricState::index(k, s);
      dh(i, i) = p == Param::omega1 ? spec.delta * (0.5 * n_probes - k) : spec.delta * (s == 0 ? 0.5 : -0.5);
    }
  }
  return dh;
}

// ---------------------------------------------------------------------------
// Eigensystem

Eigensystem::Eigensystem(Eigen::Index dim, std::vector<Block> blocks) : dim_(dim), blocks_(std::move(blocks)) {}

Eigen::VectorXd Eigensystem::values() const {
  Eigen::VectorXd all(dim_);
  Eigen::Index pos = 0;
  for (const auto& b : blocks_) {
    all.segment(pos, b.values.size()) = b.values;
    pos += b.values.size();
  }
  std::sort(all.data(), all.data() + all.size());
  return all;
}

Eigen::MatrixXd Eigensystem::vectors() const {
  struct Col {
    double value;
    std::size_t block;
    Eigen::Index col;
  };
  std::vector<Col> cols;
  cols.reserve(std::size_t(dim_));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (Eigen::Index c = 0; c < blocks_[b].values.size(); ++c) cols.push_back({blocks_[b].values[c], b, c});
  }
  std::stable_sort(cols.begin(), cols.end(), [](const Col& a, const Col& b) { return a.value < b.value; });
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim_, dim_);
  for (Eigen::Index j = 0; j < dim_; ++j) {
    const auto& c = cols[std::size_t(j)];
    const auto& blk = blocks_[c.block];
    for (std::size_t r = 0; r < blk.index.size(); ++r) v(blk.index[r], j) = blk.vectors(Eigen::Index(r), c.col);
  }
  return v;
}

Eigen::VectorXcd Eigensystem::propagate(const Eigen::VectorXcd& psi, double t) const {
  if (psi.size() != dim_) throw InvalidArgument("state dimension does not match Hamiltonian");
  Eigen::VectorXcd out(dim_);
  for (const auto& b : blocks_) {
    const Eigen::Index n = Eigen::Index(b.index.size());
    Eigen::VectorXd re(n), im(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      re[r] = psi[b.index[std::size_t(r)]].real();
      im[r] = psi[b.index[std::size_t(r)]].imag();
    }
    Eigen::VectorXd cre = b.vectors.transpose() * re;
    Eigen::VectorXd cim = b.vectors.transpose() * im;
    for (Eigen::Index c = 0; c < n; ++c) {
      const std::complex<double> z = std::complex<double>(cre[c], cim[c]) * std::polar(1.0, -b.values[c] * t);
      cre[c] = z.real();
      cim[c] = z.imag();
    }
    re.noalias() = b.vectors * cre;
    im.noalias() = b.vectors * cim;
    for (Eigen::Index r = 0; r < n; ++r) out[b.index[std::size_t(r)]] = {re[r], im[r]};
  }
  return out;
}

namespace {

// sin(z)/z
double sinc(double z) { return std::abs(z) < 1e-4 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

}  // namespace

Eigen::VectorXcd propagation_difference(const Eigensystem& a, const Eigensystem& b, const Eigen::MatrixXd& dh,
                                        double t, const Eigen::VectorXcd& psi) {
  const Eigen::Index d = a.dim();
  if (b.dim() != d || psi.size() != d || dh.rows() != d || dh.cols() != d) {
    throw InvalidArgument("propagation_difference: dimension mismatch");
  }
  const auto& ab = a.blocks();
  std::vector<std::size_t> owner(static_cast<std::size_t>(d));
  std::vector<Eigen::VectorXcd> coeff(ab.size());
  std::vector<Eigen::VectorXcd> half_phase(ab.size());
  for (std::size_t i = 0; i < ab.size(); ++i) {
    const Eigen::Index n = Eigen::Index(ab[i].index.size());
    Eigen::VectorXcd local(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      owner[std::size_t(ab[i].index[std::size_t(r)])] = i;
      local[r] = psi[ab[i].index[std::size_t(r)]];
    }
    coeff[i] = ab[i].vectors.transpose().cast<std::complex<double>>() * local;
    half_phase[i] = (ab[i].values * (-0.5 * t)).unaryExpr([](double p) { return std::polar(1.0, p); });
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
  for (const auto& bb : b.blocks()) {
    const Eigen::Index nb = Eigen::Index(bb.index.size());
    std::vector<std::size_t> touched;
    for (Eigen::Index r : bb.index)
      for (Eigen::Index c = 0; c < d; ++c)
        if (dh(r, c) != 0.0) touched.push_back(owner[std::size_t(c)]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    if (touched.empty()) continue;

    const Eigen::VectorXcd phase_b = (bb.values * (-0.5 * t)).unaryExpr([](double p) { return std::polar(1.0, p); });
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(nb);
    for (std::size_t ai : touched) {
      const auto& blk = ab[ai];
      const Eigen::Index na = Eigen::Index(blk.index.size());
      Eigen::MatrixXd sub(nb, na);
      for (Eigen::Index r = 0; r < nb; ++r)
        for (Eigen::Index c = 0; c < na; ++c) sub(r, c) = dh(bb.index[std::size_t(r)], blk.index[std::size_t(c)]);
      const Eigen::MatrixXd m = bb.vectors.transpose() * sub * blk.vectors;
      for (Eigen::Index k = 0; k < na; ++k) {
        const std::complex<double> ck = half_phase[ai][k] * coeff[ai][k];
        if (ck == 0.0) continue;
        for (Eigen::Index j = 0; j < nb; ++j) {
          y[j] += m(j, k) * sinc(0.5 * (bb.values[j] - blk.values[k]) * t) * ck;
        }
      }
    }
    y = (std::complex<double>(0.0, -t) * phase_b.array() * y.array()).matrix();
    const Eigen::VectorXcd local = bb.vectors.cast<std::complex<double>>() * y;
    for (Eigen::Index r = 0; r < nb; ++r) out[bb.index[std::size_t(r)]] += local[r];
  }
  return out;
}

namespace {

Eigensystem::Block solve_tridiagonal(std::vector<Eigen::Index> order, const Eigen::MatrixXd& h) {
  const lapack_int n = lapack_int(order.size());
  Eigensystem::Block blk;
  if (n == 1) {
    blk.values = Eigen::VectorXd::Constant(1, h(order[0], order[0]));
    blk.vectors = Eigen::MatrixXd::Identity(1, 1);
    blk.index = std::move(order);
    return blk;
  }
  std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n), 0.0);
  for (lapack_int i = 0; i < n; ++i) d[std::size_t(i)] = h(order[std::size_t(i)], order[std::size_t(i)]);
  for (lapack_int i = 0; i + 1 < n; ++i) e[std::size_t(i)] = h(order[std::size_t(i)], order[std::size_t(i) + 1]);
  blk.values.resize(n);
  blk.vectors.resize(n, n);
  std::vector<lapack_int> isuppz(2 * std::size_t(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0,
                                         &found, blk.values.data(), blk.vectors.data(), n, isuppz.data());
  if (info != 0 || found != n) {
    throw NumericalError("tridiagonal eigensolver (dstevr) failed: info=" + std::to_string(info) + ", found " +
                         std::to_string(found) + " of " + std::to_string(n) + " eigenpairs");
  }
  blk.index = std::move(order);
  return blk;
}

Eigensystem::Block solve_dense(std::vector<Eigen::Index> index, const Eigen::MatrixXd& h) {
  const lapack_int n = lapack_int(index.size());
  Eigensystem::Block blk;
  blk.vectors.resize(n, n);
  for (lapack_int c = 0; c < n; ++c)
    for (lapack_int r = 0; r < n; ++r) blk.vectors(r, c) = h(index[std::size_t(r)], index[std::size_t(c)]);
  blk.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, blk.vectors.data(), n, blk.values.data());
  if (info != 0) {
    throw NumericalError("dense symmetric eigensolver (dsyevd) failed to converge: info=" + std::to_string(info) +
                         " for a block of size " + std::to_string(n));
  }
  blk.index = std::move(index);
  return blk;
}

}  // namespace

Eigensystem eigensystem(const Eigen::MatrixXd& h) {
  const Eigen::Index d = h.rows();
  if (h.cols() != d || d == 0) throw InvalidArgument("eigensystem needs a non-empty square matrix");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("eigensystem input is not symmetric");
  }

  // Sparsity graph.
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(d));
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < c; ++r)
      if (h(r, c) != 0.0) {
        adj[std::size_t(r)].push_back(c);
        adj[std::size_t(c)].push_back(r);
      }

  std::vector<Eigensystem::Block> blocks;
  std::vector<char> seen(std::size_t(d), 0);
  for (Eigen::Index start = 0; start < d; ++start) {
    if (seen[std::size_t(start)]) continue;
    // Collect the component.
    std::vector<Eigen::Index> comp{start};
    seen[std::size_t(start)] = 1;
    std::size_t edges2 = 0;
    bool path_like = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto& nb = adj[std::size_t(comp[i])];
      edges2 += nb.size();
      if (nb.size() > 2) path_like = false;
      for (Eigen::Index v : nb)
        if (!seen[std::size_t(v)]) {
          seen[std::size_t(v)] = 1;
          comp.push_back(v);
        }
    }
    // A connected graph with max degree 2 and |E| = |V| - 1 is a path.
    path_like = path_like && edges2 / 2 + 1 == comp.size();
    if (!path_like) {
      std::sort(comp.begin(), comp.end());
      blocks.push_back(solve_dense(std::move(comp), h));
      continue;
    }
    Eigen::Index end = comp.front();
    for (Eigen::Index v : comp)
      if (adj[std::size_t(v)].size() <= 1) {
        end = v;
        break;
      }
    std::vector<Eigen::Index> order{end};
    Eigen::Index prev = -1, cur = end;
    while (order.size() < comp.size()) {
      for (Eigen::Index v : adj[std::size_t(cur)])
        if (v != prev) {
          prev = cur;
          cur = v;
          break;
        }
      order.push_back(cur);
    }
    blocks.push_back(solve_tridiagonal(std::move(order), h));
  }
  return Eigensystem(d, std::move(blocks));
}

Eigensystem eigensystem(const HamiltonianMatrix& h) { return eigensystem(h.matrix); }

HermitianEigensystem eigensystem(const Eigen::MatrixXcd& a) {
  const Eigen::Index d = a.rows();
  if (a.cols() != d || d == 0) throw InvalidArgument("eigensystem needs a non-empty square matrix");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("eigensystem input is not Hermitian");
  }
  HermitianEigensystem es{Eigen::VectorXd(d), a};
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', lapack_int(d), es.vectors.data(),
                                         lapack_int(d), es.values.data());
  if (info != 0) {
    throw NumericalError("Hermitian eigensolver (zheevd) failed to converge: info=" + std::to_string(info));
  }
  return es;
}

SymmetricState evolve(const Eigensystem& es, double t, const SymmetricState& psi0) {
  if (es.dim() != psi0.dim()) throw InvalidArgument("state dimension does not match Hamiltonian");
  if (t == 0.0) return psi0;
  Eigen::VectorXcd out = es.propagate(psi0.amplitudes(), t);
  if (std::abs(out.norm() - 1.0) > 1e-10) throw NumericalError("propagation lost unitarity");
  return SymmetricState(psi0.n_probes(), std::move(out));
}

SymmetricState evolve(const HamiltonianMatrix& h, double t, const SymmetricState& psi0) {
  if (h.matrix.rows() != psi0.dim() || h.n_probes != psi0.n_probes()) {
    throw InvalidArgument("state dimension does not match Hamiltonian");
  }
  if (t == 0.0) return psi0;
  if (h.kind == ModelKind::zzzz) {
    Eigen::VectorXcd out = psi0.amplitudes();
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, -h.matrix(i, i) * t);
    return SymmetricState(psi0.n_probes(), std::move(out));
  }
  return evolve(eigensystem(h), t, psi0);
}

SymmetricState propagate_product_state(const ModelSpec& spec, int n_probes, const StateAngles& angles) {
  return evolve(assemble(spec, n_probes), spec.t, build_product_state(n_probes, angles));
}

}  // namespace cohav
