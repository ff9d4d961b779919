#include "gcinf/geometry.hpp"

#include "gcinf/error.hpp"

namespace gcinf {

LocalGeometry::LocalGeometry(const JetMatrix& g) : n_(g.rows()), order_(g.order()), g_(g.symmetrized()) {
  if (g.rows() != g.cols()) throw DimensionError("metric jets must form a square matrix");
  // Positivity check with the smallest eigenvalue attached.
  (void)MetricValue(g_.sym2_value());
  ginv_ = gcinf::inverse(g_).symmetrized();
  const int n = n_;
  if (order_ >= 1) {
    std::vector<JetMatrix> dg;
    dg.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dg.push_back(g_.derivative(i));
    // First kind: [ij,l] = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
    JetArray first(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          Jet v = (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                   dg[static_cast<std::size_t>(l)](i, j)) *
                  0.5;
          first.at({i, j, l}) = v;
          first.at({j, i, l}) = std::move(v);
        }
    gamma_ = JetArray(n, 3);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Jet s(0.0);
          for (int l = 0; l < n; ++l) s += ginv_(k, l) * first.at({i, j, l});
          gamma_.at({k, i, j}) = s;
          gamma_.at({k, j, i}) = std::move(s);
        }
  }
  if (order_ >= 2) {
    // dgamma[i] holds d_i Gamma.
    std::vector<JetArray> dgamma(static_cast<std::size_t>(n), JetArray(n, 3));
    for (int i = 0; i < n; ++i)
      for (std::size_t f = 0; f < gamma_.size(); ++f) dgamma[static_cast<std::size_t>(i)].flat(f) = gamma_.flat(f).derivative(i);
    // R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
    JetArray up(n, 4);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            Jet r = dgamma[static_cast<std::size_t>(i)].at({l, j, k}) - dgamma[static_cast<std::size_t>(j)].at({l, i, k});
            for (int m = 0; m < n; ++m) {
              r += gamma_.at({l, i, m}) * gamma_.at({m, j, k});
              r -= gamma_.at({l, j, m}) * gamma_.at({m, i, k});
            }
            up.at({l, j, i, k}) = -r;
            up.at({l, i, j, k}) = std::move(r);
          }
    rm_ = JetArray(n, 4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Jet s(0.0);
            for (int m = 0; m < n; ++m) s += g_(l, m) * up.at({m, i, j, k});
            rm_.at({i, j, k, l}) = std::move(s);
          }
      }
    ric_ = JetMatrix(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Jet s(0.0);
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) s += ginv_(i, l) * rm_.at({i, j, k, l});
        ric_(j, k) = s;
        ric_(k, j) = std::move(s);
      }
    Jet s(0.0);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += ginv_(j, k) * ric_(j, k);
    scalar_ = std::move(s);
  }
}

LocalGeometry LocalGeometry::at(const Sym2Field& g, std::span<const double> p, int order, const DerivEngine& engine) {
  return LocalGeometry(engine.sym2(g, p, order));
}

Tensor3Value LocalGeometry::christoffel_value() const {
  if (order_ < 1) throw Error("christoffel symbols need metric jets of order >= 1");
  return gamma_.tensor3_value();
}

const JetArray& LocalGeometry::riemann() const {
  if (order_ < 2) throw Error("curvature needs metric jets of order >= 2");
  return rm_;
}

const JetMatrix& LocalGeometry::ricci() const {
  if (order_ < 2) throw Error("curvature needs metric jets of order >= 2");
  return ric_;
}

const Jet& LocalGeometry::scalar() const {
  if (order_ < 2) throw Error("curvature needs metric jets of order >= 2");
  return scalar_;
}

JetArray LocalGeometry::nabla_sym2(const JetMatrix& T) const {
  const int n = n_;
  JetArray out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet s = T(j, k).derivative(i);
        for (int m = 0; m < n; ++m) {
          s -= gamma_.at({m, i, j}) * T(m, k);
          s -= gamma_.at({m, i, k}) * T(j, m);
        }
        out.at({i, j, k}) = std::move(s);
      }
  return out;
}

JetArray LocalGeometry::nabla_endo(const JetMatrix& B) const {
  const int n = n_;
  JetArray out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet s = B(a, b).derivative(i);
        for (int c = 0; c < n; ++c) {
          s += gamma_.at({a, i, c}) * B(c, b);
          s -= gamma_.at({c, i, b}) * B(a, c);
        }
        out.at({i, a, b}) = std::move(s);
      }
  return out;
}

JetArray LocalGeometry::nabla_tensor4(const JetArray& Q) const {
  const int n = n_;
  JetArray out(n, 5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            Jet s = Q.at({j, k, l, m}).derivative(i);
            for (int r = 0; r < n; ++r) {
              s -= gamma_.at({r, i, j}) * Q.at({r, k, l, m});
              s -= gamma_.at({r, i, k}) * Q.at({j, r, l, m});
              s -= gamma_.at({r, i, l}) * Q.at({j, k, r, m});
              s -= gamma_.at({r, i, m}) * Q.at({j, k, l, r});
            }
            out.at({i, j, k, l, m}) = std::move(s);
          }
  return out;
}

JetArray LocalGeometry::dnabla_endo(const JetMatrix& B) const {
  const int n = n_;
  const JetArray nb = nabla_endo(B);
  JetArray out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) out.at({i, j, a}) = nb.at({i, a, j}) - nb.at({j, a, i});
  return out;
}

JetArray LocalGeometry::dnabla_sym2(const JetMatrix& T) const {
  const int n = n_;
  const JetArray nt = nabla_sym2(T);
  JetArray out(n, 3);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) out.at({x, y, z}) = nt.at({y, x, z}) - nt.at({z, x, y});
  return out;
}

JetMatrix LocalGeometry::hessian(const Jet& u) const {
  const int n = n_;
  std::vector<Jet> du;
  du.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) du.push_back(u.derivative(i));
  JetMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet s = du[static_cast<std::size_t>(i)].derivative(j);
      for (int k = 0; k < n; ++k) s -= gamma_.at({k, i, j}) * du[static_cast<std::size_t>(k)];
      h(i, j) = s;
      h(j, i) = std::move(s);
    }
  return h;
}

std::vector<Jet> LocalGeometry::gradient(const Jet& u) const {
  const int n = n_;
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet s(0.0);
    for (int j = 0; j < n; ++j) s += ginv_(i, j) * u.derivative(j);
    out.push_back(std::move(s));
  }
  return out;
}

Jet LocalGeometry::laplacian(const Jet& u) const {
  const JetMatrix h = hessian(u);
  Jet s(0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += ginv_(i, j) * h(i, j);
  return s;
}

Jet LocalGeometry::gradient_norm_sq(const Jet& u) const {
  Jet s(0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += ginv_(i, j) * u.derivative(i) * u.derivative(j);
  return s;
}

std::vector<double> LocalGeometry::connection(std::span<const double> X, std::span<const double> Y) const {
  if (order_ < 1) throw Error("connection needs metric jets of order >= 1");
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        out[static_cast<std::size_t>(k)] += gamma_.at({k, i, j}).value() * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace gcinf
