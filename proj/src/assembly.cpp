#include "qcurl/assembly.hpp"

#include <stdexcept>
#include <vector>

#include "qcurl/orthopoly.hpp"

namespace qcurl {

namespace {

struct PointBasis {
  std::vector<Vec2> value;      // physical values
  std::vector<Vec2> curlcurl;   // physical curl-curl
  std::vector<Vec2> scalar_grad;
};

void eval_point_basis(const Quadrilateral& quad, const std::vector<Mode>& modes,
                      const std::vector<ScalarMode>& smodes, Vec2 pt, PointBasis& pb) {
  const JacobianData jd = jacobian(quad, pt);
  const auto& c = quad.corners();
  const double xs = 0.25 * ((c[0].x - c[1].x) + (c[2].x - c[3].x));
  const double ys = 0.25 * ((c[0].y - c[1].y) + (c[2].y - c[3].y));
  const Vec2 w = {xs * jd.B.a22 - ys * jd.B.a12, -ys * jd.B.a11 + xs * jd.B.a21};
  const double invJ = 1.0 / jd.detJ;

  pb.value.resize(modes.size());
  pb.curlcurl.resize(modes.size());
  pb.scalar_grad.resize(smodes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const ModeEval me = eval_mode(modes[k], quad, pt);
    pb.value[k] = apply(jd.B_inv_T, me.value);
    const Vec2 v = {me.curl_grad.y - me.curl * invJ * w.x,
                    -me.curl_grad.x - me.curl * invJ * w.y};
    pb.curlcurl[k] = invJ * invJ * apply(jd.B, v);
  }
  for (std::size_t l = 0; l < smodes.size(); ++l) {
    const ScalarEval se = eval_scalar_mode(smodes[l].m, smodes[l].n, pt);
    pb.scalar_grad[l] = apply(jd.B_inv_T, se.gradient);
  }
}

}  // namespace

ElementMatrices element_matrices(const Quadrilateral& quad, const SpectralOrder& order, int q) {
  if (q < 1) throw std::invalid_argument("quadrature count must be >= 1");
  const std::vector<Mode> modes = enumerate_modes(order);
  const std::vector<ScalarMode> smodes = enumerate_scalar_modes(order);
  const QuadratureRule rule = gauss_legendre_rule(q);
  const int nb = static_cast<int>(modes.size());
  const int ns = static_cast<int>(smodes.size());

  ElementMatrices em;
  em.A.setZero(nb, nb);
  em.Mmass.setZero(nb, nb);
  em.B.setZero(nb, ns);

  PointBasis pb;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const Vec2 pt{rule.nodes[i], rule.nodes[j]};
      const double wdet = rule.weights[i] * rule.weights[j] * jacobian(quad, pt).detJ;
      eval_point_basis(quad, modes, smodes, pt, pb);
      for (int k = 0; k < nb; ++k) {
        for (int l = 0; l <= k; ++l) {
          em.A(k, l) += wdet * dot(pb.curlcurl[k], pb.curlcurl[l]);
          em.Mmass(k, l) += wdet * dot(pb.value[k], pb.value[l]);
        }
        for (int l = 0; l < ns; ++l)
          em.B(k, l) += wdet * dot(pb.value[k], pb.scalar_grad[l]);
      }
    }
  // symmetric by construction: mirror the strict lower triangle
  for (int k = 0; k < nb; ++k)
    for (int l = 0; l < k; ++l) {
      em.A(l, k) = em.A(k, l);
      em.Mmass(l, k) = em.Mmass(k, l);
    }
  return em;
}

Eigen::VectorXd element_load(const Quadrilateral& quad, const SpectralOrder& order,
                             const VectorField& f, int q) {
  const std::vector<Mode> modes = enumerate_modes(order);
  const QuadratureRule rule = gauss_legendre_rule(q);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<long>(modes.size()));
  if (!f) return load;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const Vec2 pt{rule.nodes[i], rule.nodes[j]};
      const JacobianData jd = jacobian(quad, pt);
      const double wdet = rule.weights[i] * rule.weights[j] * jd.detJ;
      const Vec2 fx = f(map_to_physical(quad, pt));
      for (std::size_t k = 0; k < modes.size(); ++k) {
        const Vec2 v = apply(jd.B_inv_T, eval_mode(modes[k], quad, pt).value);
        load(static_cast<long>(k)) += wdet * dot(fx, v);
      }
    }
  return load;
}

namespace {

SaddleSystem scatter(const Mesh& mesh, const DofMap& dm,
                     const std::vector<ElementMatrices>& em,
                     const std::vector<Eigen::VectorXd>& loads) {
  SaddleSystem sys;
  sys.n_u = dm.n_u;
  sys.n_p = dm.n_p;
  sys.f = Eigen::VectorXd::Zero(dm.n_u);

  std::vector<Eigen::Triplet<double>> ta, tb, tm;
  for (int el = 0; el < mesh.n_elements(); ++el) {
    const auto& idx = dm.u_index[el];
    const auto& sgn = dm.u_sign[el];
    const auto& pidx = dm.p_index[el];
    const auto& psgn = dm.p_sign[el];
    const int nb = static_cast<int>(idx.size());
    const int ns = static_cast<int>(pidx.size());
    if (em[el].A.rows() != nb || em[el].B.cols() != ns)
      throw std::invalid_argument("element matrices do not match the dof map order");
    for (int i = 0; i < nb; ++i) {
      const int gi = idx[i];
      if (gi < 0) continue;
      sys.f(gi) += sgn[i] * loads[el](i);
      for (int j = 0; j < nb; ++j) {
        const int gj = idx[j];
        if (gj < 0) continue;
        ta.emplace_back(gi, gj, sgn[i] * sgn[j] * em[el].A(i, j));
        tm.emplace_back(gi, gj, sgn[i] * sgn[j] * em[el].Mmass(i, j));
      }
      for (int j = 0; j < ns; ++j) {
        const int gj = pidx[j];
        if (gj < 0) continue;
        tb.emplace_back(gi, gj, sgn[i] * psgn[j] * em[el].B(i, j));
      }
    }
  }
  sys.A.resize(dm.n_u, dm.n_u);
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.Mmass.resize(dm.n_u, dm.n_u);
  sys.Mmass.setFromTriplets(tm.begin(), tm.end());
  sys.B.resize(dm.n_u, dm.n_p);
  sys.B.setFromTriplets(tb.begin(), tb.end());

  // remove rounding asymmetry before factorization
  const Eigen::SparseMatrix<double> at = sys.A.transpose();
  sys.A = 0.5 * (sys.A + at);
  const Eigen::SparseMatrix<double> mt = sys.Mmass.transpose();
  sys.Mmass = 0.5 * (sys.Mmass + mt);
  return sys;
}

}  // namespace

SaddleSystem assemble(const Mesh& mesh, const DofMap& dm, const SpectralOrder& order,
                      const VectorField& f, int q) {
  const int nel = mesh.n_elements();
  std::vector<ElementMatrices> em(nel);
  std::vector<Eigen::VectorXd> loads(nel);
#pragma omp parallel for schedule(dynamic)
  for (int el = 0; el < nel; ++el) {
    const Quadrilateral quad = element_quad(mesh, el);
    em[el] = element_matrices(quad, order, q);
    loads[el] = element_load(quad, order, f, q);
  }
  return scatter(mesh, dm, em, loads);
}

SaddleSystem assemble_serial(const Mesh& mesh, const DofMap& dm, const SpectralOrder& order,
                             const VectorField& f, int q) {
  const int nel = mesh.n_elements();
  std::vector<ElementMatrices> em(nel);
  std::vector<Eigen::VectorXd> loads(nel);
  for (int el = 0; el < nel; ++el) {
    const Quadrilateral quad = element_quad(mesh, el);
    em[el] = element_matrices(quad, order, q);
    loads[el] = element_load(quad, order, f, q);
  }
  return scatter(mesh, dm, em, loads);
}

}  // namespace qcurl
