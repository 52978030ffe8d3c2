#include "qcurl/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "qcurl/orthopoly.hpp"

namespace qcurl {

ExactSolution manufactured_solution() {
  ExactSolution ex;
  constexpr double pi = M_PI;
  ex.u = [pi](Vec2 p) -> Vec2 {
    const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
    const double sy = std::sin(pi * p.y), cy = std::cos(pi * p.y);
    return {3.0 * pi * sx * sx * sx * sy * sy * cy, -3.0 * pi * sy * sy * sy * sx * sx * cx};
  };
  ex.curl_u = [pi](Vec2 p) {
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    return 6.0 * pi * pi * sx * sy * (3.0 * sx * sx * sy * sy - sx * sx - sy * sy);
  };
  ex.curlcurl_u = [pi](Vec2 p) -> Vec2 {
    const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
    const double sy = std::sin(pi * p.y), cy = std::cos(pi * p.y);
    const double p3 = pi * pi * pi;
    return {6.0 * p3 * (9.0 * sx * sx * sy * sy - sx * sx - 3.0 * sy * sy) * sx * cy,
            6.0 * p3 * (-9.0 * sx * sx * sy * sy + 3.0 * sx * sx + sy * sy) * sy * cx};
  };
  ex.f = [pi](Vec2 p) -> Vec2 {
    const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
    const double sy = std::sin(pi * p.y), cy = std::cos(pi * p.y);
    const double p5 = pi * pi * pi * pi * pi;
    return {12.0 * p5 * (81.0 * sx * sx * sy * sy - 14.0 * sx * sx - 42.0 * sy * sy + 6.0) * sx * cy,
            12.0 * p5 * (-81.0 * sx * sx * sy * sy + 42.0 * sx * sx + 14.0 * sy * sy - 6.0) * sy *
                cx};
  };
  return ex;
}

FieldSample eval_discrete(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& u,
                          int elem, Vec2 refpt) {
  const Quadrilateral quad = element_quad(mesh, elem);
  const JacobianData jd = jacobian(quad, refpt);
  Vec2 vhat{0.0, 0.0}, cghat{0.0, 0.0};
  double chat = 0.0;
  for (std::size_t k = 0; k < dm.modes.size(); ++k) {
    const int gi = dm.u_index[elem][k];
    if (gi < 0) continue;
    const double c = dm.u_sign[elem][k] * u(gi);
    if (c == 0.0) continue;
    const ModeEval me = eval_mode(dm.modes[k], quad, refpt);
    vhat = vhat + c * me.value;
    chat += c * me.curl;
    cghat = cghat + c * me.curl_grad;
  }
  FieldSample out;
  out.value = apply(jd.B_inv_T, vhat);
  out.curl = chat / jd.detJ;
  out.curlcurl = curl_curl_push_forward(quad, refpt, chat, cghat);
  return out;
}

ErrorReport error_norms(const Mesh& mesh, const DofMap& dm, const SpectralOrder& order,
                        const Eigen::VectorXd& u, const ExactSolution& exact, int q) {
  const int nel = mesh.n_elements();
  const QuadratureRule rule = gauss_legendre_rule(q);
  std::vector<double> sq_l2(nel, 0.0), sq_c(nel, 0.0), sq_cc(nel, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (int el = 0; el < nel; ++el) {
    const Quadrilateral quad = element_quad(mesh, el);
    double a = 0.0, b = 0.0, c = 0.0;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        const Vec2 pt{rule.nodes[i], rule.nodes[j]};
        const double wdet = rule.weights[i] * rule.weights[j] * jacobian(quad, pt).detJ;
        const FieldSample fs = eval_discrete(mesh, dm, u, el, pt);
        const Vec2 x = map_to_physical(quad, pt);
        const Vec2 dv = fs.value - exact.u(x);
        const double dc = fs.curl - exact.curl_u(x);
        const Vec2 dcc = fs.curlcurl - exact.curlcurl_u(x);
        a += wdet * dot(dv, dv);
        b += wdet * dc * dc;
        c += wdet * dot(dcc, dcc);
      }
    sq_l2[el] = a;
    sq_c[el] = b;
    sq_cc[el] = c;
  }
  ErrorReport rep;
  double a = 0.0, b = 0.0, c = 0.0;
  for (int el = 0; el < nel; ++el) {
    a += sq_l2[el];
    b += sq_c[el];
    c += sq_cc[el];
  }
  rep.l2 = std::sqrt(a);
  rep.hcurl_semi = std::sqrt(b);
  rep.hcurl2_semi = std::sqrt(c);
  rep.dofs = dm.n_u;
  return rep;
}

std::vector<ErrorReport> convergence_study(MeshKind kind, int levels, const SpectralOrder& order,
                                           std::uint64_t seed, int n0, int quad_count) {
  if (levels < 1) throw std::invalid_argument("convergence_study requires levels >= 1");
  const ExactSolution exact = manufactured_solution();
  const int q = quad_count > 0 ? quad_count : default_quadrature(order);
  Mesh mesh = (kind == MeshKind::Uniform) ? structured_square_mesh(n0)
                                          : perturbed_quad_mesh(n0, 0.2, seed);
  std::vector<ErrorReport> reports;
  for (int level = 0; level < levels; ++level) {
    const DofMap dm = build_dof_map(mesh, order, true);
    const SaddleSystem sys = assemble(mesh, dm, order, exact.f, q);
    const SourceSolution sol = solve_saddle(sys);
    ErrorReport rep = error_norms(mesh, dm, order, sol.u_coeffs, exact, order.N + 6);
    rep.h = 1.0 / (n0 * (1 << level));
    if (!reports.empty()) {
      const ErrorReport& prev = reports.back();
      rep.order_l2 = std::log2(prev.l2 / rep.l2);
      rep.order_hcurl = std::log2(prev.hcurl_semi / rep.hcurl_semi);
      rep.order_hcurl2 = std::log2(prev.hcurl2_semi / rep.hcurl2_semi);
    }
    reports.push_back(rep);
    if (level + 1 < levels) mesh = refine(mesh);
  }
  return reports;
}

double default_shift(Domain domain) { return domain == Domain::Square ? 500.0 : 300.0; }

std::vector<EigenStudyRow> eigen_study(Domain domain, int n, int order_n, int k, double shift) {
  const SpectralOrder order{order_n, order_n, order_n};
  const Mesh mesh = (domain == Domain::Square) ? structured_square_mesh(n) : lshape_mesh(n);
  const DofMap dm = build_dof_map(mesh, order, true);
  const SaddleSystem sys = assemble(mesh, dm, order, VectorField{}, default_quadrature(order));
  const double sigma = shift != 0.0 ? shift : default_shift(domain);
  const EigenSolution sol = solve_eigen(sys, k, sigma);

  std::vector<EigenStudyRow> rows;
  int cluster = 0;
  for (int i = 0; i < k; ++i) {
    if (i > 0 &&
        sol.eigenvalues[i] - sol.eigenvalues[i - 1] > 1e-6 * std::abs(sol.eigenvalues[i]))
      ++cluster;
    rows.push_back({1.0 / n, i + 1, sol.eigenvalues[i], cluster});
  }
  return rows;
}

void write_source_csv(std::ostream& os, const std::vector<ErrorReport>& reports) {
  char buf[512];
  os << "h,dofs,l2_err,l2_order,hcurl_err,hcurl_order,hcurl2_err,hcurl2_order\n";
  for (const ErrorReport& r : reports) {
    const auto field = [&](const std::optional<double>& v) {
      if (!v) return std::string();
      char b[64];
      std::snprintf(b, sizeof(b), "%.17g", *v);
      return std::string(b);
    };
    std::snprintf(buf, sizeof(buf), "%.17g,%ld,%.17g,%s,%.17g,%s,%.17g,%s\n", r.h, r.dofs, r.l2,
                  field(r.order_l2).c_str(), r.hcurl_semi, field(r.order_hcurl).c_str(),
                  r.hcurl2_semi, field(r.order_hcurl2).c_str());
    os << buf;
  }
}

void write_eigen_csv(std::ostream& os, const std::vector<EigenStudyRow>& rows) {
  char buf[128];
  os << "h,index,lambda,cluster_id\n";
  for (const EigenStudyRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%d\n", r.h, r.index, r.lambda, r.cluster_id);
    os << buf;
  }
}

}  // namespace qcurl
