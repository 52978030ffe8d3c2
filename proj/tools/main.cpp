#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qcurl/harness.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitSolverFailure = 3;

// "--h 1/n": the mesh parameter is given as a reciprocal
int parse_inverse_h(const std::string& text) {
  if (text.rfind("1/", 0) != 0) throw CLI::ValidationError("--h", "expected the form 1/<n>");
  const int n = std::stoi(text.substr(2));
  if (n < 1) throw CLI::ValidationError("--h", "denominator must be >= 1");
  return n;
}

qcurl::SpectralOrder parse_order(const std::string& text) {
  int l = 0, m = 0, n = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d", &l, &m, &n) != 3)
    throw CLI::ValidationError("--order", "expected L,M,N");
  const qcurl::SpectralOrder order{l, m, n};
  if (!qcurl::valid_order(order))
    throw CLI::ValidationError("--order", "need L,M,N >= 3 or L=M=N in {1,2}");
  return order;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw CLI::ValidationError("--out", "cannot open output file");
  return os;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral element solver for the two-dimensional quad-curl problem"};
  app.require_subcommand(1);

  std::string domain = "square", mesh_kind = "uniform", order_text = "3,3,3", h_text = "1/10";
  std::string out_path, kind = "source";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int quad_count = 0, num_eigen = 5, order_n = 4, levels = 3;
  double shift = 0.0;

  CLI::App* solve = app.add_subcommand("solve", "solve the manufactured source problem once");
  solve->add_option("--domain", domain)->check(CLI::IsMember({"square"}));
  solve->add_option("--mesh", mesh_kind)->check(CLI::IsMember({"uniform", "perturbed"}));
  solve->add_option("--h", h_text, "mesh size as 1/n");
  solve->add_option("--order", order_text, "spectral order L,M,N");
  solve->add_option("--seed", seed, "perturbed-mesh seed");
  solve->add_option("--quad", quad_count, "quadrature points per direction");
  solve->add_option("--out", out_path)->required();

  CLI::App* eigen = app.add_subcommand("eigen", "solve the eigenvalue problem once");
  eigen->add_option("--domain", domain)->check(CLI::IsMember({"square", "lshape"}));
  eigen->add_option("--h", h_text, "mesh size as 1/n");
  eigen->add_option("--order", order_n, "spectral order N (L=M=N)");
  eigen->add_option("--num", num_eigen, "eigenvalue count");
  eigen->add_option("--shift", shift, "shift-invert target");
  eigen->add_option("--out", out_path)->required();

  CLI::App* study = app.add_subcommand("study", "convergence or eigenvalue study");
  study->add_option("--kind", kind)->check(CLI::IsMember({"source", "eigen"}));
  study->add_option("--domain", domain)->check(CLI::IsMember({"square", "lshape"}));
  study->add_option("--levels", levels)->check(CLI::PositiveNumber);
  study->add_option("--order", order_text, "spectral order L,M,N");
  study->add_option("--seed", seed, "perturbed-mesh seed (selects the perturbed family)");
  study->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
    seed_given = study->count("--seed") > 0;

    if (solve->parsed()) {
      const int n = parse_inverse_h(h_text);
      const qcurl::SpectralOrder order = parse_order(order_text);
      const qcurl::ExactSolution exact = qcurl::manufactured_solution();
      const qcurl::Mesh mesh = (mesh_kind == "uniform")
                                   ? qcurl::structured_square_mesh(n)
                                   : qcurl::perturbed_quad_mesh(n, 0.2, seed);
      const qcurl::DofMap dm = qcurl::build_dof_map(mesh, order, true);
      const int q = quad_count > 0 ? quad_count : qcurl::default_quadrature(order);
      const qcurl::SaddleSystem sys = qcurl::assemble(mesh, dm, order, exact.f, q);
      const qcurl::SourceSolution sol = qcurl::solve_saddle(sys);
      qcurl::ErrorReport rep = qcurl::error_norms(mesh, dm, order, sol.u_coeffs, exact,
                                                  order.N + 6);
      rep.h = 1.0 / n;
      auto os = open_output(out_path);
      qcurl::write_source_csv(os, {rep});
    } else if (eigen->parsed()) {
      const int n = parse_inverse_h(h_text);
      const qcurl::Domain dom =
          domain == "square" ? qcurl::Domain::Square : qcurl::Domain::LShape;
      const auto rows = qcurl::eigen_study(dom, n, order_n, num_eigen, shift);
      auto os = open_output(out_path);
      qcurl::write_eigen_csv(os, rows);
    } else if (study->parsed()) {
      if (kind == "source") {
        if (domain != "square")
          throw CLI::ValidationError("--domain", "source studies run on the square");
        const qcurl::SpectralOrder order = parse_order(order_text);
        const auto kind_sel =
            seed_given ? qcurl::MeshKind::Perturbed : qcurl::MeshKind::Uniform;
        const auto reports = qcurl::convergence_study(kind_sel, levels, order, seed);
        auto os = open_output(out_path);
        qcurl::write_source_csv(os, reports);
      } else {
        const qcurl::SpectralOrder order = parse_order(order_text);
        if (order.L != order.M || order.M != order.N)
          throw CLI::ValidationError("--order", "eigen studies use L=M=N");
        const qcurl::Domain dom =
            domain == "square" ? qcurl::Domain::Square : qcurl::Domain::LShape;
        const int n0 = dom == qcurl::Domain::Square ? 5 : 4;
        std::vector<qcurl::EigenStudyRow> rows;
        for (int level = 0; level < levels; ++level) {
          const auto r = qcurl::eigen_study(dom, n0 * (1 << level), order.N, num_eigen, shift);
          rows.insert(rows.end(), r.begin(), r.end());
        }
        auto os = open_output(out_path);
        qcurl::write_eigen_csv(os, rows);
      }
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const qcurl::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return 0;
}
