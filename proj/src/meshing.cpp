#include "qcurl/meshing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcurl/orthopoly.hpp"

namespace qcurl {

namespace {

// local edge i joins local corner (i+3)%4 to local corner i (ccw)
inline int edge_start_corner(int i) { return (i + 3) % 4; }
inline int edge_end_corner(int i) { return i; }

}  // namespace

Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 4>> elements) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.elements = std::move(elements);
  mesh.element_edges.assign(mesh.elements.size(), {-1, -1, -1, -1});

  std::map<std::pair<int, int>, int> edge_of;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& el = mesh.elements[e];
    for (int v : el)
      if (v < 0 || v >= mesh.n_vertices())
        throw std::invalid_argument("element references a vertex out of range");
    element_quad(mesh, e);  // validates convexity and orientation
    for (int le = 0; le < 4; ++le) {
      const int a = el[edge_start_corner(le)];
      const int b = el[edge_end_corner(le)];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_of.try_emplace(key, mesh.n_edges());
      if (inserted) {
        MeshEdge me;
        me.v0 = key.first;
        me.v1 = key.second;
        me.elem[0] = e;
        me.local[0] = le;
        mesh.edges.push_back(me);
      } else {
        MeshEdge& me = mesh.edges[it->second];
        if (me.elem[1] != -1)
          throw std::invalid_argument("non-conforming mesh: edge shared by more than two elements");
        me.elem[1] = e;
        me.local[1] = le;
        me.boundary = false;
      }
      mesh.element_edges[e][le] = it->second;
    }
  }
  mesh.boundary_vertex.assign(mesh.n_vertices(), false);
  for (const MeshEdge& me : mesh.edges)
    if (me.boundary) {
      mesh.boundary_vertex[me.v0] = true;
      mesh.boundary_vertex[me.v1] = true;
    }
  return mesh;
}

Quadrilateral element_quad(const Mesh& mesh, int elem) {
  const auto& el = mesh.elements[elem];
  return Quadrilateral({mesh.vertices[el[0]], mesh.vertices[el[1]], mesh.vertices[el[2]],
                        mesh.vertices[el[3]]});
}

Mesh structured_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("structured_square_mesh requires n >= 1");
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  std::vector<std::array<int, 4>> elems;
  elems.reserve(static_cast<std::size_t>(n) * n);
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      elems.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return make_mesh(std::move(verts), std::move(elems));
}

Mesh perturbed_quad_mesh(int n, double magnitude, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("perturbed_quad_mesh requires n >= 1");
  if (magnitude < 0.0 || magnitude >= 0.25)
    throw std::invalid_argument("perturbation magnitude must lie in [0, 0.25)");
  Mesh base = structured_square_mesh(n);
  const double h = 1.0 / n;
  SplitMix64 rng(seed);
  // Interior vertices in id order, x offset drawn before y.
  std::vector<Vec2> verts = base.vertices;
  for (int v = 0; v < base.n_vertices(); ++v) {
    if (base.boundary_vertex[v]) continue;
    verts[v].x += magnitude * h * rng.symmetric();
    verts[v].y += magnitude * h * rng.symmetric();
  }
  return make_mesh(std::move(verts), base.elements);
}

Mesh lshape_mesh(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("lshape_mesh requires even n >= 2");
  const int half = n / 2;
  std::vector<int> vid(static_cast<std::size_t>(n + 1) * (n + 1), -1);
  std::vector<Vec2> verts;
  std::vector<std::array<int, 4>> elems;
  const auto grid = [n](int i, int j) { return j * (n + 1) + i; };
  const auto use_vertex = [&](int i, int j) {
    int& id = vid[grid(i, j)];
    if (id < 0) {
      id = static_cast<int>(verts.size());
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
    return id;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i >= half && j >= half) continue;  // removed quadrant
      elems.push_back({use_vertex(i, j), use_vertex(i + 1, j), use_vertex(i + 1, j + 1),
                       use_vertex(i, j + 1)});
    }
  return make_mesh(std::move(verts), std::move(elems));
}

Mesh refine(const Mesh& mesh) {
  std::vector<Vec2> verts = mesh.vertices;
  std::vector<std::array<int, 4>> elems;
  elems.reserve(4 * mesh.elements.size());

  std::map<std::pair<int, int>, int> midpoint_of;
  const auto midpoint = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto [it, inserted] = midpoint_of.try_emplace(key, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    return it->second;
  };

  for (const auto& el : mesh.elements) {
    const int m01 = midpoint(el[0], el[1]);
    const int m12 = midpoint(el[1], el[2]);
    const int m23 = midpoint(el[2], el[3]);
    const int m30 = midpoint(el[3], el[0]);
    const int ctr = static_cast<int>(verts.size());
    verts.push_back(0.25 * (mesh.vertices[el[0]] + mesh.vertices[el[1]] + mesh.vertices[el[2]] +
                            mesh.vertices[el[3]]));
    elems.push_back({el[0], m01, ctr, m30});
    elems.push_back({m01, el[1], m12, ctr});
    elems.push_back({ctr, m12, el[2], m23});
    elems.push_back({m30, ctr, m23, el[3]});
  }
  return make_mesh(std::move(verts), std::move(elems));
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  char buf[128];
  os << "quadmesh v1\n";
  os << "vertices " << mesh.n_vertices() << "\n";
  for (const Vec2& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x, v.y);
    os << buf;
  }
  os << "elements " << mesh.n_elements() << "\n";
  for (const auto& el : mesh.elements)
    os << el[0] << " " << el[1] << " " << el[2] << " " << el[3] << "\n";
}

Mesh read_mesh(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "quadmesh v1")
    throw std::invalid_argument("mesh file: missing 'quadmesh v1' header");
  std::string word;
  int count = 0;
  if (!(is >> word >> count) || word != "vertices" || count < 0)
    throw std::invalid_argument("mesh file: malformed vertex block");
  std::vector<Vec2> verts(count);
  for (Vec2& v : verts)
    if (!(is >> v.x >> v.y)) throw std::invalid_argument("mesh file: truncated vertex block");
  if (!(is >> word >> count) || word != "elements" || count < 0)
    throw std::invalid_argument("mesh file: malformed element block");
  std::vector<std::array<int, 4>> elems(count);
  for (auto& el : elems)
    if (!(is >> el[0] >> el[1] >> el[2] >> el[3]))
      throw std::invalid_argument("mesh file: truncated element block");
  return make_mesh(std::move(verts), std::move(elems));
}

namespace {

constexpr double kTraceSamples[3] = {-0.943828276, 0.314159265, 0.785398163};

// Canonical 1D traces on a globally directed edge of length len.
double canonical_function_trace(int slot_index, double len, double t) {
  if (slot_index == 0) return 1.0 / len;  // lowest mode
  const int k = slot_index + 1;           // slots 1.. carry indices 2..M
  return (k - 1.0) * jacobi_eval(k - 1, 0.0, 0.0, t).value / len;
}

double canonical_curl_trace(int k, double t) { return k22_eval(k, t).derivative; }

double canonical_scalar_trace(int k, double t) { return k11_eval(k, t).value; }

// Snaps ratio of sampled traces to +-1; throws if the traces do not match.
template <typename LocalF, typename CanonF>
double match_sign(LocalF&& local, CanonF&& canon) {
  double best_abs = 0.0, best_local = 0.0, best_canon = 0.0, scale = 0.0;
  for (double t : kTraceSamples) {
    const double c = canon(t);
    scale = std::max(scale, std::abs(c));
    if (std::abs(c) > best_abs) {
      best_abs = std::abs(c);
      best_canon = c;
      best_local = local(t);
    }
  }
  if (best_abs == 0.0) throw std::runtime_error("degenerate canonical edge trace");
  const double sign = best_local / best_canon > 0.0 ? 1.0 : -1.0;
  for (double t : kTraceSamples) {
    if (std::abs(local(t) - sign * canon(t)) > 1e-9 * std::max(1.0, scale))
      throw std::runtime_error("edge trace does not match canonical trace up to sign");
  }
  return sign;
}

}  // namespace

DofMap build_dof_map(const Mesh& mesh, const SpectralOrder& order, bool homogeneous) {
  DofMap dm;
  dm.order = order;
  dm.homogeneous = homogeneous;
  dm.modes = enumerate_modes(order);
  dm.scalar_modes = enumerate_scalar_modes(order);

  for (const Mode& m : dm.modes) {
    if (m.family == ModeFamily::FunctionEdge || m.family == ModeFamily::FunctionEdgeLow ||
        m.family == ModeFamily::TildeFunctionEdgeLow) {
      if (m.entity == 0) ++dm.edge_func_count;
    } else if (m.family == ModeFamily::CurlEdge) {
      if (m.entity == 0) ++dm.edge_curl_count;
    } else if (m.family == ModeFamily::InteriorPhi || m.family == ModeFamily::InteriorPsi) {
      ++dm.interior_count;
    }
  }
  const int edge_block = dm.edge_func_count + dm.edge_curl_count;

  int p_interior_count = 0, p_edge_count = 0;
  for (const ScalarMode& s : dm.scalar_modes) {
    if (s.kind == ScalarKind::Interior) ++p_interior_count;
    if (s.kind == ScalarKind::Edge && s.entity == 0) ++p_edge_count;
  }

  // Global u numbering: vertices, then edge blocks, then interiors.
  dm.u_vertex_dof.assign(mesh.n_vertices(), -1);
  dm.u_edge_offset.assign(mesh.n_edges(), -1);
  dm.u_interior_offset.assign(mesh.n_elements(), -1);
  int next = 0;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (!(homogeneous && mesh.boundary_vertex[v])) dm.u_vertex_dof[v] = next++;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (!(homogeneous && mesh.edges[e].boundary)) {
      dm.u_edge_offset[e] = next;
      next += edge_block;
    }
  for (int el = 0; el < mesh.n_elements(); ++el) {
    dm.u_interior_offset[el] = next;
    next += dm.interior_count;
  }
  dm.n_u = next;

  dm.p_vertex_dof.assign(mesh.n_vertices(), -1);
  dm.p_edge_offset.assign(mesh.n_edges(), -1);
  dm.p_interior_offset.assign(mesh.n_elements(), -1);
  next = 0;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (!(homogeneous && mesh.boundary_vertex[v])) dm.p_vertex_dof[v] = next++;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (!(homogeneous && mesh.edges[e].boundary)) {
      dm.p_edge_offset[e] = next;
      next += p_edge_count;
    }
  for (int el = 0; el < mesh.n_elements(); ++el) {
    dm.p_interior_offset[el] = next;
    next += p_interior_count;
  }
  dm.n_p = next;

  dm.u_index.assign(mesh.n_elements(), {});
  dm.u_sign.assign(mesh.n_elements(), {});
  dm.p_index.assign(mesh.n_elements(), {});
  dm.p_sign.assign(mesh.n_elements(), {});

  for (int el = 0; el < mesh.n_elements(); ++el) {
    const Quadrilateral quad = element_quad(mesh, el);
    auto& idx = dm.u_index[el];
    auto& sgn = dm.u_sign[el];
    idx.assign(dm.modes.size(), -1);
    sgn.assign(dm.modes.size(), 1.0);

    int interior_seen = 0;
    std::array<int, 4> func_seen{0, 0, 0, 0};
    std::array<int, 4> curl_seen{0, 0, 0, 0};

    for (std::size_t im = 0; im < dm.modes.size(); ++im) {
      const Mode& mode = dm.modes[im];
      switch (mode.family) {
        case ModeFamily::InteriorPhi:
        case ModeFamily::InteriorPsi:
          idx[im] = dm.u_interior_offset[el] + interior_seen++;
          break;
        case ModeFamily::Vertex:
        case ModeFamily::TildeVertex: {
          const int gv = mesh.elements[el][mode.entity];
          idx[im] = dm.u_vertex_dof[gv];
          break;
        }
        case ModeFamily::FunctionEdge:
        case ModeFamily::FunctionEdgeLow:
        case ModeFamily::TildeFunctionEdgeLow: {
          const int le = mode.entity;
          const int slot = func_seen[le]++;
          const int ge = mesh.element_edges[el][le];
          const MeshEdge& edge = mesh.edges[ge];
          const int start_gv = mesh.elements[el][edge_start_corner(le)];
          const bool same_dir = (start_gv == edge.v0);
          const double flip = same_dir ? 1.0 : -1.0;
          const double len = quad.edge_length(le);
          const double s = match_sign(
              [&](double t) {
                return flip * edge_trace(mode, quad, le, same_dir ? t : -t).tangential;
              },
              [&](double t) { return canonical_function_trace(slot, len, t); });
          if (dm.u_edge_offset[ge] >= 0) idx[im] = dm.u_edge_offset[ge] + slot;
          sgn[im] = s;
          break;
        }
        case ModeFamily::CurlEdge: {
          const int le = mode.entity;
          const int slot = curl_seen[le]++;
          const int ge = mesh.element_edges[el][le];
          const MeshEdge& edge = mesh.edges[ge];
          const int start_gv = mesh.elements[el][edge_start_corner(le)];
          const bool same_dir = (start_gv == edge.v0);
          const int k = (le == 0 || le == 2) ? mode.n : mode.m;
          const double s = match_sign(
              [&](double t) { return edge_trace(mode, quad, le, same_dir ? t : -t).curl; },
              [&](double t) { return canonical_curl_trace(k, t); });
          if (dm.u_edge_offset[ge] >= 0)
            idx[im] = dm.u_edge_offset[ge] + dm.edge_func_count + slot;
          sgn[im] = s;
          break;
        }
      }
    }

    auto& pidx = dm.p_index[el];
    auto& psgn = dm.p_sign[el];
    pidx.assign(dm.scalar_modes.size(), -1);
    psgn.assign(dm.scalar_modes.size(), 1.0);
    int p_interior_seen = 0;
    std::array<int, 4> p_edge_seen{0, 0, 0, 0};
    for (std::size_t is = 0; is < dm.scalar_modes.size(); ++is) {
      const ScalarMode& sm = dm.scalar_modes[is];
      switch (sm.kind) {
        case ScalarKind::Interior:
          pidx[is] = dm.p_interior_offset[el] + p_interior_seen++;
          break;
        case ScalarKind::Vertex: {
          const int gv = mesh.elements[el][sm.entity];
          pidx[is] = dm.p_vertex_dof[gv];
          break;
        }
        case ScalarKind::Edge: {
          const int le = sm.entity;
          const int slot = p_edge_seen[le]++;
          const int ge = mesh.element_edges[el][le];
          const MeshEdge& edge = mesh.edges[ge];
          const int start_gv = mesh.elements[el][edge_start_corner(le)];
          const bool same_dir = (start_gv == edge.v0);
          const int k = slot + 2;
          const double s = match_sign(
              [&](double t) {
                const Vec2 p = edge_refpoint(le, same_dir ? t : -t);
                return eval_scalar_mode(sm.m, sm.n, p).value;
              },
              [&](double t) { return canonical_scalar_trace(k, t); });
          if (dm.p_edge_offset[ge] >= 0) pidx[is] = dm.p_edge_offset[ge] + slot;
          psgn[is] = s;
          break;
        }
      }
    }
  }
  return dm;
}

}  // namespace qcurl
