#include "qcn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qcn/errors.hpp"

namespace qcn {

namespace {

constexpr double kTipMergeRadius = 1e-6;

double signed_area(const std::array<double, 2>& p, const std::array<double, 2>& q,
                   const std::array<double, 2>& r) {
  return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]));
}

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[static_cast<size_t>(t)];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double Mesh::area() const {
  double s = 0.0;
  for (int t = 0; t < n_triangles(); ++t) s += triangle_area(t);
  return s;
}

Mesh mesh_star_domain(const DomainSpec& domain, int n_radial, int n_angular) {
  if (n_radial < 4 || n_angular < 16)
    fail(errc::invalid_resolution,
         "mesh_star_domain needs n_radial >= 4 and n_angular >= 16");

  const bool wrap = domain.periodic();
  const int n_lines = wrap ? n_angular : n_angular + 1;
  const double span = domain.theta_max() - domain.theta_min();

  // Raw structured grid: node (i, j) at (i/nr) rho(theta_j) e^{i theta_j};
  // i = 0 is the origin. Angular lines whose whole radius sits inside the
  // tip-merge radius collapse to the origin vertex; merging individual nodes
  // of a surviving line would leave hanging nodes on the neighbour strips.
  std::vector<std::array<double, 2>> verts;
  verts.push_back({0.0, 0.0});
  std::vector<std::vector<int>> node(n_lines,
                                     std::vector<int>(n_radial + 1, 0));
  for (int j = 0; j < n_lines; ++j) {
    const double theta = domain.theta_min() + span * j / n_angular;
    const double rho = domain.rho(theta);
    if (rho < 0.0) fail(errc::invalid_params, "rho(theta) < 0");
    if (rho < kTipMergeRadius) continue;  // whole line collapses to the tip
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int i = 1; i <= n_radial; ++i) {
      const double r = rho * i / n_radial;
      node[j][i] = static_cast<int>(verts.size());
      verts.push_back({r * ct, r * st});
    }
  }

  auto line = [&](int j) -> const std::vector<int>& {
    return node[static_cast<size_t>(wrap ? (j % n_lines) : j)];
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(2 * n_radial * n_angular));
  auto push_tri = [&](int a, int b, int c) {
    if (a == b || b == c || a == c) return;  // collapsed sliver
    tris.push_back({a, b, c});
  };
  for (int j = 0; j < n_angular; ++j) {
    const auto& lj = line(j);
    const auto& lj1 = line(j + 1);
    push_tri(lj[0], lj[1], lj1[1]);  // fan triangle, lj[0] == origin
    for (int i = 1; i < n_radial; ++i) {
      push_tri(lj[i], lj[i + 1], lj1[i + 1]);
      push_tri(lj[i], lj1[i + 1], lj1[i]);
    }
  }

  // Strips adjacent to a fully collapsed angular line leave collinear
  // slivers (origin plus two nodes on one ray). Drop everything below the
  // area floor; the wedge they covered is below mesh resolution.
  {
    double h2raw = 0.0;
    for (const auto& t : tris)
      for (int e = 0; e < 3; ++e) {
        const auto& p = verts[static_cast<size_t>(t[e])];
        const auto& q = verts[static_cast<size_t>(t[(e + 1) % 3])];
        const double dx = p[0] - q[0], dy = p[1] - q[1];
        h2raw = std::max(h2raw, dx * dx + dy * dy);
      }
    const double floor_area = 1e-14 * h2raw;
    std::vector<std::array<int, 3>> kept;
    kept.reserve(tris.size());
    for (const auto& t : tris)
      if (std::abs(signed_area(verts[static_cast<size_t>(t[0])],
                               verts[static_cast<size_t>(t[1])],
                               verts[static_cast<size_t>(t[2])])) >= floor_area)
        kept.push_back(t);
    tris.swap(kept);
  }

  // Drop vertices that lost all their triangles and compact indices.
  std::vector<int> remap(verts.size(), -1);
  for (const auto& t : tris)
    for (int v : t) remap[static_cast<size_t>(v)] = 0;
  Mesh mesh;
  for (size_t v = 0; v < verts.size(); ++v)
    if (remap[v] == 0) {
      remap[v] = mesh.n_vertices();
      mesh.vertices.push_back(verts[v]);
    }
  mesh.triangles.reserve(tris.size());
  for (const auto& t : tris)
    mesh.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});

  // Orientation and size bookkeeping.
  double h2 = 0.0;
  for (auto& t : mesh.triangles) {
    if (signed_area(mesh.vertices[t[0]], mesh.vertices[t[1]],
                    mesh.vertices[t[2]]) < 0.0)
      std::swap(t[1], t[2]);
    for (int e = 0; e < 3; ++e) {
      const auto& p = mesh.vertices[t[e]];
      const auto& q = mesh.vertices[t[(e + 1) % 3]];
      const double dx = p[0] - q[0], dy = p[1] - q[1];
      h2 = std::max(h2, dx * dx + dy * dy);
    }
  }
  mesh.h_max = std::sqrt(h2);

  // Boundary flags from edge counts.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  mesh.boundary.assign(static_cast<size_t>(mesh.n_vertices()), 0);
  for (const auto& [edge, count] : edge_count)
    if (count == 1) {
      mesh.boundary[static_cast<size_t>(edge.first)] = 1;
      mesh.boundary[static_cast<size_t>(edge.second)] = 1;
    }

  validate_mesh(mesh);
  return mesh;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.n_vertices() < 3 || mesh.n_triangles() < 1)
    fail(errc::degenerate_boundary, "mesh is empty");
  const double min_area = 1e-14 * mesh.h_max * mesh.h_max;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int v : tri)
      if (v < 0 || v >= mesh.n_vertices())
        fail(errc::degenerate_boundary, "triangle references a missing vertex");
    const double a = mesh.triangle_area(t);
    if (!(a >= min_area)) {
      std::ostringstream os;
      os << "triangle " << t << " has area " << a << " < " << min_area;
      fail(errc::degenerate_boundary, os.str());
    }
  }

  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tri : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      if (++edge_count[{a, b}] > 2)
        fail(errc::degenerate_boundary, "edge shared by more than 2 triangles");
    }

  const long long v = mesh.n_vertices();
  const long long e = static_cast<long long>(edge_count.size());
  const long long f = mesh.n_triangles();
  if (v - e + f != 1)
    fail(errc::degenerate_boundary,
         "mesh is not disc-like: V - E + F = " + std::to_string(v - e + f));
}

std::string mesh_to_text(const Mesh& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << mesh.n_vertices() << ' ' << mesh.n_triangles() << '\n';
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const auto& p = mesh.vertices[static_cast<size_t>(v)];
    os << p[0] << ' ' << p[1] << ' '
       << static_cast<int>(mesh.boundary[static_cast<size_t>(v)]) << '\n';
  }
  for (const auto& t : mesh.triangles)
    os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return os.str();
}

Mesh mesh_from_text(const std::string& text) {
  std::istringstream is(text);
  int nv = 0, nt = 0;
  if (!(is >> nv >> nt) || nv < 3 || nt < 1)
    fail(errc::bad_input, "mesh text: bad header");
  Mesh mesh;
  mesh.vertices.resize(static_cast<size_t>(nv));
  mesh.boundary.resize(static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    double x = 0, y = 0;
    int flag = 0;
    if (!(is >> x >> y >> flag)) fail(errc::bad_input, "mesh text: bad vertex");
    mesh.vertices[static_cast<size_t>(v)] = {x, y};
    mesh.boundary[static_cast<size_t>(v)] = static_cast<std::uint8_t>(flag != 0);
  }
  mesh.triangles.resize(static_cast<size_t>(nt));
  double h2 = 0.0;
  for (int t = 0; t < nt; ++t) {
    auto& tri = mesh.triangles[static_cast<size_t>(t)];
    if (!(is >> tri[0] >> tri[1] >> tri[2]))
      fail(errc::bad_input, "mesh text: bad triangle");
    for (int v : tri)
      if (v < 0 || v >= nv) fail(errc::bad_input, "mesh text: index range");
    for (int e = 0; e < 3; ++e) {
      const auto& p = mesh.vertices[static_cast<size_t>(tri[e])];
      const auto& q = mesh.vertices[static_cast<size_t>(tri[(e + 1) % 3])];
      const double dx = p[0] - q[0], dy = p[1] - q[1];
      h2 = std::max(h2, dx * dx + dy * dy);
    }
  }
  mesh.h_max = std::sqrt(h2);
  validate_mesh(mesh);
  return mesh;
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(errc::io_error, "cannot open " + path + " for writing");
  os << mesh_to_text(mesh);
  if (!os) fail(errc::io_error, "failed writing " + path);
}

Mesh read_mesh(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(errc::io_error, "cannot open " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return mesh_from_text(buffer.str());
}

}  // namespace qcn
