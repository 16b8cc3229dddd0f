#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qcn/domain.hpp"

namespace qcn {

struct Mesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW
  std::vector<std::uint8_t> boundary;         // per-vertex flag
  double h_max = 0.0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  double triangle_area(int t) const;
  double area() const;
};

// Structured polar triangulation of a star-shaped domain: a disc grid
// (r_i, theta_j) mapped through r -> r rho(theta). Vertices within 1e-6 of a
// pinch tip are merged to the tip and the resulting degenerate slivers
// dropped. Throws degenerate_boundary if a surviving triangle has area below
// 1e-14 h^2, invalid_resolution for n_radial < 4 or n_angular < 16.
Mesh mesh_star_domain(const DomainSpec& domain, int n_radial, int n_angular);

// Conformity, orientation, minimum area and Euler characteristic checks.
void validate_mesh(const Mesh& mesh);

// Plain-text format: "nv nt", nv lines "x y flag", nt lines "i j k".
std::string mesh_to_text(const Mesh& mesh);
Mesh mesh_from_text(const std::string& text);
void write_mesh(const Mesh& mesh, const std::string& path);
Mesh read_mesh(const std::string& path);

}  // namespace qcn
