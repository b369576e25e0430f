#include "field_select.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <string>

#include "minlab/error.hpp"
#include "minlab/mesh_io.hpp"
#include "minlab/sampling.hpp"

namespace minlab::cli {

namespace {

FieldSelection parse_data(std::string_view text, std::string_view full) {
  FieldSelection s;
  if (text == "x1" || text == "x2" || text == "x3") {
    s.data = FieldSelection::Data::coordinate;
    s.index = text[1] - '1';
  } else if (text == "u" || text == "v") {
    s.data = FieldSelection::Data::parameter;
    s.index = text == "u" ? 0 : 1;
  } else if (text == "random") {
    s.data = FieldSelection::Data::random;
  } else if (text.substr(0, 4) == "poly" && text.size() > 4) {
    s.data = FieldSelection::Data::poly;
    const auto digits = text.substr(4);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), s.index);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || s.index < 0) {
      throw Error(ErrorKind::argument, "bad polynomial degree in '" + std::string(full) + "'");
    }
  } else {
    throw Error(ErrorKind::argument, "unknown field '" + std::string(full) + "'");
  }
  return s;
}

}  // namespace

FieldSelection parse_field_selection(std::string_view text) {
  if (text.substr(0, 6) == "const:") {
    FieldSelection s;
    s.data = FieldSelection::Data::constant;
    try {
      s.constant = parse_double(text.substr(6));
    } catch (const Error&) {
      throw Error(ErrorKind::argument, "bad constant in '" + std::string(text) + "'");
    }
    if (!std::isfinite(s.constant)) {
      throw Error(ErrorKind::argument, "constant field must be finite");
    }
    return s;
  }
  if (text.substr(0, 10) == "dirichlet:") {
    FieldSelection s = parse_data(text.substr(10), text);
    s.dirichlet = true;
    return s;
  }
  FieldSelection s = parse_data(text, text);
  if (s.data == FieldSelection::Data::random || s.data == FieldSelection::Data::poly) {
    throw Error(ErrorKind::argument,
                "'" + std::string(text) + "' is only available as Dirichlet data");
  }
  return s;
}

ScalarField evaluate_data(const SurfaceMesh& mesh, const FieldSelection& sel,
                          std::uint64_t seed) {
  switch (sel.data) {
    case FieldSelection::Data::coordinate:
      return coordinate_field(mesh, sel.index);
    case FieldSelection::Data::parameter:
      return param_field(mesh, sel.index);
    case FieldSelection::Data::constant:
      return constant_field(mesh, sel.constant);
    case FieldSelection::Data::random: {
      ScalarField f(mesh);
      for (Index v = 0; v < mesh.num_vertices(); ++v) {
        std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t{v} + 1));
        f[v] = 2.0 * unit_double(splitmix64_next(state)) - 1.0;
      }
      return f;
    }
    case FieldSelection::Data::poly: {
      const int n = sel.index;
      return field_from(mesh, [n](const MeshVertex& v) {
        const std::complex<double> z(v.param.u, v.param.v);
        std::complex<double> p(1.0, 0.0);
        for (int i = 0; i < n; ++i) p *= z;
        return p.real();
      });
    }
  }
  throw Error(ErrorKind::argument, "unhandled field selection");
}

ScalarField build_field(const SurfaceMesh& mesh, const FieldSelection& sel,
                        Index root, double dirichlet_radius, std::uint64_t seed,
                        double scale, double shift, SolveStats* stats) {
  ScalarField f = evaluate_data(mesh, sel, seed);
  if (sel.dirichlet) {
    const auto comp = ball_component(mesh, root, dirichlet_radius);
    f = solve_dirichlet(comp, f, {}, stats);
  }
  return f.affine(scale, shift);
}

}  // namespace minlab::cli
