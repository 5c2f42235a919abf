#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "fqdist/caps.hpp"
#include "fqdist/gf.hpp"

namespace fqdist {

// Origin-centered sphere {s : ||s|| = radius}; any center is a translate.
struct Sphere {
  elem_t radius = 0;
  std::vector<std::uint32_t> points;  // sorted vertex indices
};

struct SpectralCertificate {
  std::uint64_t n = 0;       // vertex count
  std::uint32_t degree = 0;  // regular degree
  double lambda = 0.0;       // second-largest absolute eigenvalue
  double claimed_bound = 0.0;  // 2 q^((d-1)/2)
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // indexed by character m in [0, q^d)
  SpectralCertificate certificate;
  double max_imag_residue = 0.0;
};

struct NdlReport {
  std::uint32_t q = 0, d = 0;
  elem_t r = 0;
  std::uint64_t n = 0;
  std::uint32_t degree = 0;
  double lambda = 0.0;
  double lambda_bound = 0.0;
  std::int64_t degree_offset = 0;  // D - q^(d-1)
  bool lambda_ok = false;          // lambda <= 2 q^((d-1)/2)
  bool degree_offset_ok = false;   // |offset| == q^((d-1)/2) or q^((d-2)/2)
  bool sandwich_ok = false;        // (2/3) q^(d-1) <= D <= (4/3) q^(d-1)
};

// The family {G_r : r in R} of distance graphs on F_q^d, kept implicit:
// vertices are indices into F_q^d and adjacency is sphere translation, so
// memory scales with sphere sizes rather than n * D. Immutable after
// construction apart from a mutex-guarded sphere cache.
class DistanceGraphFamily {
 public:
  DistanceGraphFamily(FieldSpec spec, std::uint32_t d, std::vector<elem_t> radii,
                      const Caps& caps = {});

  const FieldSpec& field() const { return spec_; }
  std::uint32_t dimension() const { return d_; }
  std::uint64_t vertex_count() const { return n_; }
  const std::vector<elem_t>& radii() const { return radii_; }

  static std::vector<elem_t> all_radii(const FieldSpec& spec);

  Point decode(std::uint32_t index) const;
  std::uint32_t encode(const Point& x) const;
  std::uint32_t point_add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t point_neg(std::uint32_t a) const;
  std::uint32_t point_sub(std::uint32_t a, std::uint32_t b) const;

  // Exact sphere for any radius (not just family radii); cached.
  const Sphere& sphere(elem_t r) const;
  std::uint32_t degree(elem_t r) const { return static_cast<std::uint32_t>(sphere(r).points.size()); }

  // Neighbors {x + s : s on the radius-r sphere}, sorted. r must be a family radius.
  std::vector<std::uint32_t> neighbors(std::uint32_t x, elem_t r) const;

  // Eigenvalues via additive character sums: lambda_m is the sum over sphere
  // points s of exp(2*pi*i * Tr(<m, s>) / p). Sphere symmetry forces real
  // values; an imaginary residue above 1e-9 raises internal_error.
  SpectrumResult spectrum_character(elem_t r, unsigned workers = 1) const;

  // Independent oracle: eigenvalues of the explicit adjacency matrix,
  // sorted ascending.
  std::vector<double> spectrum_dense(elem_t r) const;

  NdlReport verify_ndl(elem_t r, unsigned workers = 1) const;
  NdlReport verify_ndl(elem_t r, const SpectralCertificate& cert) const;

 private:
  void check_family_radius(elem_t r) const;

  FieldSpec spec_;
  std::uint32_t d_ = 0;
  std::uint64_t n_ = 0;
  std::vector<elem_t> radii_;
  Caps caps_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<elem_t, std::unique_ptr<Sphere>> sphere_cache_;
};

}  // namespace fqdist
