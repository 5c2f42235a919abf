#include "fqdist/distgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fqdist/error.hpp"
#include "fqdist/parallel.hpp"

namespace fqdist {

DistanceGraphFamily::DistanceGraphFamily(FieldSpec spec, std::uint32_t d,
                                         std::vector<elem_t> radii, const Caps& caps)
    : spec_(std::move(spec)), d_(d), radii_(std::move(radii)), caps_(caps) {
  if (d_ < 2) throw usage_error("distance graphs require dimension >= 2");
  n_ = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    n_ *= spec_.q();
    if (n_ > caps_.max_enum_points)
      throw cap_error("q^d exceeds max_enum_points = " + std::to_string(caps_.max_enum_points));
  }
  if (radii_.empty()) throw usage_error("distance set must be nonempty");
  std::vector<elem_t> sorted = radii_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] == 0) throw usage_error("distance set radii must be nonzero");
    if (!spec_.is_valid(sorted[i])) throw usage_error("radius outside the field");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw usage_error("distance set radii must be distinct");
  }
}

std::vector<elem_t> DistanceGraphFamily::all_radii(const FieldSpec& spec) {
  std::vector<elem_t> r;
  r.reserve(spec.q() - 1);
  for (elem_t a = 1; a < spec.q(); ++a) r.push_back(a);
  return r;
}

Point DistanceGraphFamily::decode(std::uint32_t index) const {
  Point x(d_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    x[i] = index % spec_.q();
    index /= spec_.q();
  }
  return x;
}

std::uint32_t DistanceGraphFamily::encode(const Point& x) const {
  if (x.size() != d_) throw usage_error("point has wrong dimension");
  std::uint64_t index = 0;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (!spec_.is_valid(x[i])) throw usage_error("point coordinate outside the field");
    index = index * spec_.q() + x[i];
  }
  return static_cast<std::uint32_t>(index);
}

std::uint32_t DistanceGraphFamily::point_add(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += static_cast<std::uint64_t>(spec_.add(a % spec_.q(), b % spec_.q())) * scale;
    a /= spec_.q();
    b /= spec_.q();
    scale *= spec_.q();
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t DistanceGraphFamily::point_neg(std::uint32_t a) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += static_cast<std::uint64_t>(spec_.neg(a % spec_.q())) * scale;
    a /= spec_.q();
    scale *= spec_.q();
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t DistanceGraphFamily::point_sub(std::uint32_t a, std::uint32_t b) const {
  return point_add(a, point_neg(b));
}

const Sphere& DistanceGraphFamily::sphere(elem_t r) const {
  if (!spec_.is_valid(r)) throw usage_error("radius outside the field");
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = sphere_cache_.find(r);
  if (it != sphere_cache_.end()) return *it->second;

  auto s = std::make_unique<Sphere>();
  s->radius = r;
  Point x(d_, 0);
  for (std::uint32_t index = 0;; ++index) {
    if (norm_form(spec_, x) == r) s->points.push_back(index);
    std::uint32_t pos = 0;
    while (pos < d_) {
      if (++x[pos] < spec_.q()) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == d_) break;
  }
  const Sphere& ref = *s;
  sphere_cache_.emplace(r, std::move(s));
  return ref;
}

void DistanceGraphFamily::check_family_radius(elem_t r) const {
  if (std::find(radii_.begin(), radii_.end(), r) == radii_.end())
    throw usage_error("radius is not in the family's distance set");
}

std::vector<std::uint32_t> DistanceGraphFamily::neighbors(std::uint32_t x, elem_t r) const {
  check_family_radius(r);
  const Sphere& s = sphere(r);
  std::vector<std::uint32_t> out;
  out.reserve(s.points.size());
  for (std::uint32_t pt : s.points) out.push_back(point_add(x, pt));
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumResult DistanceGraphFamily::spectrum_character(elem_t r, unsigned workers) const {
  const Sphere& s = sphere(r);
  const std::uint64_t ops = n_ * s.points.size() * spec_.ext_degree();
  if (ops > caps_.max_char_sweep_ops)
    throw cap_error("character sweep cost exceeds max_char_sweep_ops = " +
                    std::to_string(caps_.max_char_sweep_ops));

  const std::uint32_t p = spec_.p();
  std::vector<double> cos_table(p), sin_table(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / p;
    cos_table[j] = std::cos(angle);
    sin_table[j] = std::sin(angle);
  }
  std::vector<std::uint32_t> trace_table(spec_.q());
  for (elem_t a = 0; a < spec_.q(); ++a) trace_table[a] = spec_.absolute_trace(a);

  // Sphere point coordinates, flattened.
  std::vector<elem_t> sphere_coords;
  sphere_coords.reserve(s.points.size() * d_);
  for (std::uint32_t pt : s.points) {
    const Point x = decode(pt);
    sphere_coords.insert(sphere_coords.end(), x.begin(), x.end());
  }

  SpectrumResult result;
  result.eigenvalues.assign(n_, 0.0);
  std::vector<double> imag(n_, 0.0);

  parallel_for(n_, workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t m = begin; m < end; ++m) {
      const Point mc = decode(static_cast<std::uint32_t>(m));
      double re = 0.0, im = 0.0;
      const elem_t* sp = sphere_coords.data();
      for (std::size_t i = 0; i < s.points.size(); ++i, sp += d_) {
        elem_t ip = 0;
        for (std::uint32_t j = 0; j < d_; ++j) ip = spec_.add(ip, spec_.mul(mc[j], sp[j]));
        const std::uint32_t t = trace_table[ip];
        re += cos_table[t];
        im += sin_table[t];
      }
      result.eigenvalues[m] = re;
      imag[m] = im;
    }
  });

  double max_imag = 0.0;
  double lambda = 0.0;
  for (std::uint64_t m = 0; m < n_; ++m) {
    max_imag = std::max(max_imag, std::abs(imag[m]));
    if (m != 0) lambda = std::max(lambda, std::abs(result.eigenvalues[m]));
  }
  if (max_imag > 1e-9)
    throw internal_error("character sum has imaginary residue above 1e-9");

  result.max_imag_residue = max_imag;
  result.certificate.n = n_;
  result.certificate.degree = static_cast<std::uint32_t>(s.points.size());
  result.certificate.lambda = lambda;
  result.certificate.claimed_bound =
      2.0 * std::pow(static_cast<double>(spec_.q()), (d_ - 1) / 2.0);
  return result;
}

std::vector<double> DistanceGraphFamily::spectrum_dense(elem_t r) const {
  if (n_ > caps_.max_dense_spectrum_n)
    throw cap_error("vertex count exceeds max_dense_spectrum_n = " +
                    std::to_string(caps_.max_dense_spectrum_n));
  const Sphere& s = sphere(r);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n_, n_);
  for (std::uint64_t v = 0; v < n_; ++v)
    for (std::uint32_t pt : s.points)
      adj(v, point_add(static_cast<std::uint32_t>(v), pt)) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw internal_error("dense eigensolver failed");
  std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n_);
  std::sort(eig.begin(), eig.end());
  return eig;
}

NdlReport DistanceGraphFamily::verify_ndl(elem_t r, unsigned workers) const {
  return verify_ndl(r, spectrum_character(r, workers).certificate);
}

NdlReport DistanceGraphFamily::verify_ndl(elem_t r, const SpectralCertificate& cert) const {
  NdlReport report;
  report.q = spec_.q();
  report.d = d_;
  report.r = r;
  report.n = n_;
  report.degree = cert.degree;
  report.lambda = cert.lambda;
  report.lambda_bound = cert.claimed_bound;
  report.lambda_ok = report.lambda <= report.lambda_bound + 1e-6;

  std::uint64_t q_pow = 1;  // q^(d-1)
  for (std::uint32_t i = 0; i + 1 < d_; ++i) q_pow *= spec_.q();
  report.degree_offset = static_cast<std::int64_t>(report.degree) - static_cast<std::int64_t>(q_pow);

  const std::uint32_t half_exp = (d_ % 2 == 1) ? (d_ - 1) / 2 : (d_ - 2) / 2;
  std::uint64_t expected = 1;
  for (std::uint32_t i = 0; i < half_exp; ++i) expected *= spec_.q();
  report.degree_offset_ok =
      static_cast<std::uint64_t>(std::llabs(report.degree_offset)) == expected;

  report.sandwich_ok = 2 * q_pow <= 3ull * report.degree && 3ull * report.degree <= 4 * q_pow;
  return report;
}

}  // namespace fqdist
