#include "fqdist/constructions.hpp"

#include <algorithm>

#include "fqdist/error.hpp"

namespace fqdist {

namespace {

void require_odd_dimension(const DistanceGraphFamily& geometry) {
  if (geometry.dimension() < 3 || geometry.dimension() % 2 == 0)
    throw usage_error("construction requires odd dimension >= 3");
}

// Enumerates points (a_1, a_1, ..., a_k, a_k, z_1, ..., z_{d-2k}) whose tail
// z passes the filter, encoding them as point indices.
template <typename TailFilter>
std::vector<std::uint32_t> paired_points(const DistanceGraphFamily& geometry, std::uint32_t slab_k,
                                         TailFilter&& keep_tail) {
  const FieldSpec& f = geometry.field();
  const std::uint32_t d = geometry.dimension();
  const std::uint32_t tail_len = d - 2 * slab_k;
  std::vector<std::uint32_t> out;

  std::vector<elem_t> slab(slab_k, 0);
  Point coords(d, 0);
  while (true) {
    // tails for this slab assignment
    std::vector<elem_t> tail(tail_len, 0);
    while (true) {
      if (keep_tail(tail)) {
        for (std::uint32_t i = 0; i < slab_k; ++i) {
          coords[2 * i] = slab[i];
          coords[2 * i + 1] = slab[i];
        }
        for (std::uint32_t i = 0; i < tail_len; ++i) coords[2 * slab_k + i] = tail[i];
        out.push_back(geometry.encode(coords));
      }
      std::uint32_t pos = 0;
      while (pos < tail_len) {
        if (++tail[pos] < f.q()) break;
        tail[pos] = 0;
        ++pos;
      }
      if (pos == tail_len) break;
    }
    std::uint32_t pos = 0;
    while (pos < slab_k) {
      if (++slab[pos] < f.q()) break;
      slab[pos] = 0;
      ++pos;
    }
    if (pos == slab_k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Alternating form on the first `count` entries of the tail:
// z_1^2 - z_2^2 + ... with signs starting at +.
elem_t leading_alternating_form(const FieldSpec& f, const std::vector<elem_t>& tail,
                                std::uint32_t count) {
  elem_t acc = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    const elem_t sq = f.mul(tail[i], tail[i]);
    acc = (i % 2 == 0) ? f.add(acc, sq) : f.sub(acc, sq);
  }
  return acc;
}

}  // namespace

std::int64_t count_pairs_at_distance(const DistanceGraphFamily& geometry,
                                     const std::vector<std::uint32_t>& x,
                                     const std::vector<std::uint32_t>& y, elem_t r, PairForm form,
                                     const Caps& caps) {
  const std::uint64_t cost = static_cast<std::uint64_t>(x.size()) * y.size();
  if (cost > caps.max_pair_count)
    throw cap_error("|X|*|Y| exceeds max_pair_count = " + std::to_string(caps.max_pair_count));
  const FieldSpec& f = geometry.field();
  const elem_t tail =
      form == PairForm::kQForm ? select_tail_coeff(f, geometry.dimension()) : 0;
  std::vector<Point> ys;
  ys.reserve(y.size());
  for (std::uint32_t yp : y) ys.push_back(geometry.decode(yp));
  std::int64_t count = 0;
  Point diff(geometry.dimension());
  for (std::uint32_t xp : x) {
    const Point px = geometry.decode(xp);
    for (const Point& py : ys) {
      for (std::size_t i = 0; i < px.size(); ++i) diff[i] = f.sub(px[i], py[i]);
      const elem_t value =
          form == PairForm::kNorm ? norm_form(f, diff) : quadratic_form(f, diff, tail);
      if (value == r) ++count;
    }
  }
  return count;
}

ConstructionOutput construct_avoiding(const DistanceGraphFamily& geometry, std::uint32_t slab_k,
                                      elem_t r, const Caps&) {
  require_odd_dimension(geometry);
  const FieldSpec& f = geometry.field();
  const std::uint32_t d = geometry.dimension();
  if (slab_k < 1 || 2 * slab_k >= d - 1)
    throw usage_error("avoiding construction needs 1 <= slab_k < (d-1)/2");
  if (r == 0 || !f.is_valid(r)) throw usage_error("target radius must be a nonzero field element");

  ConstructionOutput out;
  out.kind = "avoiding";
  out.d = d;
  out.slab_k = slab_k;
  out.tail_coeff = select_tail_coeff(f, d);
  out.target_radius = r;

  const int tail_char = f.legendre(out.tail_coeff);
  const std::uint32_t lead = d - 2 * slab_k - 1;
  // Keep tails whose leading form value v can never be completed to r by a
  // term of character eta(tail): eta(r - v) must differ from eta(tail) and
  // must not vanish (the completing term can be zero).
  out.x_points = paired_points(geometry, slab_k, [&](const std::vector<elem_t>& tail) {
    const elem_t v = leading_alternating_form(f, tail, lead);
    const int character = f.legendre(f.sub(r, v));
    return character != tail_char && character != 0;
  });

  out.y_points = paired_points(geometry, slab_k, [&](const std::vector<elem_t>& tail) {
    for (std::uint32_t i = 0; i + 1 < tail.size(); ++i)
      if (tail[i] != 0) return false;
    return tail.back() != 0;
  });
  return out;
}

ConstructionOutput construct_saturating(const DistanceGraphFamily& geometry, std::uint32_t slab_k,
                                        elem_t r, const Caps&) {
  require_odd_dimension(geometry);
  const FieldSpec& f = geometry.field();
  const std::uint32_t d = geometry.dimension();
  if (slab_k < 1 || 2 * slab_k > d - 1)
    throw usage_error("saturating construction needs 1 <= slab_k <= (d-1)/2");

  ConstructionOutput out;
  out.kind = "saturating";
  out.d = d;
  out.slab_k = slab_k;
  out.tail_coeff = select_tail_coeff(f, d);

  const bool special = 2 * slab_k == d - 1;  // single tail coordinate
  if (r == 0) {
    // canonical radius: smallest admissible nonzero element
    for (elem_t cand = 1; cand < f.q(); ++cand) {
      if (!special || f.legendre(cand) == f.legendre(out.tail_coeff)) {
        r = cand;
        break;
      }
    }
  }
  if (r == 0 || !f.is_valid(r)) throw usage_error("target radius must be a nonzero field element");
  if (special && f.legendre(r) != f.legendre(out.tail_coeff))
    throw usage_error("slab_k = (d-1)/2 requires a radius of the tail coefficient's character");
  out.target_radius = r;

  const std::uint32_t tail_len = d - 2 * slab_k;
  out.x_points = paired_points(geometry, slab_k, [&](const std::vector<elem_t>& tail) {
    elem_t acc = leading_alternating_form(f, tail, tail_len - 1);
    acc = f.add(acc, f.mul(out.tail_coeff, f.mul(tail.back(), tail.back())));
    return acc == r;
  });
  out.y_points = paired_points(geometry, slab_k, [&](const std::vector<elem_t>& tail) {
    for (elem_t z : tail)
      if (z != 0) return false;
    return true;
  });
  return out;
}

ConstructionOutput construct_paired_diagonal(const DistanceGraphFamily& geometry, const Caps&) {
  require_odd_dimension(geometry);
  const FieldSpec& f = geometry.field();
  const std::uint32_t d = geometry.dimension();

  ConstructionOutput out;
  out.kind = "paired-diagonal";
  out.d = d;
  out.slab_k = (d - 1) / 2;
  out.tail_coeff = select_tail_coeff(f, d);
  out.target_radius = 0;
  out.x_points = paired_points(geometry, out.slab_k, [](const std::vector<elem_t>&) {
    return true;  // free final coordinate
  });
  return out;
}

ConstructionReport verify_construction(const DistanceGraphFamily& geometry,
                                       const ConstructionOutput& out, const Caps& caps) {
  const FieldSpec& f = geometry.field();
  ConstructionReport report;
  auto add_check = [&](const std::string& name, std::int64_t observed, std::int64_t expected) {
    ConstructionCheck check{name, observed, expected, observed == expected};
    report.pass = report.pass && check.pass;
    report.checks.push_back(std::move(check));
  };

  std::uint64_t q_pow_k = 1;
  for (std::uint32_t i = 0; i < out.slab_k; ++i) q_pow_k *= f.q();

  if (out.kind == "avoiding") {
    report.pair_count = count_pairs_at_distance(geometry, out.x_points, out.y_points,
                                                out.target_radius, PairForm::kQForm, caps);
    add_check("pairs_at_target_radius", report.pair_count, 0);
    add_check("y_size", static_cast<std::int64_t>(out.y_points.size()),
              static_cast<std::int64_t>(q_pow_k * f.q() - q_pow_k));
    add_check("x_nonempty", out.x_points.empty() ? 0 : 1, 1);
  } else if (out.kind == "saturating") {
    report.pair_count = count_pairs_at_distance(geometry, out.x_points, out.y_points,
                                                out.target_radius, PairForm::kQForm, caps);
    add_check("pairs_at_target_radius", report.pair_count,
              static_cast<std::int64_t>(out.x_points.size()) *
                  static_cast<std::int64_t>(out.y_points.size()));
    add_check("y_size", static_cast<std::int64_t>(out.y_points.size()),
              static_cast<std::int64_t>(q_pow_k));
    add_check("x_nonempty", out.x_points.empty() ? 0 : 1, 1);
  } else if (out.kind == "paired-diagonal") {
    std::uint64_t expected_size = f.q();  // q^((d+1)/2) = q^(slab_k + 1)
    for (std::uint32_t i = 0; i < out.slab_k; ++i) expected_size *= f.q();
    add_check("x_size", static_cast<std::int64_t>(out.x_points.size()),
              static_cast<std::int64_t>(expected_size));
    const int tail_char = f.legendre(out.tail_coeff);
    std::int64_t bad_pairs = 0;
    for (elem_t r = 1; r < f.q(); ++r) {
      if (f.legendre(r) != -tail_char) continue;
      bad_pairs += count_pairs_at_distance(geometry, out.x_points, out.x_points, r,
                                           PairForm::kQForm, caps);
    }
    add_check("pairs_at_opposite_character_radii", bad_pairs, 0);
  } else {
    throw usage_error("unknown construction kind: " + out.kind);
  }
  return report;
}

}  // namespace fqdist
