#include "tingley/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace tingley {

namespace {

std::vector<Complex> phase_grid(int grid_size) {
  if (grid_size <= 0 || grid_size % 4 != 0)
    throw PreconditionError("probe grid size must be a positive multiple of 4");
  std::vector<Complex> grid(static_cast<std::size_t>(grid_size));
  for (int k = 0; k < grid_size; ++k) grid[k] = root_of_unity(k, grid_size);
  return grid;
}

bool unimodular_within(Complex z, double tol) {
  return std::abs(std::abs(z) - 1.0) <= tol;
}

}  // namespace

// ---- scalar side ----

FaceImage probe_face_image(const ScalarOracle& o, const std::string& x,
                           Complex lambda, double tol) {
  const auto& X = o.domain;
  const auto& Y = o.target;

  std::vector<ComplexFunction> images;
  auto ind = ComplexFunction::indicator(X, x);
  images.push_back(o.forward(lambda * ind));
  for (const auto& xp : X->points()) {
    if (xp == x) continue;
    auto bump = ind + Complex(0.5, 0.0) * ComplexFunction::indicator(X, xp);
    images.push_back(o.forward(lambda * bump));
  }

  // A target point carries the face image iff every probe lands there with
  // one common unimodular value.
  struct Candidate {
    std::string y;
    Complex nu;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < Y->size(); ++i) {
    const Complex nu = images[0][i];
    if (!unimodular_within(nu, tol)) continue;
    bool stable = true;
    for (std::size_t j = 1; j < images.size() && stable; ++j)
      stable = approx(images[j][i], nu, tol);
    if (stable) cands.push_back({Y->point(i), nu});
  }

  if (cands.empty())
    throw OracleInconsistent(
        "probe family at " + x + " has no common unimodular landing point",
        0.0);
  if (cands.size() > 1) {
    std::vector<Candidate> kept;
    for (const auto& c : cands) {
      auto back = o.inverse(c.nu * ComplexFunction::indicator(Y, c.y));
      if (approx(back.value(x), lambda, tol)) kept.push_back(c);
    }
    if (kept.size() != 1)
      throw OracleInconsistent(
          "face image at " + x + " stays ambiguous after reverse probing",
          0.0);
    cands = std::move(kept);
  }

  const Complex nu = cands[0].nu;
  const Complex rotated = Complex(0.0, 1.0) * lambda;
  const Complex nu_i = o.forward(rotated * ind).value(cands[0].y);
  FaceImage face;
  face.point = cands[0].y;
  face.value = nu;
  if (approx(nu_i, Complex(0.0, 1.0) * nu, tol)) {
    face.conjugated = false;
  } else if (approx(nu_i, Complex(0.0, -1.0) * nu, tol)) {
    face.conjugated = true;
  } else {
    const double res = std::min(std::abs(nu_i - Complex(0.0, 1.0) * nu),
                                std::abs(nu_i - Complex(0.0, -1.0) * nu));
    throw OracleInconsistent(
        "probe grid at " + x + " turns neither with i nor against it", res);
  }
  return face;
}

ScalarPhaseTable compute_phase_table(const ScalarOracle& o, int grid_size,
                                     double tol) {
  ScalarPhaseTable table;
  table.grid = phase_grid(grid_size);
  std::set<std::string> landed;
  for (const auto& x : o.domain->points()) {
    auto face = probe_face_image(o, x, table.grid[0], tol);
    PointPhaseRow row;
    row.x = x;
    row.y = face.point;
    row.conjugated = face.conjugated;
    row.alpha.reserve(table.grid.size());
    auto ind = ComplexFunction::indicator(o.domain, x);
    for (const Complex lambda : table.grid)
      row.alpha.push_back(o.forward(lambda * ind).value(row.y));

    // The whole grid must rotate rigidly with the orientation the i-probe
    // fixed; one deviating phase means the responses are not one face map.
    double worst = 0.0;
    for (std::size_t k = 0; k < table.grid.size(); ++k) {
      const Complex expect = row.conjugated
                                 ? std::conj(table.grid[k]) * row.alpha[0]
                                 : table.grid[k] * row.alpha[0];
      worst = std::max(worst, std::abs(row.alpha[k] - expect));
    }
    if (worst > tol)
      throw OracleInconsistent("phase grid does not turn rigidly at " + x,
                               worst);
    if (!landed.insert(row.y).second)
      throw OracleInconsistent("two source points land on " + row.y, 0.0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ComplexFunction ScalarReconstruction::extend(const ComplexFunction& f) const {
  const double nrm = sup_norm(f);
  if (nrm == 0.0) return ComplexFunction::zero(spec.target);
  auto unit = Complex(1.0 / nrm, 0.0) * f;
  return Complex(nrm, 0.0) * apply_wco(spec, unit);
}

ScalarReconstruction reconstruct_scalar(const ScalarOracle& o, int grid_size,
                                        int samples, double tol,
                                        std::uint64_t seed) {
  ScalarReconstruction rec;
  rec.seed = seed;
  rec.table = compute_phase_table(o, grid_size, tol);

  ScalarWcoSpec s;
  s.domain = o.domain;
  s.target = o.target;
  for (const auto& row : rec.table.rows) {
    s.phi[row.y] = row.x;
    s.kappa[row.y] = row.conjugated ? std::conj(row.alpha[0]) : row.alpha[0];
    if (!row.conjugated) s.linear_part.insert(row.y);
  }
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw OracleInconsistent(
        std::string("recovered data is not a weighted composition: ") +
            e.what(),
        0.0);
  }
  rec.spec = std::move(s);

  // Replay every probe input: a defect parked at a probe point must not be
  // able to hide behind the clean majority that fixed the table.
  double worst = 0.0;
  for (const auto& x : o.domain->points()) {
    auto ind = ComplexFunction::indicator(o.domain, x);
    for (const Complex lambda : rec.table.grid) {
      auto input = lambda * ind;
      worst = std::max(
          worst, sup_norm(o.forward(input) - apply_wco(rec.spec, input)));
    }
    for (const auto& xp : o.domain->points()) {
      if (xp == x) continue;
      auto input =
          ind + Complex(0.5, 0.0) * ComplexFunction::indicator(o.domain, xp);
      worst = std::max(
          worst, sup_norm(o.forward(input) - apply_wco(rec.spec, input)));
    }
  }

  Rng rng(mix_seed(seed, 0x73726563u));
  for (int i = 0; i < samples; ++i) {
    auto f = random_sphere_point(o.domain, rng);
    worst = std::max(worst, sup_norm(o.forward(f) - rec.extend(f)));
  }
  rec.extension_residual = worst;

  double iso = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto u = random_sphere_point(o.domain, rng);
    auto v = random_sphere_point(o.domain, rng);
    const double din = sup_norm(u - v);
    const double dout = sup_norm(rec.extend(u) - rec.extend(v));
    iso = std::max(iso, std::abs(dout - din));
  }
  rec.isometry_residual = iso;

  rec.ok = rec.extension_residual <= tol && rec.isometry_residual <= tol;
  return rec;
}

// ---- equivariant side ----

FaceImage probe_face_image(const BundleOracle& o, const std::string& t0,
                           Complex mu, double tol) {
  const auto& B = o.domain;
  const auto [orb, k] = B->locate(t0);
  (void)k;

  std::vector<EquivariantFunction> images;
  auto base_probe = urysohn_equivariant(B, t0, {orb}, mu);
  images.push_back(o.forward(base_probe));
  for (const auto& op : B->base()) {
    if (op == orb) continue;
    auto bump = base_probe + Complex(0.5, 0.0) *
                                 EquivariantFunction::orbit_indicator(B, op);
    images.push_back(o.forward(bump));
  }

  // Candidates live on the transversal so one face never counts twice.
  struct Candidate {
    std::string y0;
    std::string y_orbit;
    Complex nu;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < o.target->orbit_count(); ++i) {
    const Complex nu = images[0][i];
    if (!unimodular_within(nu, tol)) continue;
    bool stable = true;
    for (std::size_t j = 1; j < images.size() && stable; ++j)
      stable = approx(images[j][i], nu, tol);
    if (stable) {
      const auto& y_orbit = o.target->base()[i];
      cands.push_back({o.target->point_id(y_orbit, 0), y_orbit, nu});
    }
  }

  if (cands.empty())
    throw OracleInconsistent(
        "probe family at " + t0 + " has no common unimodular landing orbit",
        0.0);
  if (cands.size() > 1) {
    std::vector<Candidate> kept;
    for (const auto& c : cands) {
      auto back =
          o.inverse(urysohn_equivariant(o.target, c.y0, {c.y_orbit}, c.nu));
      if (approx(back.value_at(t0), mu, tol)) kept.push_back(c);
    }
    if (kept.size() != 1)
      throw OracleInconsistent(
          "face image at " + t0 + " stays ambiguous after reverse probing",
          0.0);
    cands = std::move(kept);
  }

  const Complex nu = cands[0].nu;
  const Complex nu_i =
      o.forward(urysohn_equivariant(B, t0, {orb}, Complex(0.0, 1.0) * mu))
          .base_value(cands[0].y_orbit);
  FaceImage face;
  face.point = cands[0].y0;
  face.value = nu;
  if (approx(nu_i, Complex(0.0, 1.0) * nu, tol)) {
    face.conjugated = false;
  } else if (approx(nu_i, Complex(0.0, -1.0) * nu, tol)) {
    face.conjugated = true;
  } else {
    const double res = std::min(std::abs(nu_i - Complex(0.0, 1.0) * nu),
                                std::abs(nu_i - Complex(0.0, -1.0) * nu));
    throw OracleInconsistent(
        "probe grid at " + t0 + " turns neither with i nor against it", res);
  }
  return face;
}

BundlePhaseTable compute_phase_table(const BundleOracle& o, int grid_size,
                                     double tol) {
  BundlePhaseTable table;
  table.grid = phase_grid(grid_size);
  const int n = o.domain->order();
  std::set<std::string> landed;
  for (const auto& orb : o.domain->base()) {
    const std::string t0 = o.domain->point_id(orb, 0);
    auto face = probe_face_image(o, t0, table.grid[0], tol);
    auto [y_orbit, yk] = o.target->locate(face.point);
    (void)yk;

    OrbitPhaseRow row;
    row.x_orbit = orb;
    row.y_orbit = y_orbit;
    row.conjugated = face.conjugated;
    row.sigma.reserve(table.grid.size());
    for (const Complex mu : table.grid)
      row.sigma.push_back(
          o.forward(urysohn_equivariant(o.domain, t0, {orb}, mu))
              .base_value(y_orbit));

    double worst = 0.0;
    for (std::size_t k = 0; k < table.grid.size(); ++k) {
      const Complex expect = row.conjugated
                                 ? std::conj(table.grid[k]) * row.sigma[0]
                                 : table.grid[k] * row.sigma[0];
      worst = std::max(worst, std::abs(row.sigma[k] - expect));
    }
    if (worst > tol)
      throw OracleInconsistent("phase grid does not turn rigidly at " + t0,
                               worst);

    // The landing phase must be a plain rotation; snap it to w^j and read
    // the offset through the recovered orientation.
    auto snap = snap_phase(row.sigma[0], n);
    if (snap.residual > tol)
      throw OracleInconsistent("landing phase at " + t0 + " is not w^j",
                               snap.residual);
    row.offset = row.conjugated ? (n - snap.index) % n : snap.index;

    if (!landed.insert(row.y_orbit).second)
      throw OracleInconsistent("two source orbits land on " + row.y_orbit,
                               0.0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

EquivariantFunction BundleReconstruction::extend(
    const EquivariantFunction& a) const {
  const double nrm = sup_norm(a);
  if (nrm == 0.0) return EquivariantFunction::zero(spec.target);
  auto unit = Complex(1.0 / nrm, 0.0) * a;
  return Complex(nrm, 0.0) * apply_wco(spec, unit);
}

BundleReconstruction reconstruct_bundle(const BundleOracle& o, int grid_size,
                                        int samples, double tol,
                                        std::uint64_t seed) {
  BundleReconstruction rec;
  rec.seed = seed;
  rec.table = compute_phase_table(o, grid_size, tol);

  BundleWcoSpec s;
  s.domain = o.domain;
  s.target = o.target;
  for (const auto& row : rec.table.rows) {
    s.orbit_map[row.y_orbit] = row.x_orbit;
    s.offsets[row.y_orbit] = row.offset;
    if (!row.conjugated) s.linear_part.insert(row.x_orbit);
  }
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw OracleInconsistent(
        std::string("recovered data is not a weighted composition: ") +
            e.what(),
        0.0);
  }
  rec.spec = std::move(s);

  double worst = 0.0;
  for (const auto& orb : o.domain->base()) {
    const std::string t0 = o.domain->point_id(orb, 0);
    for (const Complex mu : rec.table.grid) {
      auto input = urysohn_equivariant(o.domain, t0, {orb}, mu);
      worst = std::max(
          worst, sup_norm(o.forward(input) - apply_wco(rec.spec, input)));
    }
    auto ind = urysohn_equivariant(o.domain, t0, {orb}, rec.table.grid[0]);
    for (const auto& op : o.domain->base()) {
      if (op == orb) continue;
      auto input = ind + Complex(0.5, 0.0) *
                             EquivariantFunction::orbit_indicator(o.domain, op);
      worst = std::max(
          worst, sup_norm(o.forward(input) - apply_wco(rec.spec, input)));
    }
  }

  Rng rng(mix_seed(seed, 0x62726563u));
  for (int i = 0; i < samples; ++i) {
    auto a = random_sphere_point(o.domain, rng);
    worst = std::max(worst, sup_norm(o.forward(a) - rec.extend(a)));
  }
  rec.extension_residual = worst;

  double iso = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto u = random_sphere_point(o.domain, rng);
    auto v = random_sphere_point(o.domain, rng);
    const double din = sup_norm(u - v);
    const double dout = sup_norm(rec.extend(u) - rec.extend(v));
    iso = std::max(iso, std::abs(dout - din));
  }
  rec.isometry_residual = iso;

  rec.ok = rec.extension_residual <= tol && rec.isometry_residual <= tol;
  return rec;
}

// ---- certification helpers ----

namespace {

PointSpacePtr fresh_space(std::size_t size) {
  std::vector<std::string> pts(size);
  for (std::size_t i = 0; i < size; ++i) pts[i] = "z" + std::to_string(i);
  return make_space(std::move(pts));
}

BundlePtr fresh_bundle(int n, std::size_t orbits) {
  std::vector<std::string> base(orbits);
  for (std::size_t i = 0; i < orbits; ++i) base[i] = "o" + std::to_string(i);
  return make_bundle(n, std::move(base));
}

struct CheckAccum {
  int trials = 0;
  double worst = 0.0;
  bool pass = true;

  void equal(double deviation) { worst = std::max(worst, deviation); }
  void bounded(double value, double bound) {
    worst = std::max(worst, std::max(0.0, value - bound));
  }
  void require(bool cond) { pass = pass && cond; }
  IdentityCheck done(std::string name) const {
    return {std::move(name), trials, worst, pass && worst <= kTightTol};
  }
};

IdentityCheck check_antipodal(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    auto space = fresh_space(2 + rng.index(5));
    auto f = random_sphere_point(space, rng);
    const auto& x0 = space->point(rng.index(space->size()));
    const Complex lambda = rng.unimodular();
    f = f.with_value(x0, lambda);
    auto g = random_sphere_point(space, rng);
    if (std::abs(g.value(x0) - lambda) < 0.1)
      g = g.with_value(x0, -g.value(x0));
    auto h = antipodal_witness(f, g, x0);
    acc.equal(std::abs(sup_norm(f - h) - 2.0));
    acc.require(sup_norm(g - h) <= 2.0 - 1e-3);
  }
  return acc.done("antipodal-witness");
}

IdentityCheck check_average_peaking(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    auto space = fresh_space(2 + rng.index(5));
    const auto& x0 = space->point(rng.index(space->size()));
    const Complex lambda = rng.unimodular();
    const std::size_t k = 2 + rng.index(3);
    std::vector<ComplexFunction> fs;
    for (std::size_t i = 0; i < k; ++i) {
      auto f = random_sphere_point(space, rng);
      for (const auto& z : space->points())
        if (z != x0) f = f.with_value(z, Complex(0.95, 0.0) * f.value(z));
      fs.push_back(f.with_value(x0, lambda));
    }
    auto g = average_peaking(fs, lambda);
    acc.equal(std::abs(g.value(x0) - lambda));
    acc.bounded(sup_norm(g), 1.0);
    acc.require(unit_level_set(g, kTightTol) ==
                std::vector<std::string>{x0});
  }
  return acc.done("average-peaking");
}

IdentityCheck check_phase_peak(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    auto space = fresh_space(2 + rng.index(5));
    const auto& x0 = space->point(rng.index(space->size()));
    const Complex lambda = rng.unimodular();
    auto f = random_sphere_point(space, rng).with_value(x0, lambda);
    for (const auto& z : space->points())
      if (z != x0 && std::abs(f.value(z) - lambda) < 1e-3)
        f = f.with_value(z, Complex(0.5, 0.0) * f.value(z));
    auto pk = phase_peak_transform(f, lambda);
    acc.equal(std::abs(pk.fn.value(x0) - Complex(1.0, 0.0)));
    acc.require(pk.peak_set == std::vector<std::string>{x0});
    for (const auto& z : space->points()) {
      const double d = std::abs(f.value(z) - lambda);
      acc.bounded(std::abs(pk.fn.value(z)), 1.0 - d * d / 8.0);
    }
  }
  return acc.done("phase-peak-transform");
}

IdentityCheck check_disjoint(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    auto space = fresh_space(2 + rng.index(5));
    const std::size_t i = rng.index(space->size());
    std::size_t j = rng.index(space->size() - 1);
    if (j >= i) ++j;
    const Complex mu = rng.unimodular(), mu2 = rng.unimodular();
    auto [u, v] =
        disjoint_face_witnesses(space, space->point(i), mu, space->point(j), mu2);
    acc.equal(std::abs(sup_norm(u - v) - 1.0));
    acc.require(face_membership(u, {space->point(i), mu}, kTightTol));
    acc.require(face_membership(v, {space->point(j), mu2}, kTightTol));
  }
  return acc.done("disjoint-witnesses");
}

IdentityCheck check_face_correction(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    auto space = fresh_space(2 + rng.index(5));
    const std::size_t i = rng.index(space->size());
    std::size_t j = rng.index(space->size() - 1);
    if (j >= i) ++j;
    auto f = random_sphere_point(space, rng)
                 .with_value(space->point(i), Complex(0.9, 0.0) * rng.unit_disk())
                 .with_value(space->point(j), rng.unimodular());
    const auto& x0 = space->point(i);
    const double r = 0.05 + 0.9 * rng.uniform01();
    const double m0 = std::abs(f.value(x0));
    auto fc = face_correction(f, x0, r);
    acc.equal(std::abs(fc.g_r.value(x0) - Complex(1.0, 0.0)));
    acc.equal(std::abs(sup_norm(fc.g_r) - 1.0));
    acc.require(face_membership(fc.h_r, {x0, fc.lambda}, kTightTol));
    acc.bounded(sup_norm(fc.h_r - f), 2.0 - r - r * m0);
  }
  return acc.done("face-correction");
}

IdentityCheck check_face_blend(int trials, Rng rng) {
  CheckAccum acc;
  for (int t = 0; t < trials; ++t, ++acc.trials) {
    const int n = rng.coin() ? 4 : 8;
    auto bundle = fresh_bundle(n, 1 + rng.index(4));
    std::vector<Complex> base(bundle->orbit_count());
    for (auto& z : base) z = Complex(0.85, 0.0) * rng.unit_disk();
    auto a = EquivariantFunction(bundle, std::move(base));
    const auto& orb = bundle->base()[rng.index(bundle->orbit_count())];
    const std::string t0 =
        bundle->point_id(orb, static_cast<int>(rng.index(n)));
    const double m = std::abs(a.value_at(t0));
    const double eps = (1.0 - m) * (0.1 + 0.4 * rng.uniform01());
    auto bp = face_blend_pair(a, t0, eps);
    acc.bounded(sup_norm(a - bp.a_eps), eps);
    acc.equal(std::abs(bp.a_eps.value_at(t0) - a.value_at(t0)));
    acc.bounded(sup_norm(bp.a_eps), 1.0);
    const double r = 0.1 + 0.8 * rng.uniform01();
    auto blended = bp.blend(r);
    acc.require(face_membership(blended, {t0, bp.lambda}, kTightTol));
    acc.bounded(sup_norm(blended - bp.a_eps), 2.0 - r - r * m);

    // Convex profile split: the two halves must recombine to the identity.
    auto g = rng.coin() ? RadialProfile::identity()
                        : RadialProfile::threshold(0.1 + 0.3 * rng.uniform01());
    const double peps = 0.05 + 0.3 * rng.uniform01();
    auto [fe, ge] = convex_profile_split(g, peps);
    for (int s = 0; s <= 40; ++s) {
      const double x = s / 40.0;
      acc.equal(std::abs((1.0 - peps / 2.0) * ge(x) + (peps / 2.0) * fe(x) - x));
    }
  }
  return acc.done("face-blend");
}

}  // namespace

std::vector<IdentityCheck> run_identity_checks(int trials,
                                               std::uint64_t seed) {
  if (trials <= 0) throw PreconditionError("identity checks need trials >= 1");
  Rng root(mix_seed(seed, 0x69646e74u));
  std::vector<IdentityCheck> out;
  out.push_back(check_antipodal(trials, root.fork(1)));
  out.push_back(check_average_peaking(trials, root.fork(2)));
  out.push_back(check_phase_peak(trials, root.fork(3)));
  out.push_back(check_disjoint(trials, root.fork(4)));
  out.push_back(check_face_correction(trials, root.fork(5)));
  out.push_back(check_face_blend(trials, root.fork(6)));
  return out;
}

double consistency_check(const ScalarReconstruction& r, const ScalarOracle& o,
                         int samples, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x636e7374u));
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto f = random_sphere_point(o.domain, rng);
    worst = std::max(worst, sup_norm(r.extend(f) - o.forward(f)));
  }
  return worst;
}

double consistency_check(const BundleReconstruction& r, const BundleOracle& o,
                         int samples, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x636e7374u));
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto a = random_sphere_point(o.domain, rng);
    worst = std::max(worst, sup_norm(r.extend(a) - o.forward(a)));
  }
  return worst;
}

CensusResult circle_isometry_census() {
  std::array<Complex, 4> pts;
  for (int k = 0; k < 4; ++k) pts[k] = root_of_unity(k, 4);

  CensusResult res;
  res.all_rotation_or_reflection = true;
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    ++res.permutations;
    bool isometric = true;
    for (int i = 0; i < 4 && isometric; ++i)
      for (int j = i + 1; j < 4 && isometric; ++j)
        isometric = approx(std::abs(pts[perm[i]] - pts[perm[j]]),
                           std::abs(pts[i] - pts[j]), kTightTol);
    if (!isometric) continue;
    ++res.isometries;

    bool structured = false;
    for (int k = 0; k < 4 && !structured; ++k) {
      for (int c = 0; c < 2 && !structured; ++c) {
        bool match = true;
        for (int i = 0; i < 4 && match; ++i) {
          const Complex z = c ? std::conj(pts[i]) : pts[i];
          match = approx(root_of_unity(k, 4) * z, pts[perm[i]], kTightTol);
        }
        structured = match;
      }
    }
    res.all_rotation_or_reflection =
        res.all_rotation_or_reflection && structured;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return res;
}

Json report_json(const ScalarReconstruction& r) {
  Json j;
  j["section"] = 2;
  j["map_direction"] = "target_to_domain";
  Json phi = Json::object();
  for (const auto& y : r.spec.target->points()) phi[y] = r.spec.phi.at(y);
  j["phi"] = std::move(phi);
  Json alpha1 = Json::array();
  Json orientation = Json::array();
  for (const auto& row : r.table.rows) {
    alpha1.push_back(Json::array({row.alpha[0].real(), row.alpha[0].imag()}));
    orientation.push_back(row.conjugated ? "-" : "+");
  }
  j["alpha1"] = std::move(alpha1);
  j["orientation"] = std::move(orientation);
  Json d = Json::array();
  for (const auto& y : r.spec.target->points())
    if (r.spec.linear_part.count(y)) d.push_back(y);
  j["D"] = std::move(d);
  j["residuals"]["extension"] = r.extension_residual;
  j["residuals"]["isometry"] = r.isometry_residual;
  j["seed"] = r.seed;
  j["ok"] = r.ok;
  return j;
}

Json report_json(const BundleReconstruction& r) {
  Json j;
  j["section"] = 3;
  j["map_direction"] = "target_to_domain";
  Json phi = Json::object();
  Json offsets = Json::object();
  for (const auto& y : r.spec.target->base()) {
    phi[y] = r.spec.orbit_map.at(y);
    offsets[y] = r.spec.offsets.at(y);
  }
  j["phi"] = std::move(phi);
  j["phi_offsets"] = std::move(offsets);
  Json sigma1 = Json::array();
  Json orientation = Json::array();
  for (const auto& row : r.table.rows) {
    sigma1.push_back(Json::array({row.sigma[0].real(), row.sigma[0].imag()}));
    orientation.push_back(row.conjugated ? "-" : "+");
  }
  j["sigma1"] = std::move(sigma1);
  j["orientation"] = std::move(orientation);
  Json d = Json::array();
  for (const auto& x : r.spec.domain->base())
    if (r.spec.linear_part.count(x)) d.push_back(x);
  j["D"] = std::move(d);
  j["residuals"]["extension"] = r.extension_residual;
  j["residuals"]["isometry"] = r.isometry_residual;
  j["seed"] = r.seed;
  j["ok"] = r.ok;
  return j;
}

}  // namespace tingley
