#include "tingley/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tingley/engine.hpp"

namespace tingley {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointSpacePtr seq_space(const std::string& prefix, int size) {
  std::vector<std::string> pts(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) pts[i] = prefix + std::to_string(i);
  return make_space(std::move(pts));
}

BundlePtr seq_bundle(int n, const std::string& prefix, int orbits) {
  std::vector<std::string> base(static_cast<std::size_t>(orbits));
  for (int i = 0; i < orbits; ++i) base[i] = prefix + std::to_string(i);
  return make_bundle(n, std::move(base));
}

struct StoredScalar {
  ScalarWcoSpec truth;
  ScalarOracle oracle;
  ScalarReconstruction rec;
};

struct StoredBundle {
  BundleWcoSpec truth;
  BundleOracle oracle;
  BundleReconstruction rec;
};

}  // namespace

SuiteConfig scaled_config(const SuiteConfig& base, double factor) {
  auto scale = [factor](int v) {
    return std::max(1, static_cast<int>(std::llround(v * factor)));
  };
  SuiteConfig c = base;
  c.scalar_instances = scale(base.scalar_instances);
  c.bundle_instances = scale(base.bundle_instances);
  c.identity_trials = scale(base.identity_trials);
  c.haar_trials = scale(base.haar_trials);
  c.projection_probes = scale(base.projection_probes);
  c.perturbed_runs = scale(base.perturbed_runs);
  c.isometry_pairs = scale(base.isometry_pairs);
  c.extension_samples = scale(base.extension_samples);
  c.bundle_points = scale(base.bundle_points);
  return c;
}

std::vector<CriterionResult> run_acceptance(
    const SuiteConfig& cfg,
    const std::function<void(const CriterionResult&)>& emit) {
  std::vector<CriterionResult> results;
  auto finish = [&](CriterionResult c) {
    if (emit) emit(c);
    results.push_back(std::move(c));
  };

  std::vector<StoredScalar> scalars;
  std::vector<StoredBundle> bundles;

  // 1: scalar instances reconstruct to the hidden spec exactly.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "scalar-roundtrip";
    c.detail = "recovers (kappa, phi, K) exactly; budget 10s";
    for (int i = 0; i < cfg.scalar_instances; ++i) {
      const int size = 2 + (i % 9);
      const std::uint64_t inst_seed = mix_seed(cfg.seed, 1000 + i);
      StoredScalar st;
      st.truth = random_scalar_spec(seq_space("x", size), seq_space("y", size),
                                    inst_seed);
      st.oracle = build_oracle(st.truth);
      bool bad = false;
      try {
        st.rec = reconstruct_scalar(st.oracle, cfg.probe_grid,
                                    cfg.extension_samples, cfg.tol, inst_seed);
        bad = !st.rec.ok || st.rec.spec.phi != st.truth.phi ||
              st.rec.spec.linear_part != st.truth.linear_part;
        for (const auto& [y, k] : st.truth.kappa) {
          const double dev = std::abs(st.rec.spec.kappa.at(y) - k);
          c.worst = std::max(c.worst, dev);
          bad = bad || dev > cfg.tol;
        }
        c.worst = std::max(c.worst, st.rec.extension_residual);
        scalars.push_back(std::move(st));
      } catch (const OracleInconsistent&) {
        bad = true;
      }
      ++c.trials;
      if (bad) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0 && c.seconds < 10.0;
    finish(std::move(c));
  }

  // 2: bundle instances reconstruct to the hidden spec exactly.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "bundle-roundtrip";
    c.detail = "recovers (offsets, phi, D) exactly; budget 20s";
    for (int i = 0; i < cfg.bundle_instances; ++i) {
      const int n = (i % 2 == 0) ? 4 : 8;
      const int orbits = 1 + (i % 6);
      const std::uint64_t inst_seed = mix_seed(cfg.seed, 2000 + i);
      StoredBundle st;
      st.truth = random_bundle_spec(seq_bundle(n, "a", orbits),
                                    seq_bundle(n, "b", orbits), inst_seed);
      st.oracle = build_oracle(st.truth);
      bool bad = false;
      try {
        st.rec = reconstruct_bundle(st.oracle, cfg.probe_grid,
                                    cfg.bundle_points, cfg.tol, inst_seed);
        bad = !st.rec.ok || st.rec.spec.orbit_map != st.truth.orbit_map ||
              st.rec.spec.offsets != st.truth.offsets ||
              st.rec.spec.linear_part != st.truth.linear_part;
        c.worst = std::max(c.worst, st.rec.extension_residual);
        bundles.push_back(std::move(st));
      } catch (const OracleInconsistent&) {
        bad = true;
      }
      ++c.trials;
      if (bad) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0 && c.seconds < 20.0;
    finish(std::move(c));
  }

  // 3: the constructive identities hold at tight tolerance.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "construction-lemmas";
    c.detail = "six construction identities at 1e-12";
    auto checks = run_identity_checks(cfg.identity_trials,
                                      mix_seed(cfg.seed, 3000));
    for (const auto& chk : checks) {
      c.trials += chk.trials;
      c.worst = std::max(c.worst, chk.worst);
      if (!chk.ok) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0 && c.worst <= cfg.tight_tol;
    finish(std::move(c));
  }

  // 4: the equivariant averaging is an idempotent contraction fixing
  // exactly the equivariant functions.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "haar-projection";
    c.detail = "idempotent, contractive, fixes equivariants";
    Rng rng(mix_seed(cfg.seed, 4000));
    for (int i = 0; i < cfg.haar_trials; ++i) {
      const int n = (i % 2 == 0) ? 4 : 8;
      auto b = seq_bundle(n, "h", 1 + static_cast<int>(rng.index(5)));
      std::vector<Complex> vals(b->total_space()->size());
      for (auto& z : vals) z = rng.unit_disk();
      auto f = ComplexFunction(b->total_space(), std::move(vals));
      auto pf = haar_projection(f, b);

      double worst = sup_norm(haar_projection(pf.to_function(), b) - pf);
      worst = std::max(worst, std::max(0.0, sup_norm(pf) - sup_norm(f)));
      std::vector<Complex> base(b->orbit_count());
      for (auto& z : base) z = rng.unit_disk();
      auto a = EquivariantFunction(b, std::move(base));
      worst = std::max(worst, sup_norm(haar_projection(a.to_function(), b) - a));

      c.worst = std::max(c.worst, worst);
      ++c.trials;
      if (worst > cfg.tight_tol) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0;
    finish(std::move(c));
  }

  // 5: M-projections are exactly the orbit-union indicators.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "m-projections";
    c.detail = "orbit-union projections pass, sheared ones rejected";
    int counter = 0;
    for (int orbits = 1; orbits <= 4; ++orbits) {
      auto b = seq_bundle(4, "m", orbits);
      for (const auto& subset : enumerate_m_summands(b)) {
        std::vector<std::vector<Complex>> mat(
            b->orbit_count(), std::vector<Complex>(b->orbit_count()));
        for (std::size_t k = 0; k < b->orbit_count(); ++k)
          if (subset.count(b->base()[k])) mat[k][k] = Complex(1.0, 0.0);
        auto res = m_projection_check(b, mat, 20, cfg.tol,
                                      mix_seed(cfg.seed, 5000 + counter));
        ++counter;
        ++c.trials;
        c.worst = std::max(c.worst, res.worst_residual);
        if (!res.is_m_projection || !res.summand || *res.summand != subset)
          ++c.failures;
      }
    }
    Rng rng(mix_seed(cfg.seed, 5500));
    for (int i = 0; i < cfg.projection_probes; ++i) {
      const int orbits = 2 + static_cast<int>(rng.index(3));
      auto b = seq_bundle(4, "m", orbits);
      const std::size_t u = rng.index(b->orbit_count());
      std::size_t v = rng.index(b->orbit_count() - 1);
      if (v >= u) ++v;
      // Shear an orbit-union indicator: still idempotent, no longer an
      // M-projection, so the signed pair probes must reject it.
      std::vector<std::vector<Complex>> mat(
          b->orbit_count(), std::vector<Complex>(b->orbit_count()));
      for (std::size_t k = 0; k < b->orbit_count(); ++k)
        if (k == u || (k != v && rng.coin())) mat[k][k] = Complex(1.0, 0.0);
      mat[u][v] = Complex(rng.coin() ? -0.5 : 0.5, 0.0);
      auto res = m_projection_check(b, mat, 20, cfg.tol,
                                    mix_seed(cfg.seed, 5600 + i));
      ++c.trials;
      if (res.is_m_projection) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0;
    finish(std::move(c));
  }

  // 6: the probe grid behaves like one rigid rotation per point, the
  // orientation flag agrees with every probe, and the discrete census
  // closes at 8 isometries out of 24 permutations.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "phase-grid-census";
    c.detail = "grid contraction, orientation agreement, census 24/8";
    auto row_check = [&](const std::vector<Complex>& grid,
                         const std::vector<Complex>& alpha, bool conjugated) {
      bool bad = false;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t h = g + 1; h < grid.size(); ++h) {
          const double dev = std::abs(std::abs(alpha[g] - alpha[h]) -
                                      std::abs(grid[g] - grid[h]));
          c.worst = std::max(c.worst, dev);
          bad = bad || dev > cfg.tight_tol;
        }
        const Complex expect =
            conjugated ? std::conj(grid[g]) * alpha[0] : grid[g] * alpha[0];
        const double dev = std::abs(alpha[g] - expect);
        c.worst = std::max(c.worst, dev);
        bad = bad || dev > cfg.tol;
      }
      ++c.trials;
      if (bad) ++c.failures;
    };
    for (const auto& st : scalars)
      for (const auto& row : st.rec.table.rows)
        row_check(st.rec.table.grid, row.alpha, row.conjugated);
    for (const auto& st : bundles)
      for (const auto& row : st.rec.table.rows)
        row_check(st.rec.table.grid, row.sigma, row.conjugated);

    auto census = circle_isometry_census();
    ++c.trials;
    if (census.permutations != 24 || census.isometries != 8 ||
        !census.all_rotation_or_reflection)
      ++c.failures;
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0;
    finish(std::move(c));
  }

  // 7: seeded oracle defects are flagged with an honest residual, and no
  // clean run was flagged.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "perturbation-detection";
    c.detail = "seeded defects flagged >= 5e-4, no false flags";
    const double mag = 1e-3;
    const int scalar_half = (cfg.perturbed_runs + 1) / 2;
    const int bundle_half = cfg.perturbed_runs / 2;
    for (int i = 0; i < scalar_half; ++i) {
      const int size = 2 + (i % 5);
      const std::uint64_t s = mix_seed(cfg.seed, 7000 + i);
      auto spec = random_scalar_spec(seq_space("x", size),
                                     seq_space("y", size), s);
      auto oracle = build_oracle(spec);
      auto site = ComplexFunction::indicator(spec.domain,
                                             spec.domain->point(i % size));
      auto bad_oracle = perturb_oracle(oracle, site, mag);
      bool flagged = false;
      double residual = 0.0;
      try {
        auto rec = reconstruct_scalar(bad_oracle, cfg.probe_grid, 50, cfg.tol, s);
        flagged = !rec.ok;
        residual = std::max(rec.extension_residual, rec.isometry_residual);
      } catch (const OracleInconsistent& e) {
        flagged = true;
        residual = e.residual;
      }
      ++c.trials;
      c.worst = std::max(c.worst, residual);
      if (!flagged || residual < 5e-4) ++c.failures;
    }
    for (int i = 0; i < bundle_half; ++i) {
      const int n = (i % 2 == 0) ? 4 : 8;
      const int orbits = 2 + (i % 4);
      const std::uint64_t s = mix_seed(cfg.seed, 7500 + i);
      auto spec = random_bundle_spec(seq_bundle(n, "a", orbits),
                                     seq_bundle(n, "b", orbits), s);
      auto oracle = build_oracle(spec);
      auto site = EquivariantFunction::orbit_indicator(
          spec.domain, spec.domain->base()[i % orbits]);
      auto bad_oracle = perturb_oracle(oracle, site, mag);
      bool flagged = false;
      double residual = 0.0;
      try {
        auto rec = reconstruct_bundle(bad_oracle, cfg.probe_grid, 50, cfg.tol, s);
        flagged = !rec.ok;
        residual = std::max(rec.extension_residual, rec.isometry_residual);
      } catch (const OracleInconsistent& e) {
        flagged = true;
        residual = e.residual;
      }
      ++c.trials;
      c.worst = std::max(c.worst, residual);
      if (!flagged || residual < 5e-4) ++c.failures;
    }
    for (const auto& st : scalars) {
      ++c.trials;
      if (!st.rec.ok) ++c.failures;  // false flag on a clean oracle
    }
    for (const auto& st : bundles) {
      ++c.trials;
      if (!st.rec.ok) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    c.ok = c.failures == 0;
    finish(std::move(c));
  }

  // 8: the reconstructed extensions are sphere isometries agreeing with
  // their oracles, and the whole battery fits the time budget.
  {
    auto t0 = Clock::now();
    CriterionResult c;
    c.name = "isometry-certificates";
    c.detail = "distance preservation and oracle agreement; 60s budget";
    int idx = 0;
    for (const auto& st : scalars) {
      Rng rng(mix_seed(cfg.seed, 8000 + idx++));
      bool bad = false;
      for (int p = 0; p < cfg.isometry_pairs; ++p) {
        auto u = random_sphere_point(st.oracle.domain, rng);
        auto v = random_sphere_point(st.oracle.domain, rng);
        const double dev = std::abs(sup_norm(st.rec.extend(u) - st.rec.extend(v)) -
                                    sup_norm(u - v));
        c.worst = std::max(c.worst, dev);
        bad = bad || dev > cfg.tol;
      }
      for (int p = 0; p < cfg.extension_samples; ++p) {
        auto f = random_sphere_point(st.oracle.domain, rng);
        const double dev = sup_norm(st.rec.extend(f) - st.oracle.forward(f));
        c.worst = std::max(c.worst, dev);
        bad = bad || dev > cfg.tol;
      }
      ++c.trials;
      if (bad) ++c.failures;
    }
    for (const auto& st : bundles) {
      Rng rng(mix_seed(cfg.seed, 8000 + idx++));
      bool bad = false;
      for (int p = 0; p < cfg.isometry_pairs; ++p) {
        auto u = random_sphere_point(st.oracle.domain, rng);
        auto v = random_sphere_point(st.oracle.domain, rng);
        const double dev = std::abs(sup_norm(st.rec.extend(u) - st.rec.extend(v)) -
                                    sup_norm(u - v));
        c.worst = std::max(c.worst, dev);
        bad = bad || dev > cfg.tol;
      }
      for (int p = 0; p < cfg.bundle_points; ++p) {
        auto a = random_sphere_point(st.oracle.domain, rng);
        const double dev = sup_norm(st.rec.extend(a) - st.oracle.forward(a));
        c.worst = std::max(c.worst, dev);
        bad = bad || dev > cfg.tol;
      }
      ++c.trials;
      if (bad) ++c.failures;
    }
    c.seconds = seconds_since(t0);
    double total = c.seconds;
    for (const auto& done : results) total += done.seconds;
    c.ok = c.failures == 0 && total < 60.0;
    finish(std::move(c));
  }

  return results;
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json arr = Json::array();
  for (const auto& c : results) {
    Json j;
    j["name"] = c.name;
    j["ok"] = c.ok;
    j["trials"] = c.trials;
    j["failures"] = c.failures;
    j["worst"] = c.worst;
    j["seconds"] = c.seconds;
    j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace tingley
