#include "tingley/factory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tingley {

namespace {

constexpr double kSphereGuard = 1e-6;
constexpr double kSiteRadius = 1e-9;

void require_unimodular(Complex z, const char* what) {
  if (!approx(std::abs(z), 1.0, kTightTol))
    throw PreconditionError(std::string(what) + ": weight must be unimodular");
}

}  // namespace

void ScalarWcoSpec::validate() const {
  if (!domain || !target) throw PreconditionError("scalar spec: missing spaces");
  if (domain->size() != target->size())
    throw PreconditionError("scalar spec: domain and target sizes differ");
  if (kappa.size() != target->size() || phi.size() != target->size())
    throw PreconditionError("scalar spec: field sizes do not match the target");
  std::set<std::string> seen;
  for (const auto& y : target->points()) {
    auto k = kappa.find(y);
    if (k == kappa.end())
      throw PreconditionError("scalar spec: kappa missing at " + y);
    require_unimodular(k->second, "scalar spec");
    auto p = phi.find(y);
    if (p == phi.end())
      throw PreconditionError("scalar spec: phi missing at " + y);
    if (!domain->contains(p->second))
      throw PreconditionError("scalar spec: phi image outside the domain");
    if (!seen.insert(p->second).second)
      throw PreconditionError("scalar spec: phi is not injective");
  }
  for (const auto& y : linear_part)
    if (!target->contains(y))
      throw PreconditionError("scalar spec: linear part outside the target");
}

void BundleWcoSpec::validate() const {
  if (!domain || !target) throw PreconditionError("bundle spec: missing bundles");
  if (domain->order() != target->order())
    throw PreconditionError("bundle spec: circle orders differ");
  if (domain->orbit_count() != target->orbit_count())
    throw PreconditionError("bundle spec: orbit counts differ");
  if (orbit_map.size() != target->orbit_count() ||
      offsets.size() != target->orbit_count())
    throw PreconditionError("bundle spec: field sizes do not match the target");
  std::set<std::string> seen;
  for (const auto& y : target->base()) {
    auto m = orbit_map.find(y);
    if (m == orbit_map.end())
      throw PreconditionError("bundle spec: orbit map missing at " + y);
    if (!domain->has_orbit(m->second))
      throw PreconditionError("bundle spec: orbit image outside the domain");
    if (!seen.insert(m->second).second)
      throw PreconditionError("bundle spec: orbit map is not injective");
    auto o = offsets.find(y);
    if (o == offsets.end())
      throw PreconditionError("bundle spec: offset missing at " + y);
    if (o->second < 0 || o->second >= domain->order())
      throw PreconditionError("bundle spec: offset outside [0, n)");
  }
  for (const auto& x : linear_part)
    if (!domain->has_orbit(x))
      throw PreconditionError("bundle spec: linear part outside the domain base");
}

ScalarWcoSpec inverse_spec(const ScalarWcoSpec& s) {
  s.validate();
  ScalarWcoSpec inv;
  inv.domain = s.target;
  inv.target = s.domain;
  for (const auto& [y, x] : s.phi) {
    inv.phi[x] = y;
    const Complex k = s.kappa.at(y);
    if (s.linear_part.count(y)) {
      inv.linear_part.insert(x);
      inv.kappa[x] = std::conj(k);
    } else {
      inv.kappa[x] = k;
    }
  }
  return inv;
}

BundleWcoSpec inverse_spec(const BundleWcoSpec& s) {
  s.validate();
  BundleWcoSpec inv;
  inv.domain = s.target;
  inv.target = s.domain;
  const int n = s.domain->order();
  for (const auto& [y, x] : s.orbit_map) {
    inv.orbit_map[x] = y;
    const int j = s.offsets.at(y);
    if (s.linear_part.count(x)) {
      inv.linear_part.insert(y);
      inv.offsets[x] = (n - j) % n;
    } else {
      inv.offsets[x] = j;
    }
  }
  return inv;
}

ComplexFunction apply_wco(const ScalarWcoSpec& s, const ComplexFunction& f) {
  if (!(*f.space() == *s.domain))
    throw PreconditionError("apply: argument lives on the wrong space");
  std::vector<Complex> out(s.target->size());
  for (std::size_t i = 0; i < s.target->size(); ++i) {
    const auto& y = s.target->point(i);
    const Complex v = s.kappa.at(y) * f.value(s.phi.at(y));
    out[i] = s.linear_part.count(y) ? v : std::conj(v);
  }
  return ComplexFunction(s.target, std::move(out));
}

EquivariantFunction apply_wco(const BundleWcoSpec& s,
                              const EquivariantFunction& a) {
  if (!(*a.bundle() == *s.domain))
    throw PreconditionError("apply: argument lives on the wrong bundle");
  const int n = s.domain->order();
  std::vector<Complex> out(s.target->orbit_count());
  for (std::size_t i = 0; i < s.target->orbit_count(); ++i) {
    const auto& y = s.target->base()[i];
    const auto& x = s.orbit_map.at(y);
    const Complex v = root_of_unity(s.offsets.at(y), n) * a.base_value(x);
    out[i] = s.linear_part.count(x) ? v : std::conj(v);
  }
  return EquivariantFunction(s.target, std::move(out));
}

ScalarOracle build_oracle(const ScalarWcoSpec& s) {
  s.validate();
  auto inv = inverse_spec(s);
  ScalarOracle o;
  o.domain = s.domain;
  o.target = s.target;
  o.forward = [s](const ComplexFunction& f) {
    if (!sphere_check(f, kSphereGuard))
      throw PreconditionError("oracle: argument off the unit sphere");
    return apply_wco(s, f);
  };
  o.inverse = [inv](const ComplexFunction& g) {
    if (!sphere_check(g, kSphereGuard))
      throw PreconditionError("oracle: argument off the unit sphere");
    return apply_wco(inv, g);
  };
  // Construction-time sanity: the two callables must be mutually inverse.
  auto probe = ComplexFunction::indicator(s.domain, s.domain->point(0));
  if (sup_norm(o.inverse(o.forward(probe)) - probe) > kTightTol)
    throw PreconditionError("oracle: forward/inverse mismatch");
  return o;
}

BundleOracle build_oracle(const BundleWcoSpec& s) {
  s.validate();
  auto inv = inverse_spec(s);
  BundleOracle o;
  o.domain = s.domain;
  o.target = s.target;
  o.forward = [s](const EquivariantFunction& a) {
    if (!sphere_check(a, kSphereGuard))
      throw PreconditionError("oracle: argument off the unit sphere");
    return apply_wco(s, a);
  };
  o.inverse = [inv](const EquivariantFunction& b) {
    if (!sphere_check(b, kSphereGuard))
      throw PreconditionError("oracle: argument off the unit sphere");
    return apply_wco(inv, b);
  };
  auto probe = EquivariantFunction::orbit_indicator(s.domain, s.domain->base()[0]);
  if (sup_norm(o.inverse(o.forward(probe)) - probe) > kTightTol)
    throw PreconditionError("oracle: forward/inverse mismatch");
  return o;
}

ScalarWcoSpec random_scalar_spec(const PointSpacePtr& domain,
                                 const PointSpacePtr& target,
                                 std::uint64_t seed) {
  ScalarWcoSpec s;
  s.domain = domain;
  s.target = target;
  Rng rng(mix_seed(seed, 0x73636c73u));
  auto perm = rng.permutation(domain->size());
  for (std::size_t i = 0; i < target->size(); ++i) {
    const auto& y = target->point(i);
    s.phi[y] = domain->point(perm[i]);
    s.kappa[y] = rng.quantized_phase(16);
    if (rng.coin()) s.linear_part.insert(y);
  }
  s.validate();
  return s;
}

BundleWcoSpec random_bundle_spec(const BundlePtr& domain,
                                 const BundlePtr& target, std::uint64_t seed) {
  BundleWcoSpec s;
  s.domain = domain;
  s.target = target;
  Rng rng(mix_seed(seed, 0x626e6473u));
  auto perm = rng.permutation(domain->orbit_count());
  for (std::size_t i = 0; i < target->orbit_count(); ++i) {
    const auto& y = target->base()[i];
    const auto& x = domain->base()[perm[i]];
    s.orbit_map[y] = x;
    s.offsets[y] = static_cast<int>(rng.index(domain->order()));
    if (rng.coin()) s.linear_part.insert(x);
  }
  s.validate();
  return s;
}

ScalarOracle perturb_oracle(const ScalarOracle& o, const ComplexFunction& site,
                            double mag) {
  if (!(mag > 0.0))
    throw PreconditionError("perturb: magnitude must be positive");
  ScalarOracle bad = o;
  auto clean_forward = o.forward;
  bad.forward = [clean_forward, site, mag](const ComplexFunction& f) {
    auto img = clean_forward(f);
    if (sup_norm(f - site) > kSiteRadius) return img;
    std::size_t top = 0;
    for (std::size_t i = 1; i < img.size(); ++i)
      if (std::abs(img[i]) > std::abs(img[top])) top = i;
    const std::size_t hit = (top + 1) % img.size();
    auto vals = img.values();
    vals[hit] += Complex(mag, 0.0);
    auto bumped = ComplexFunction(img.space(), std::move(vals));
    return Complex(1.0 / sup_norm(bumped), 0.0) * bumped;
  };
  return bad;
}

BundleOracle perturb_oracle(const BundleOracle& o,
                            const EquivariantFunction& site, double mag) {
  if (!(mag > 0.0))
    throw PreconditionError("perturb: magnitude must be positive");
  BundleOracle bad = o;
  auto clean_forward = o.forward;
  bad.forward = [clean_forward, site, mag](const EquivariantFunction& a) {
    auto img = clean_forward(a);
    if (sup_norm(a - site) > kSiteRadius) return img;
    auto vals = img.base_values();
    std::size_t top = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      if (std::abs(vals[i]) > std::abs(vals[top])) top = i;
    const std::size_t hit = (top + 1) % vals.size();
    vals[hit] += Complex(mag, 0.0);
    auto bumped = EquivariantFunction(img.bundle(), std::move(vals));
    return Complex(1.0 / sup_norm(bumped), 0.0) * bumped;
  };
  return bad;
}

ComplexFunction random_sphere_point(const PointSpacePtr& space, Rng& rng) {
  std::vector<Complex> v(space->size());
  for (auto& z : v) z = rng.unit_disk();
  std::size_t top = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[top])) top = i;
  const double m = std::abs(v[top]);
  if (m == 0.0) {
    v[top] = Complex(1.0, 0.0);
  } else {
    v[top] = Complex(v[top].real() / m, v[top].imag() / m);
  }
  return ComplexFunction(space, std::move(v));
}

EquivariantFunction random_sphere_point(const BundlePtr& bundle, Rng& rng) {
  std::vector<Complex> v(bundle->orbit_count());
  for (auto& z : v) z = rng.unit_disk();
  std::size_t top = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[top])) top = i;
  const double m = std::abs(v[top]);
  if (m == 0.0) {
    v[top] = Complex(1.0, 0.0);
  } else {
    v[top] = Complex(v[top].real() / m, v[top].imag() / m);
  }
  return EquivariantFunction(bundle, std::move(v));
}

namespace {

// Small on-sphere displacements of the hint, so a defect parked exactly at
// one input cannot hide between random samples.
std::vector<ComplexFunction> near_hints(const ComplexFunction& h) {
  std::vector<ComplexFunction> out;
  for (std::size_t j = 0; j < h.size(); ++j) {
    auto vals = h.values();
    vals[j] += Complex(1e-6, 0.0);
    auto moved = ComplexFunction(h.space(), vals);
    out.push_back(Complex(1.0 / sup_norm(moved), 0.0) * moved);
    vals[j] -= Complex(1e-6, 2e-6);
    auto moved2 = ComplexFunction(h.space(), std::move(vals));
    out.push_back(Complex(1.0 / sup_norm(moved2), 0.0) * moved2);
  }
  return out;
}

std::vector<EquivariantFunction> near_hints(const EquivariantFunction& h) {
  std::vector<EquivariantFunction> out;
  for (std::size_t j = 0; j < h.base_values().size(); ++j) {
    auto vals = h.base_values();
    vals[j] += Complex(1e-6, 0.0);
    auto moved = EquivariantFunction(h.bundle(), vals);
    out.push_back(Complex(1.0 / sup_norm(moved), 0.0) * moved);
    vals[j] -= Complex(1e-6, 2e-6);
    auto moved2 = EquivariantFunction(h.bundle(), std::move(vals));
    out.push_back(Complex(1.0 / sup_norm(moved2), 0.0) * moved2);
  }
  return out;
}

template <typename Oracle, typename Fn, typename Sampler, typename Dump>
VerifyResult verify_impl(const Oracle& o, int pairs, double tol,
                         std::uint64_t seed, const std::optional<Fn>& hint,
                         Sampler sample, Dump dump) {
  Rng rng(mix_seed(seed, 0x76657269u));
  std::vector<std::pair<Fn, Fn>> tested;
  for (int i = 0; i < pairs; ++i)
    tested.emplace_back(sample(rng), sample(rng));
  if (hint) {
    for (const auto& v : near_hints(*hint)) tested.emplace_back(*hint, v);
    for (int i = 0; i < 4; ++i) tested.emplace_back(*hint, sample(rng));
  }

  VerifyResult res;
  res.ok = true;
  std::optional<std::pair<Fn, Fn>> worst_pair;
  for (const auto& [u, v] : tested) {
    const double din = sup_norm(u - v);
    const double dout = sup_norm(o.forward(u) - o.forward(v));
    const double dev = std::abs(dout - din);
    if (dev > res.worst) {
      res.worst = dev;
      worst_pair = {u, v};
    }
  }
  res.ok = res.worst <= tol;
  if (worst_pair) {
    res.witness_a = dump(worst_pair->first);
    res.witness_b = dump(worst_pair->second);
  }
  return res;
}

}  // namespace

VerifyResult verify_isometry(const ScalarOracle& o, int pairs, double tol,
                             std::uint64_t seed,
                             const std::optional<ComplexFunction>& hint) {
  return verify_impl(
      o, pairs, tol, seed, hint,
      [&o](Rng& rng) { return random_sphere_point(o.domain, rng); },
      [](const ComplexFunction& f) { return serialize(f); });
}

VerifyResult verify_isometry(const BundleOracle& o, int pairs, double tol,
                             std::uint64_t seed,
                             const std::optional<EquivariantFunction>& hint) {
  return verify_impl(
      o, pairs, tol, seed, hint,
      [&o](Rng& rng) { return random_sphere_point(o.domain, rng); },
      [](const EquivariantFunction& a) { return to_json(a).dump(); });
}

Json to_json(const ScalarWcoSpec& s) {
  Json j;
  j["section"] = 2;
  j["X"] = s.domain->points();
  j["Y"] = s.target->points();
  Json kap = Json::array();
  for (const auto& y : s.target->points()) {
    const Complex k = s.kappa.at(y);
    kap.push_back(Json::array({k.real(), k.imag()}));
  }
  j["kappa"] = std::move(kap);
  Json kset = Json::array();
  for (const auto& y : s.target->points())
    if (s.linear_part.count(y)) kset.push_back(y);
  j["K"] = std::move(kset);
  Json phi = Json::object();
  for (const auto& y : s.target->points()) phi[y] = s.phi.at(y);
  j["phi"] = std::move(phi);
  return j;
}

ScalarWcoSpec scalar_spec_from_json(const Json& j) {
  if (!j.is_object() || j.value("section", 0) != 2)
    throw ParseError("scalar spec: expected section 2");
  for (const char* key : {"X", "Y", "kappa", "K", "phi"})
    if (!j.contains(key))
      throw ParseError(std::string("scalar spec: missing ") + key);
  try {
    ScalarWcoSpec s;
    s.domain = make_space(j.at("X").get<std::vector<std::string>>());
    s.target = make_space(j.at("Y").get<std::vector<std::string>>());
    const auto& kj = j.at("kappa");
    if (!kj.is_array() || kj.size() != s.target->size())
      throw ParseError("scalar spec: kappa must align with Y");
    for (std::size_t i = 0; i < s.target->size(); ++i) {
      const auto& v = kj[i];
      if (!v.is_array() || v.size() != 2)
        throw ParseError("scalar spec: kappa entries must be [re, im]");
      s.kappa[s.target->point(i)] =
          Complex(v[0].get<double>(), v[1].get<double>());
    }
    for (const auto& y : j.at("K")) s.linear_part.insert(y.get<std::string>());
    for (const auto& [y, x] : j.at("phi").items())
      s.phi[y] = x.get<std::string>();
    s.validate();
    return s;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("scalar spec: ") + e.what());
  }
}

Json to_json(const BundleWcoSpec& s) {
  Json j;
  j["section"] = 3;
  j["n"] = s.domain->order();
  j["X"] = s.domain->base();
  j["Y"] = s.target->base();
  Json d = Json::array();
  for (const auto& x : s.domain->base())
    if (s.linear_part.count(x)) d.push_back(x);
  j["D"] = std::move(d);
  Json phi = Json::object(), offs = Json::object();
  for (const auto& y : s.target->base()) {
    phi[y] = s.orbit_map.at(y);
    offs[y] = s.offsets.at(y);
  }
  j["phi"] = std::move(phi);
  j["phi_offsets"] = std::move(offs);
  return j;
}

BundleWcoSpec bundle_spec_from_json(const Json& j) {
  if (!j.is_object() || j.value("section", 0) != 3)
    throw ParseError("bundle spec: expected section 3");
  for (const char* key : {"n", "X", "Y", "D", "phi", "phi_offsets"})
    if (!j.contains(key))
      throw ParseError(std::string("bundle spec: missing ") + key);
  try {
    BundleWcoSpec s;
    const int n = j.at("n").get<int>();
    s.domain = make_bundle(n, j.at("X").get<std::vector<std::string>>());
    s.target = make_bundle(n, j.at("Y").get<std::vector<std::string>>());
    for (const auto& x : j.at("D")) s.linear_part.insert(x.get<std::string>());
    for (const auto& [y, x] : j.at("phi").items())
      s.orbit_map[y] = x.get<std::string>();
    for (const auto& [y, off] : j.at("phi_offsets").items())
      s.offsets[y] = off.get<int>();
    s.validate();
    return s;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bundle spec: ") + e.what());
  }
}

}  // namespace tingley
