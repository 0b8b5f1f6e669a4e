#include "tingley/bundle.hpp"

#include <algorithm>
#include <cmath>

namespace tingley {

FiniteTBundle::FiniteTBundle(int n, std::vector<std::string> base)
    : n_(n), base_(std::move(base)) {
  if (n_ < 1) throw PreconditionError("bundle: order must be at least 1");
  if (base_.empty()) throw PreconditionError("bundle: empty base");
  for (std::size_t i = 0; i < base_.size(); ++i) {
    const auto& o = base_[i];
    if (o.empty()) throw PreconditionError("bundle: empty orbit id");
    if (o.find('@') != std::string::npos)
      throw PreconditionError("bundle: orbit ids may not contain '@'");
    if (!base_index_.emplace(o, i).second)
      throw PreconditionError("bundle: duplicate orbit id " + o);
  }
  std::vector<std::string> pts;
  pts.reserve(base_.size() * static_cast<std::size_t>(n_));
  for (const auto& o : base_)
    for (int k = 0; k < n_; ++k) pts.push_back(o + "@" + std::to_string(k));
  total_ = make_space(std::move(pts));
}

std::size_t FiniteTBundle::orbit_index(std::string_view orbit) const {
  auto it = base_index_.find(orbit);
  if (it == base_index_.end())
    throw PreconditionError("bundle: unknown orbit " + std::string(orbit));
  return it->second;
}

bool FiniteTBundle::has_orbit(std::string_view orbit) const {
  return base_index_.find(orbit) != base_index_.end();
}

std::string FiniteTBundle::point_id(std::string_view orbit, int k) const {
  orbit_index(orbit);
  int kk = ((k % n_) + n_) % n_;
  return std::string(orbit) + "@" + std::to_string(kk);
}

std::pair<std::string, int> FiniteTBundle::locate(std::string_view point_id) const {
  auto at = point_id.rfind('@');
  if (at == std::string_view::npos)
    throw PreconditionError("bundle: malformed point id " +
                            std::string(point_id));
  std::string orbit(point_id.substr(0, at));
  orbit_index(orbit);
  int k = 0;
  try {
    std::size_t used = 0;
    std::string tail(point_id.substr(at + 1));
    k = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw PreconditionError("bundle: malformed phase in " + std::string(point_id));
  }
  if (k < 0 || k >= n_)
    throw PreconditionError("bundle: phase out of range in " +
                            std::string(point_id));
  return {std::move(orbit), k};
}

std::string FiniteTBundle::rotate(std::string_view point_id, int j) const {
  auto [orbit, k] = locate(point_id);
  return this->point_id(orbit, k + j);
}

BundlePtr make_bundle(int n, std::vector<std::string> base) {
  return std::make_shared<const FiniteTBundle>(n, std::move(base));
}

EquivariantFunction::EquivariantFunction(BundlePtr bundle,
                                         std::vector<Complex> base_values)
    : bundle_(std::move(bundle)), base_values_(std::move(base_values)) {
  if (!bundle_) throw PreconditionError("equivariant: null bundle");
  if (base_values_.size() != bundle_->orbit_count())
    throw PreconditionError("equivariant: base value count mismatch");
}

EquivariantFunction EquivariantFunction::zero(const BundlePtr& b) {
  return EquivariantFunction(b, std::vector<Complex>(b->orbit_count()));
}

EquivariantFunction EquivariantFunction::orbit_indicator(const BundlePtr& b,
                                                         std::string_view orbit) {
  std::vector<Complex> v(b->orbit_count());
  v[b->orbit_index(orbit)] = Complex(1.0, 0.0);
  return EquivariantFunction(b, std::move(v));
}

Complex EquivariantFunction::base_value(std::string_view orbit) const {
  return base_values_[bundle_->orbit_index(orbit)];
}

Complex EquivariantFunction::value_at(std::string_view point_id) const {
  auto [orbit, k] = bundle_->locate(point_id);
  return root_of_unity(k, bundle_->order()) * base_values_[bundle_->orbit_index(orbit)];
}

ComplexFunction EquivariantFunction::to_function() const {
  const int n = bundle_->order();
  std::vector<Complex> vals;
  vals.reserve(bundle_->orbit_count() * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < bundle_->orbit_count(); ++i)
    for (int k = 0; k < n; ++k)
      vals.push_back(root_of_unity(k, n) * base_values_[i]);
  return ComplexFunction(bundle_->total_space(), std::move(vals));
}

EquivariantFunction EquivariantFunction::with_base_value(std::string_view orbit,
                                                         Complex v) const {
  auto vals = base_values_;
  vals[bundle_->orbit_index(orbit)] = v;
  return EquivariantFunction(bundle_, std::move(vals));
}

namespace {

void require_same_bundle(const EquivariantFunction& a,
                         const EquivariantFunction& b) {
  if (a.bundle() != b.bundle() && !(*a.bundle() == *b.bundle()))
    throw PreconditionError("equivariant: mixed bundles");
}

}  // namespace

EquivariantFunction operator+(const EquivariantFunction& a,
                              const EquivariantFunction& b) {
  require_same_bundle(a, b);
  std::vector<Complex> v(a.base_values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return EquivariantFunction(a.bundle(), std::move(v));
}

EquivariantFunction operator-(const EquivariantFunction& a,
                              const EquivariantFunction& b) {
  require_same_bundle(a, b);
  std::vector<Complex> v(a.base_values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return EquivariantFunction(a.bundle(), std::move(v));
}

EquivariantFunction operator*(Complex c, const EquivariantFunction& a) {
  std::vector<Complex> v(a.base_values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a[i];
  return EquivariantFunction(a.bundle(), std::move(v));
}

double sup_norm(const EquivariantFunction& a) {
  double m = 0.0;
  for (const auto& v : a.base_values()) m = std::max(m, std::abs(v));
  return m;
}

bool sphere_check(const EquivariantFunction& a, double tol) {
  return std::abs(sup_norm(a) - 1.0) <= tol;
}

EquivariantFunction haar_projection(const ComplexFunction& a,
                                    const BundlePtr& bundle) {
  if (!(*a.space() == *bundle->total_space()))
    throw PreconditionError("haar: function does not live on the total space");
  const int n = bundle->order();
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<Complex> base(bundle->orbit_count());
  for (std::size_t i = 0; i < bundle->orbit_count(); ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      acc += root_of_unity(-j, n) * a.value(bundle->point_id(bundle->base()[i], j));
    base[i] = inv * acc;
  }
  return EquivariantFunction(bundle, std::move(base));
}

EquivariantFunction triple_product(const EquivariantFunction& a,
                                   const EquivariantFunction& b,
                                   const EquivariantFunction& c) {
  require_same_bundle(a, b);
  require_same_bundle(a, c);
  std::vector<Complex> v(a.base_values().size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a[i] * std::conj(b[i]) * c[i];
  return EquivariantFunction(a.bundle(), std::move(v));
}

EquivariantFunction odd_power(const EquivariantFunction& a, int m) {
  if (m < 0) throw PreconditionError("odd_power: exponent must be nonnegative");
  EquivariantFunction p = a;
  for (int i = 0; i < m; ++i) p = triple_product(a, a, p);
  return p;
}

RadialProfile::RadialProfile(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2)
    throw PreconditionError("profile: need at least two knots");
  if (knots_.front().first != 0.0 || knots_.front().second != 0.0)
    throw PreconditionError("profile: must start at (0, 0)");
  if (knots_.back().first != 1.0)
    throw PreconditionError("profile: must end at s = 1");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].first < knots_[i].first))
      throw PreconditionError("profile: knot positions must increase strictly");
}

double RadialProfile::operator()(double s) const {
  s = std::clamp(s, 0.0, 1.0);
  for (const auto& [ks, kv] : knots_)
    if (s == ks) return kv;  // knots reproduce exactly
  std::size_t hi = 1;
  while (knots_[hi].first < s) ++hi;
  const auto& [s0, v0] = knots_[hi - 1];
  const auto& [s1, v1] = knots_[hi];
  return v0 + (s - s0) * (v1 - v0) / (s1 - s0);
}

RadialProfile RadialProfile::identity() {
  return RadialProfile({{0.0, 0.0}, {1.0, 1.0}});
}

RadialProfile RadialProfile::threshold(double delta) {
  return RadialProfile({{0.0, 0.0}, {delta, 0.0}, {1.0, 1.0}});
}

EquivariantFunction functional_calculus(const RadialProfile& g,
                                        const EquivariantFunction& a) {
  if (sup_norm(a) > 1.0 + kDefaultTol)
    throw PreconditionError("functional_calculus: ||a|| must be at most 1");
  std::vector<Complex> v(a.base_values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = std::abs(a[i]);
    if (s == 0.0) continue;
    const double gv = g(s);
    const Complex phase(a[i].real() / s, a[i].imag() / s);
    v[i] = gv * phase;
  }
  return EquivariantFunction(a.bundle(), std::move(v));
}

std::pair<RadialProfile, RadialProfile> convex_profile_split(
    const RadialProfile& g, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw PreconditionError("profile split: eps must sit in (0, 1/2)");
  if (!approx(g(1.0), 1.0, kTightTol))
    throw PreconditionError("profile split: profile must reach 1 at s = 1");

  std::vector<double> ss = {0.0, eps / 2.0, eps, 1.0 - eps, 1.0 - eps / 2.0, 1.0};
  for (const auto& [ks, kv] : g.knots())
    if (ks > eps && ks < 1.0 - eps) ss.push_back(ks);
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());

  auto f_of = [&](double s) {
    if (s <= eps / 2.0) return 0.0;
    if (s >= 1.0 - eps / 2.0) return 1.0;
    if (s < eps) {  // ramp from 0 up to g(eps)
      return g(eps) * (s - eps / 2.0) / (eps / 2.0);
    }
    if (s > 1.0 - eps) {  // ramp from g(1 - eps) up to 1
      double t = (s - (1.0 - eps)) / (eps / 2.0);
      return g(1.0 - eps) + (1.0 - g(1.0 - eps)) * std::min(t, 1.0);
    }
    return g(s);
  };

  std::vector<std::pair<double, double>> fk, gk;
  const double scale = 1.0 - eps / 2.0;
  for (double s : ss) {
    const double fv = f_of(s);
    fk.emplace_back(s, fv);
    gk.emplace_back(s, (s - (eps / 2.0) * fv) / scale);
  }
  return {RadialProfile(std::move(fk)), RadialProfile(std::move(gk))};
}

EquivariantFunction urysohn_equivariant(const BundlePtr& bundle,
                                        std::string_view t0,
                                        const std::set<std::string>& w_orbits,
                                        Complex mu) {
  if (!approx(std::abs(mu), 1.0, kTightTol))
    throw PreconditionError("urysohn_equivariant: peak value must be unimodular");
  auto [orbit, k] = bundle->locate(t0);
  for (const auto& o : w_orbits)
    if (!bundle->has_orbit(o))
      throw PreconditionError("urysohn_equivariant: unknown orbit " + o);
  if (w_orbits.find(orbit) == w_orbits.end())
    throw PreconditionError("urysohn_equivariant: W must contain the peak orbit");
  std::vector<Complex> base(bundle->orbit_count());
  base[bundle->orbit_index(orbit)] = root_of_unity(-k, bundle->order()) * mu;
  return EquivariantFunction(bundle, std::move(base));
}

std::vector<std::set<std::string>> enumerate_m_summands(const BundlePtr& b) {
  const std::size_t m = b->orbit_count();
  std::vector<std::set<std::string>> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::set<std::string> s;
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (std::size_t{1} << j)) s.insert(b->base()[j]);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<Complex> apply_matrix(const std::vector<std::vector<Complex>>& m,
                                  const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

double vec_sup(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

MProjectionResult m_projection_check(
    const BundlePtr& bundle, const std::vector<std::vector<Complex>>& matrix,
    int samples, double tol, std::uint64_t seed) {
  const std::size_t m = bundle->orbit_count();
  if (matrix.size() != m)
    throw PreconditionError("m_projection_check: matrix row count mismatch");
  for (const auto& row : matrix)
    if (row.size() != m)
      throw PreconditionError("m_projection_check: matrix column count mismatch");

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Complex> col(m);
    for (std::size_t j = 0; j < m; ++j) col[j] = matrix[j][i];
    auto sq = apply_matrix(matrix, col);
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(sq[j] - col[j]) > tol)
        throw PreconditionError("m_projection_check: matrix is not idempotent");
  }

  std::vector<std::vector<Complex>> probes;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Complex> e(m);
    e[i] = Complex(1.0, 0.0);
    probes.push_back(e);
  }
  // Signed and rotated pairs: these separate shears and averages that the
  // plain basis cannot see.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      std::vector<Complex> plus(m), minus(m), turned(m);
      plus[i] = Complex(1.0, 0.0);
      plus[j] = Complex(1.0, 0.0);
      minus[i] = Complex(1.0, 0.0);
      minus[j] = Complex(-1.0, 0.0);
      turned[i] = Complex(1.0, 0.0);
      turned[j] = Complex(0.0, 1.0);
      probes.push_back(std::move(plus));
      probes.push_back(std::move(minus));
      probes.push_back(std::move(turned));
    }
  Rng rng(mix_seed(seed, 0x6d70726f6au));
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> v(m);
    for (auto& z : v) z = rng.unit_disk();
    probes.push_back(std::move(v));
  }

  double worst = 0.0;
  for (const auto& a : probes) {
    auto pa = apply_matrix(matrix, a);
    std::vector<Complex> rest(m);
    for (std::size_t i = 0; i < m; ++i) rest[i] = a[i] - pa[i];
    const double lhs = vec_sup(a);
    const double rhs = std::max(vec_sup(pa), vec_sup(rest));
    worst = std::max(worst, std::abs(lhs - rhs));
  }

  MProjectionResult result;
  result.worst_residual = worst;
  result.is_m_projection = worst <= tol;
  if (result.is_m_projection) {
    for (const auto& subset : enumerate_m_summands(bundle)) {
      double dev = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double want = subset.count(bundle->base()[i]) ? 1.0 : 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const Complex target = i == j ? Complex(want, 0.0) : Complex(0.0, 0.0);
          dev = std::max(dev, std::abs(matrix[i][j] - target));
        }
      }
      if (dev <= 1e-6) {
        result.summand = subset;
        break;
      }
    }
  }
  return result;
}

std::vector<std::string> transversal(const BundlePtr& b) {
  std::vector<std::string> out;
  for (const auto& o : b->base()) out.push_back(b->point_id(o, 0));
  return out;
}

BundleFace canonical_face_label(const BundlePtr& b, std::string_view t,
                                Complex mu) {
  if (!approx(std::abs(mu), 1.0, kTightTol))
    throw PreconditionError("canonical_face_label: phase must be unimodular");
  auto [orbit, k] = b->locate(t);
  return BundleFace{b->point_id(orbit, 0), root_of_unity(-k, b->order()) * mu};
}

EquivariantFunction BlendPair::blend(double r) const {
  if (!(r > 0.0 && r < 1.0))
    throw PreconditionError("blend: r must sit in (0, 1)");
  return Complex(r, 0.0) * a_eps + ((1.0 - r * a_t0_mod) * lambda) * b_eps;
}

BlendPair face_blend_pair(const EquivariantFunction& a, std::string_view t0,
                          double eps) {
  if (sup_norm(a) > 1.0 + kTightTol)
    throw PreconditionError("face_blend_pair: ||a|| must be at most 1");
  if (!(eps > 0.0))
    throw PreconditionError("face_blend_pair: eps must be positive");
  const auto& bundle = a.bundle();
  const Complex at0 = a.value_at(t0);
  const double m = std::abs(at0);
  if (m >= 1.0 - kTightTol)
    throw PreconditionError("face_blend_pair: |a(t0)| must be strictly below 1");
  if (m + eps >= 1.0)
    throw PreconditionError("face_blend_pair: |a(t0)| + eps must stay below 1");
  const Complex lambda =
      m == 0.0 ? Complex(1.0, 0.0) : Complex(at0.real() / m, at0.imag() / m);

  // Flattening profile: fix the modulus at m, dip to m - eps/2 just above it
  // so the witness support decouples, then ramp back to the identity.  When
  // m = 0 the dip degenerates to a threshold and the profile is not reported.
  std::optional<RadialProfile> profile;
  RadialProfile flat = RadialProfile::identity();
  if (m == 0.0) {
    flat = RadialProfile({{0.0, 0.0},
                          {eps / 2.0, 0.0},
                          {eps, eps},
                          {1.0, 1.0}});
  } else {
    flat = RadialProfile({{0.0, 0.0},
                          {m, m},
                          {m + eps / 2.0, m - eps / 2.0},
                          {m + eps, m + eps},
                          {1.0, 1.0}});
    profile = flat;
  }

  auto a_eps = functional_calculus(flat, a);

  std::set<std::string> w;
  const double cut = m + eps / 2.0;
  for (const auto& o : bundle->base())
    if (std::abs(a.base_value(o)) < cut) w.insert(o);
  auto b_eps = urysohn_equivariant(bundle, t0, w, Complex(1.0, 0.0));

  return BlendPair{std::move(a_eps), std::move(b_eps), lambda, m,
                   std::move(profile), std::move(w)};
}

bool face_membership(const EquivariantFunction& a, const BundleFace& face,
                     double tol) {
  // (t0, mu) only names a face of the ball when |mu| = 1.
  return std::abs(std::abs(face.mu) - 1.0) <= tol && sphere_check(a, tol) &&
         approx(a.value_at(face.t0), face.mu, tol);
}

Json to_json(const FiniteTBundle& b) {
  Json j;
  j["n"] = b.order();
  j["base"] = b.base();
  return j;
}

BundlePtr bundle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("base"))
    throw ParseError("bundle: expected {n, base}");
  if (!j.at("n").is_number_integer())
    throw ParseError("bundle: n must be an integer");
  const int n = j.at("n").get<int>();
  if (!j.at("base").is_array()) throw ParseError("bundle: base must be an array");
  std::vector<std::string> base;
  for (const auto& o : j.at("base")) {
    if (!o.is_string()) throw ParseError("bundle: orbit ids must be strings");
    base.push_back(o.get<std::string>());
  }
  try {
    return make_bundle(n, std::move(base));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const EquivariantFunction& a) {
  Json j = to_json(*a.bundle());
  Json vals = Json::array();
  for (const auto& v : a.base_values())
    vals.push_back(Json::array({v.real(), v.imag()}));
  j["base_values"] = std::move(vals);
  return j;
}

EquivariantFunction equivariant_from_json(const Json& j) {
  auto bundle = bundle_from_json(j);
  if (!j.contains("base_values") || !j.at("base_values").is_array())
    throw ParseError("equivariant: missing base_values");
  const auto& vj = j.at("base_values");
  if (vj.size() != bundle->orbit_count())
    throw ParseError("equivariant: base value count mismatch");
  std::vector<Complex> vals;
  for (const auto& v : vj) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError("equivariant: each value must be [re, im]");
    double re = v[0].get<double>();
    double im = v[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("equivariant: values must be finite");
    vals.emplace_back(re, im);
  }
  return EquivariantFunction(std::move(bundle), std::move(vals));
}

}  // namespace tingley
