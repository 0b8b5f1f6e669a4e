#include "tingley/algebra.hpp"

#include <cmath>

namespace tingley {

PeakingFunction PeakingFunction::wrap(ComplexFunction f) {
  if (!approx(sup_norm(f), 1.0, kTightTol))
    throw PreconditionError("peaking: not norm one");
  auto peaks = unit_level_set(f, kTightTol);
  for (const auto& x : peaks)
    if (!approx(f.value(x), Complex(1.0, 0.0), kTightTol))
      throw PreconditionError("peaking: modulus-one value differs from 1 at " + x);
  return PeakingFunction{std::move(f), std::move(peaks)};
}

std::vector<BoundaryPoint> choquet_boundary(const PointSpacePtr& space) {
  std::vector<BoundaryPoint> out;
  for (const auto& x : space->points())
    out.push_back({x, urysohn_peak(space, x, {x}, 1.0)});
  return out;
}

PeakingFunction urysohn_peak(const PointSpacePtr& space, std::string_view x,
                             const std::set<std::string>& O, double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw PreconditionError("urysohn_peak: eps must be in (0, 1]");
  if (O.find(std::string(x)) == O.end())
    throw PreconditionError("urysohn_peak: peak point not in support set");
  for (const auto& z : O)
    if (!space->contains(z))
      throw PreconditionError("urysohn_peak: support point outside space " + z);
  std::vector<Complex> v(space->size());
  for (std::size_t i = 0; i < space->size(); ++i)
    if (O.count(space->point(i))) v[i] = Complex(eps, 0.0);
  v[space->index_of(x)] = Complex(1.0, 0.0);
  return PeakingFunction::wrap(ComplexFunction(space, std::move(v)));
}

ComplexFunction antipodal_witness(const ComplexFunction& f,
                                  const ComplexFunction& g,
                                  std::string_view x0) {
  if (!sphere_check(f, kTightTol) || !sphere_check(g, kTightTol))
    throw PreconditionError("antipodal_witness: arguments must be on the sphere");
  Complex lam = f.value(x0);
  if (!approx(std::abs(lam), 1.0, kTightTol))
    throw PreconditionError("antipodal_witness: |f(x0)| must be 1");
  if (approx(lam, g.value(x0), kTightTol))
    throw PreconditionError("antipodal_witness: f and g agree at x0");
  // -lam on the peak point alone: distance 2 from f is forced at x0, while
  // every coordinate of g - h stays strictly short of 2.
  return (-lam) * ComplexFunction::indicator(f.space(), x0);
}

ComplexFunction average_peaking(const std::vector<ComplexFunction>& fs,
                                Complex lambda) {
  if (fs.empty()) throw PreconditionError("average_peaking: no inputs");
  if (!approx(std::abs(lambda), 1.0, kTightTol))
    throw PreconditionError("average_peaking: peak value must be unimodular");
  const auto& space = fs.front().space();
  for (const auto& f : fs) {
    if (!(*f.space() == *space))
      throw PreconditionError("average_peaking: mixed domains");
    if (!sphere_check(f, kTightTol))
      throw PreconditionError("average_peaking: inputs must be on the sphere");
  }
  bool common = false;
  for (std::size_t i = 0; i < space->size() && !common; ++i) {
    bool all = true;
    for (const auto& f : fs) all = all && approx(f[i], lambda, kTightTol);
    common = all;
  }
  if (!common)
    throw PreconditionError("average_peaking: no common point with the peak value");

  const double inv = 1.0 / static_cast<double>(fs.size());
  std::vector<Complex> v(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    bool same = true;
    for (const auto& f : fs) same = same && f[i] == fs.front()[i];
    if (same) {
      v[i] = fs.front()[i];  // exact reproduction of shared values
    } else {
      Complex acc(0.0, 0.0);
      for (const auto& f : fs) acc += f[i];
      v[i] = inv * acc;
    }
  }
  return ComplexFunction(space, std::move(v));
}

PeakingFunction phase_peak_transform(const ComplexFunction& f, Complex lambda) {
  if (!approx(std::abs(lambda), 1.0, kTightTol))
    throw PreconditionError("phase_peak_transform: weight must be unimodular");
  if (!sphere_check(f, kTightTol))
    throw PreconditionError("phase_peak_transform: f must be on the sphere");
  const Complex c = std::conj(lambda);
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    v[i] = 0.5 * (c * c * f[i] * f[i] + c * f[i]);
  return PeakingFunction::wrap(ComplexFunction(f.space(), std::move(v)));
}

std::pair<ComplexFunction, ComplexFunction> disjoint_face_witnesses(
    const PointSpacePtr& space, std::string_view y, Complex mu,
    std::string_view y2, Complex mu2) {
  if (!approx(std::abs(mu), 1.0, kTightTol) ||
      !approx(std::abs(mu2), 1.0, kTightTol))
    throw PreconditionError("disjoint_face_witnesses: phases must be unimodular");
  if (y == y2 && !approx(mu, mu2, kTightTol))
    throw PreconditionError(
        "disjoint_face_witnesses: same point carries conflicting phases");
  auto u = mu * ComplexFunction::indicator(space, y);
  auto v = mu2 * ComplexFunction::indicator(space, y2);
  return {std::move(u), std::move(v)};
}

FaceCorrection face_correction(const ComplexFunction& f, std::string_view x0,
                               double r) {
  if (!sphere_check(f, kTightTol))
    throw PreconditionError("face_correction: f must be on the sphere");
  if (!(r > 0.0 && r < 1.0))
    throw PreconditionError("face_correction: r must sit in (0, 1)");
  const Complex start = f.value(x0);
  const double m0 = std::abs(start);
  if (m0 >= 1.0 - kTightTol)
    throw PreconditionError("face_correction: |f(x0)| must be strictly below 1");
  const Complex lambda =
      m0 == 0.0 ? Complex(1.0, 0.0) : Complex(start.real() / m0, start.imag() / m0);
  const double eps = (1.0 - r) / (1.0 - r * m0);
  const auto& space = f.space();

  std::vector<double> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) d[i] = std::abs(f[i] - start);
  const double w = 1.0 - m0;

  auto band_complement = [&](double lo, double hi) {
    std::set<std::string> O;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!(d[i] >= lo && d[i] <= hi)) O.insert(space->point(i));
    return O;
  };

  // Outer band and dyadic annuli toward x0.  The index cap keeps the weights
  // exactly representable; capped points only ever gain eps-sized mass, which
  // the norm estimate absorbs.
  const int kMaxBand = 50;
  std::vector<std::set<std::string>> annuli;
  int last = 0;
  for (int m = 1; m <= kMaxBand; ++m) {
    auto O = band_complement(w / std::ldexp(1.0, m + 1), w / std::ldexp(1.0, m));
    if (O.size() < space->size()) last = m;
    annuli.push_back(std::move(O));
  }

  auto f0 = urysohn_peak(space, x0, band_complement(w / 2.0, 2.0 + w), eps).fn;
  std::set<std::string> everything(space->points().begin(), space->points().end());
  auto total = ComplexFunction::zero(space);
  for (int m = 1; m <= last; ++m)
    total = total + Complex(std::ldexp(1.0, -m), 0.0) *
                        urysohn_peak(space, x0, annuli[m - 1], eps).fn;
  total = total + Complex(std::ldexp(1.0, -last), 0.0) *
                      urysohn_peak(space, x0, everything, eps).fn;

  auto g_r = f0.pointwise_mul(total);
  auto h_r = Complex(r, 0.0) * f + ((1.0 - r * m0) * lambda) * g_r;
  return FaceCorrection{std::move(g_r), std::move(h_r), lambda};
}

bool face_membership(const ComplexFunction& f, const ScalarFace& face,
                     double tol) {
  // (x, lambda) only names a face of the ball when |lambda| = 1.
  return std::abs(std::abs(face.lambda) - 1.0) <= tol && sphere_check(f, tol) &&
         approx(f.value(face.x), face.lambda, tol);
}

}  // namespace tingley
