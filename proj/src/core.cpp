#include "tingley/core.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace tingley {

PointSpace::PointSpace(std::vector<std::string> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw PreconditionError("PointSpace: empty point list");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].empty()) throw PreconditionError("PointSpace: empty point id");
    if (!index_.emplace(points_[i], i).second)
      throw PreconditionError("PointSpace: duplicate point id " + points_[i]);
  }
}

bool PointSpace::contains(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

std::size_t PointSpace::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    throw PreconditionError("PointSpace: unknown point " + std::string(id));
  return it->second;
}

PointSpacePtr make_space(std::vector<std::string> points) {
  return std::make_shared<const PointSpace>(std::move(points));
}

ComplexFunction::ComplexFunction(PointSpacePtr space, std::vector<Complex> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw PreconditionError("ComplexFunction: null space");
  if (values_.size() != space_->size())
    throw PreconditionError("ComplexFunction: value count mismatch");
}

ComplexFunction ComplexFunction::zero(const PointSpacePtr& space) {
  return ComplexFunction(space, std::vector<Complex>(space->size()));
}

ComplexFunction ComplexFunction::constant(const PointSpacePtr& space, Complex c) {
  return ComplexFunction(space, std::vector<Complex>(space->size(), c));
}

ComplexFunction ComplexFunction::indicator(const PointSpacePtr& space,
                                           std::string_view x) {
  std::vector<Complex> v(space->size());
  v[space->index_of(x)] = Complex(1.0, 0.0);
  return ComplexFunction(space, std::move(v));
}

Complex ComplexFunction::value(std::string_view x) const {
  return values_[space_->index_of(x)];
}

ComplexFunction ComplexFunction::with_value(std::string_view x, Complex v) const {
  auto vals = values_;
  vals[space_->index_of(x)] = v;
  return ComplexFunction(space_, std::move(vals));
}

namespace {

void require_same_space(const ComplexFunction& a, const ComplexFunction& b) {
  if (a.space() != b.space() && !(*a.space() == *b.space()))
    throw PreconditionError("ComplexFunction: mixed domains");
}

}  // namespace

ComplexFunction operator+(const ComplexFunction& a, const ComplexFunction& b) {
  require_same_space(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return ComplexFunction(a.space(), std::move(v));
}

ComplexFunction operator-(const ComplexFunction& a, const ComplexFunction& b) {
  require_same_space(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return ComplexFunction(a.space(), std::move(v));
}

ComplexFunction operator*(Complex c, const ComplexFunction& f) {
  std::vector<Complex> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f[i];
  return ComplexFunction(f.space(), std::move(v));
}

ComplexFunction ComplexFunction::pointwise_mul(const ComplexFunction& o) const {
  require_same_space(*this, o);
  std::vector<Complex> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * o[i];
  return ComplexFunction(space_, std::move(v));
}

ComplexFunction ComplexFunction::conjugate() const {
  std::vector<Complex> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  return ComplexFunction(space_, std::move(v));
}

Complex PointEvaluation::operator()(const ComplexFunction& f) const {
  Complex v = f.value(point);
  return conjugated ? std::conj(v) : v;
}

double sup_norm(const ComplexFunction& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

std::vector<std::string> unit_level_set(const ComplexFunction& f, double tol) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(std::abs(f[i]) - 1.0) <= tol) out.push_back(f.space()->point(i));
  return out;
}

bool sphere_check(const ComplexFunction& f, double tol) {
  return std::abs(sup_norm(f) - 1.0) <= tol;
}

Json to_json(const ComplexFunction& f) {
  Json j;
  j["domain"] = f.space()->points();
  Json vals = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    vals.push_back(Json::array({f[i].real(), f[i].imag()}));
  j["values"] = std::move(vals);
  return j;
}

ComplexFunction function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("values"))
    throw ParseError("function: expected {domain, values}");
  const auto& dj = j.at("domain");
  const auto& vj = j.at("values");
  if (!dj.is_array() || !vj.is_array())
    throw ParseError("function: domain and values must be arrays");
  if (dj.size() != vj.size())
    throw ParseError("function: domain/values length mismatch");
  std::vector<std::string> points;
  for (const auto& p : dj) {
    if (!p.is_string()) throw ParseError("function: point ids must be strings");
    points.push_back(p.get<std::string>());
  }
  std::vector<Complex> values;
  for (const auto& v : vj) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError("function: each value must be [re, im]");
    double re = v[0].get<double>();
    double im = v[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("function: values must be finite");
    values.emplace_back(re, im);
  }
  try {
    return ComplexFunction(make_space(std::move(points)), std::move(values));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize(const ComplexFunction& f) {
  std::ostringstream out;
  out << to_json(f).dump(2) << "\n";
  return out.str();
}

ComplexFunction deserialize(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("function: invalid JSON");
  return function_from_json(j);
}

}  // namespace tingley
