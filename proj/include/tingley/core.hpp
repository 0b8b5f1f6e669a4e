#pragma once
// Finite model of C(X): an ordered finite point set and complex-valued
// functions on it under the supremum norm.  Points are opaque string ids with
// a declared total order; every set-valued output follows that order so
// reports are deterministic.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "tingley/common.hpp"

namespace tingley {

using Json = nlohmann::ordered_json;

class PointSpace {
 public:
  // Throws PreconditionError on an empty list, empty id, or duplicate id.
  explicit PointSpace(std::vector<std::string> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t i) const { return points_.at(i); }
  bool contains(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws on unknown id

  friend bool operator==(const PointSpace& a, const PointSpace& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<std::string> points_;
  std::unordered_map<std::string, std::size_t> index_;
};

using PointSpacePtr = std::shared_ptr<const PointSpace>;

PointSpacePtr make_space(std::vector<std::string> points);

// An element of C(X): one finite complex value per point, positionally
// aligned with the space's declared order.  Immutable after construction.
class ComplexFunction {
 public:
  ComplexFunction(PointSpacePtr space, std::vector<Complex> values);

  static ComplexFunction zero(const PointSpacePtr& space);
  static ComplexFunction constant(const PointSpacePtr& space, Complex c);
  static ComplexFunction indicator(const PointSpacePtr& space,
                                   std::string_view x);

  const PointSpacePtr& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex value(std::string_view x) const;
  const std::vector<Complex>& values() const { return values_; }

  ComplexFunction with_value(std::string_view x, Complex v) const;

  friend ComplexFunction operator+(const ComplexFunction&,
                                   const ComplexFunction&);
  friend ComplexFunction operator-(const ComplexFunction&,
                                   const ComplexFunction&);
  friend ComplexFunction operator*(Complex, const ComplexFunction&);
  ComplexFunction pointwise_mul(const ComplexFunction&) const;
  ComplexFunction conjugate() const;

 private:
  PointSpacePtr space_;
  std::vector<Complex> values_;
};

// The functional f -> f(x), or f -> conj(f(x)) when conjugated is set.
struct PointEvaluation {
  std::string point;
  bool conjugated = false;
  Complex operator()(const ComplexFunction& f) const;
};

double sup_norm(const ComplexFunction& f);

// { x : | |f(x)| - 1 | <= tol }, in domain order.
std::vector<std::string> unit_level_set(const ComplexFunction& f, double tol);

// Membership in the unit sphere: |sup_norm(f) - 1| <= tol.
bool sphere_check(const ComplexFunction& f, double tol);

// JSON value format: {"domain": ["p", ...], "values": [[re, im], ...]} with
// values positionally aligned to the domain order.  Round-trips bit-exactly.
Json to_json(const ComplexFunction& f);
ComplexFunction function_from_json(const Json& j);
std::string serialize(const ComplexFunction& f);
ComplexFunction deserialize(const std::string& text);

}  // namespace tingley
