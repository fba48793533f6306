#include "frri/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frri {

namespace {

void check_degree(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                std::to_string(x));
}

double relation_value(RelationKind kind, double x, double y, double scale) {
  return kind == RelationKind::Indiscernibility ? indiscernibility(x, y, scale)
                                                : dominance(x, y);
}

}  // namespace

const char* to_string(TNormKind k) {
  switch (k) {
    case TNormKind::Minimum: return "minimum";
    case TNormKind::Product: return "product";
    case TNormKind::Lukasiewicz: return "lukasiewicz";
  }
  return "?";
}

const char* to_string(ImplicatorKind k) {
  switch (k) {
    case ImplicatorKind::KleeneDienes: return "kleene-dienes";
    case ImplicatorKind::Lukasiewicz: return "lukasiewicz";
    case ImplicatorKind::Goedel: return "godel";
  }
  return "?";
}

TNormKind tnorm_from_string(const std::string& name) {
  if (name == "minimum" || name == "min") return TNormKind::Minimum;
  if (name == "product") return TNormKind::Product;
  if (name == "lukasiewicz") return TNormKind::Lukasiewicz;
  throw std::invalid_argument("unknown t-norm '" + name + "'");
}

ImplicatorKind implicator_from_string(const std::string& name) {
  if (name == "kleene-dienes" || name == "kd") return ImplicatorKind::KleeneDienes;
  if (name == "lukasiewicz") return ImplicatorKind::Lukasiewicz;
  if (name == "godel" || name == "goedel") return ImplicatorKind::Goedel;
  throw std::invalid_argument("unknown implicator '" + name + "'");
}

double tnorm_apply(TNormKind kind, double a, double b) {
  check_degree(a, "t-norm argument");
  check_degree(b, "t-norm argument");
  switch (kind) {
    case TNormKind::Minimum: return std::min(a, b);
    case TNormKind::Product: return a * b;
    case TNormKind::Lukasiewicz: return std::max(0.0, a + b - 1.0);
  }
  return 0.0;
}

double implicator_apply(ImplicatorKind kind, double a, double b) {
  check_degree(a, "implicator argument");
  check_degree(b, "implicator argument");
  switch (kind) {
    case ImplicatorKind::KleeneDienes: return std::max(1.0 - a, b);
    case ImplicatorKind::Lukasiewicz: return std::min(1.0, 1.0 - a + b);
    case ImplicatorKind::Goedel: return a <= b ? 1.0 : b;
  }
  return 0.0;
}

double indiscernibility(double x, double y, double scale) {
  check_degree(x, "indiscernibility argument");
  check_degree(y, "indiscernibility argument");
  if (!(scale > 0.0 && scale <= 1.0))
    throw std::invalid_argument("similarity scale must lie in (0,1]");
  return std::max(0.0, 1.0 - std::abs(x - y) / scale);
}

double dominance(double x, double y) {
  check_degree(x, "dominance argument");
  check_degree(y, "dominance argument");
  return std::min(1.0 - (y - x), 1.0);
}

FuzzySet::FuzzySet(std::vector<double> memberships) : memberships_(std::move(memberships)) {
  for (double d : memberships_) check_degree(d, "membership");
}

double FuzzySet::sigma_count() const {
  double s = 0.0;
  for (double d : memberships_) s += d;
  return s;
}

RelationMatrix attribute_relation(const DecisionSystem& ds, std::size_t attribute,
                                  RelationKind kind, double scale) {
  const std::size_t n = ds.object_count();
  RelationMatrix r(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      r.at(u, v) = relation_value(kind, ds.value(u, attribute), ds.value(v, attribute), scale);
  return r;
}

void aggregate_attribute(RelationMatrix& relation, const DecisionSystem& ds,
                         std::size_t attribute, RelationKind kind, TNormKind tnorm,
                         double scale) {
  const std::size_t n = ds.object_count();
  if (relation.size() != n)
    throw std::invalid_argument("aggregate_attribute: relation size mismatch");
  for (std::size_t u = 0; u < n; ++u) {
    const double xu = ds.value(u, attribute);
    for (std::size_t v = 0; v < n; ++v) {
      const double rv = relation_value(kind, xu, ds.value(v, attribute), scale);
      double& cell = relation.at(u, v);
      switch (tnorm) {
        case TNormKind::Minimum: cell = std::min(cell, rv); break;
        case TNormKind::Product: cell = cell * rv; break;
        case TNormKind::Lukasiewicz: cell = std::max(0.0, cell + rv - 1.0); break;
      }
    }
  }
}

RelationMatrix b_indiscernibility(const DecisionSystem& ds,
                                  const std::vector<std::size_t>& attributes, TNormKind tnorm,
                                  double scale) {
  if (attributes.empty())
    throw std::invalid_argument("b_indiscernibility: attribute subset must be non-empty");
  for (auto a : attributes)
    if (a >= ds.attribute_count())
      throw std::out_of_range("b_indiscernibility: attribute index out of range");
  RelationMatrix r =
      attribute_relation(ds, attributes[0], ds.relation_kinds()[attributes[0]], scale);
  for (std::size_t i = 1; i < attributes.size(); ++i)
    aggregate_attribute(r, ds, attributes[i], ds.relation_kinds()[attributes[i]], tnorm, scale);
  return r;
}

FuzzySet lower_approximation(const FuzzySet& set, const RelationMatrix& relation,
                             ImplicatorKind implicator) {
  const std::size_t n = relation.size();
  if (set.size() != n)
    throw std::invalid_argument("lower_approximation: set and relation sizes differ");
  std::vector<double> out(n, 1.0);
  for (std::size_t u = 0; u < n; ++u) {
    double m = 1.0;
    for (std::size_t v = 0; v < n; ++v)
      m = std::min(m, implicator_apply(implicator, relation(u, v), set[v]));
    out[u] = m;
  }
  return FuzzySet(std::move(out));
}

FuzzySet upper_approximation(const FuzzySet& set, const RelationMatrix& relation,
                             TNormKind tnorm) {
  const std::size_t n = relation.size();
  if (set.size() != n)
    throw std::invalid_argument("upper_approximation: set and relation sizes differ");
  std::vector<double> out(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    double m = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      m = std::max(m, tnorm_apply(tnorm, relation(u, v), set[v]));
    out[u] = m;
  }
  return FuzzySet(std::move(out));
}

FuzzySet positive_region(const DecisionSystem& ds, const RelationMatrix& relation,
                         ImplicatorKind implicator) {
  const std::size_t n = ds.object_count();
  if (relation.size() != n)
    throw std::invalid_argument("positive_region: relation size mismatch");
  std::vector<double> out(n, 1.0);
  for (std::size_t u = 0; u < n; ++u) {
    double m = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double member = ds.label(u) == ds.label(v) ? 1.0 : 0.0;
      m = std::min(m, implicator_apply(implicator, relation(u, v), member));
    }
    out[u] = m;
  }
  return FuzzySet(std::move(out));
}

FuzzySet positive_region(const DecisionSystem& ds, const std::vector<std::size_t>& attributes,
                         const Connectives& conn) {
  return positive_region(ds, b_indiscernibility(ds, attributes, conn.tnorm,
                                                conn.similarity_scale),
                         conn.implicator);
}

double gamma_from_relation(const DecisionSystem& ds, const RelationMatrix& relation,
                           ImplicatorKind implicator, double pos_all_sigma) {
  if (!(pos_all_sigma > 0.0))
    throw std::invalid_argument("gamma: the full-set positive region has sigma-count 0");
  return positive_region(ds, relation, implicator).sigma_count() / pos_all_sigma;
}

double gamma_dependency(const DecisionSystem& ds, const std::vector<std::size_t>& attributes,
                        const Connectives& conn) {
  std::vector<std::size_t> all(ds.attribute_count());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  const double pos_all = positive_region(ds, all, conn).sigma_count();
  if (!(pos_all > 0.0))
    throw std::invalid_argument("gamma: the full-set positive region has sigma-count 0");
  return positive_region(ds, attributes, conn).sigma_count() / pos_all;
}

}  // namespace frri
