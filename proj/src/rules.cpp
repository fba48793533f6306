#include "frri/rules.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frri/setcover.hpp"

namespace frri {

namespace {

double kind_value(ConditionKind kind, double anchor, double value, double scale) {
  switch (kind) {
    case ConditionKind::Unused: return 1.0;
    case ConditionKind::Similar: return indiscernibility(anchor, value, scale);
    case ConditionKind::Dominant: return dominance(anchor, value);
    case ConditionKind::Dominated: return dominance(value, anchor);
  }
  return 1.0;
}

std::vector<std::size_t> cross_class_objects(const DecisionSystem& ds, std::uint32_t label) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ds.object_count(); ++v)
    if (ds.label(v) != label) out.push_back(v);
  return out;
}

void check_order(const std::vector<std::size_t>& order, std::size_t m) {
  if (order.size() != m)
    throw std::invalid_argument("attribute order must cover all retained attributes");
  std::vector<bool> seen(m, false);
  for (auto a : order) {
    if (a >= m || seen[a])
      throw std::invalid_argument("attribute order is not a permutation");
    seen[a] = true;
  }
}

// Shared pruning core: prunes u's total rule given the precomputed
// positive-region membership of u.
Rule prune_with_degree(const DecisionSystem& ds, std::size_t u,
                       const std::vector<std::size_t>& order, const FrriParams& params,
                       double consequent_degree) {
  const std::size_t m = ds.attribute_count();
  const double scale = params.connectives.similarity_scale;
  const double eps = params.epsilon;

  Rule rule;
  rule.generator = u;
  rule.consequent_class = ds.label(u);
  rule.consequent_degree = consequent_degree;
  rule.anchors.assign(ds.row(u).begin(), ds.row(u).end());
  rule.kinds.assign(m, ConditionKind::Similar);

  const auto cross = cross_class_objects(ds, rule.consequent_class);
  // With no counter-class evidence (or a consequent already below the
  // tolerance) every relaxation is consistent.
  if (cross.empty() || consequent_degree <= eps) {
    rule.kinds.assign(m, ConditionKind::Unused);
    return rule;
  }

  const std::size_t nc = cross.size();
  // similar_suffix[i * nc + j]: min SIMILAR contribution of the attributes
  // at order positions >= i for cross object j.
  std::vector<double> similar_suffix((m + 1) * nc, 1.0);
  for (std::size_t i = m; i-- > 0;) {
    const std::size_t a = order[i];
    for (std::size_t j = 0; j < nc; ++j) {
      const double s = indiscernibility(rule.anchors[a], ds.value(cross[j], a), scale);
      similar_suffix[i * nc + j] = std::min(similar_suffix[(i + 1) * nc + j], s);
    }
  }

  std::vector<double> prefix(nc, 1.0);  // min contribution of decided positions
  std::vector<double> chosen(nc);
  static constexpr ConditionKind kTrials[] = {ConditionKind::Unused, ConditionKind::Dominant,
                                              ConditionKind::Dominated};
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = order[i];
    bool decided = false;
    for (ConditionKind kind : kTrials) {
      bool ok = true;
      for (std::size_t j = 0; j < nc; ++j) {
        const double contrib = kind_value(kind, rule.anchors[a], ds.value(cross[j], a), scale);
        chosen[j] = contrib;
        const double match =
            std::min({prefix[j], contrib, similar_suffix[(i + 1) * nc + j]});
        if (std::min(match, consequent_degree) > eps) {
          ok = false;
          break;
        }
      }
      if (ok) {
        rule.kinds[a] = kind;
        for (std::size_t j = 0; j < nc; ++j) prefix[j] = std::min(prefix[j], chosen[j]);
        decided = true;
        break;
      }
    }
    if (!decided) {
      // SIMILAR stays; fold its contribution into the prefix.
      for (std::size_t j = 0; j < nc; ++j)
        prefix[j] =
            std::min(prefix[j], indiscernibility(rule.anchors[a], ds.value(cross[j], a), scale));
    }
  }
  return rule;
}

FuzzySet full_positive_region(const DecisionSystem& ds, const FrriParams& params) {
  std::vector<std::size_t> all(ds.attribute_count());
  std::iota(all.begin(), all.end(), 0);
  return positive_region(ds, all, params.connectives);
}

nlohmann::ordered_json rule_to_json(const Ruleset& rs, const Rule& r) {
  nlohmann::ordered_json j;
  j["generator"] = r.generator;
  std::vector<std::string> kinds;
  kinds.reserve(r.kinds.size());
  for (auto k : r.kinds) kinds.emplace_back(to_string(k));
  j["kinds"] = kinds;
  j["anchors"] = r.anchors;
  j["class"] = rs.class_vocabulary.at(r.consequent_class);
  j["consequent_degree"] = r.consequent_degree;
  return j;
}

}  // namespace

const char* to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::Unused: return "unused";
    case ConditionKind::Similar: return "similar";
    case ConditionKind::Dominant: return "dominant";
    case ConditionKind::Dominated: return "dominated";
  }
  return "?";
}

ConditionKind condition_kind_from_string(const std::string& name) {
  if (name == "unused") return ConditionKind::Unused;
  if (name == "similar") return ConditionKind::Similar;
  if (name == "dominant") return ConditionKind::Dominant;
  if (name == "dominated") return ConditionKind::Dominated;
  throw std::invalid_argument("unknown condition kind '" + name + "'");
}

double Ruleset::mean_rule_length() const {
  if (rules.empty()) throw std::invalid_argument("mean_rule_length: empty ruleset");
  double total = 0.0;
  for (const auto& r : rules) total += static_cast<double>(r.length());
  return total / static_cast<double>(rules.size());
}

Rule total_rule(const DecisionSystem& ds, std::size_t u, const FrriParams& params) {
  if (u >= ds.object_count()) throw std::out_of_range("total_rule: object index out of range");
  Rule rule;
  rule.generator = u;
  rule.anchors.assign(ds.row(u).begin(), ds.row(u).end());
  rule.kinds.assign(ds.attribute_count(), ConditionKind::Similar);
  rule.consequent_class = ds.label(u);
  rule.consequent_degree = full_positive_region(ds, params)[u];
  return rule;
}

double matching_degree(const Rule& rule, std::span<const double> row,
                       double similarity_scale) {
  if (row.size() != rule.kinds.size())
    throw std::invalid_argument("matching_degree: row arity mismatch");
  double m = 1.0;
  for (std::size_t a = 0; a < rule.kinds.size(); ++a)
    m = std::min(m, kind_value(rule.kinds[a], rule.anchors[a], row[a], similarity_scale));
  return m;
}

double covering_membership(const Rule& rule, std::span<const double> row,
                           double similarity_scale) {
  return std::min(matching_degree(rule, row, similarity_scale), rule.consequent_degree);
}

bool is_consistent(const DecisionSystem& ds, const Rule& rule, const FrriParams& params) {
  if (rule.kinds.size() != ds.attribute_count())
    throw std::invalid_argument("is_consistent: rule arity mismatch");
  for (std::size_t v = 0; v < ds.object_count(); ++v) {
    if (ds.label(v) == rule.consequent_class) continue;
    if (covering_membership(rule, ds.row(v), params.connectives.similarity_scale) >
        params.epsilon)
      return false;
  }
  return true;
}

Rule rule_prune(const DecisionSystem& ds, std::size_t u,
                const std::vector<std::size_t>& attr_order, const FrriParams& params) {
  check_order(attr_order, ds.attribute_count());
  return prune_with_degree(ds, u, attr_order, params, full_positive_region(ds, params)[u]);
}

Ruleset shorten_all(const DecisionSystem& ds, const std::vector<std::size_t>& attr_order,
                    const FrriParams& params) {
  if (ds.object_count() == 0) throw std::invalid_argument("shorten_all: empty system");
  check_order(attr_order, ds.attribute_count());

  Ruleset rs;
  rs.attribute_names = ds.attribute_names();
  rs.normalization = ds.normalization();
  rs.relation_kinds = ds.relation_kinds();
  rs.class_vocabulary = ds.class_vocabulary();
  rs.params = params;
  const auto sizes = ds.class_sizes();
  rs.class_priors.reserve(sizes.size());
  for (auto c : sizes)
    rs.class_priors.push_back(static_cast<double>(c) / static_cast<double>(ds.object_count()));

  const FuzzySet pos = full_positive_region(ds, params);
  rs.rules.reserve(ds.object_count());
  for (std::size_t u = 0; u < ds.object_count(); ++u)
    rs.rules.push_back(prune_with_degree(ds, u, attr_order, params, pos[u]));
  return rs;
}

std::vector<Bitset> coverage_matrix(const DecisionSystem& ds, const Ruleset& ruleset,
                                    double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("coverage_matrix: theta must lie in (0,1]");
  const std::size_t n = ds.object_count();
  std::vector<Bitset> z(ruleset.rules.size(), Bitset(n));
  const double scale = ruleset.params.connectives.similarity_scale;
  for (std::size_t r = 0; r < ruleset.rules.size(); ++r) {
    const Rule& rule = ruleset.rules[r];
    for (std::size_t v = 0; v < n; ++v)
      if (covering_membership(rule, ds.row(v), scale) >= theta) z[r].set(v);
    z[r].set(rule.generator);  // self-cover keeps the instance feasible
  }
  return z;
}

CoverInstance select_rules(std::vector<Bitset> z, std::size_t num_objects,
                           std::uint64_t node_budget) {
  auto problem = SetCoverProblem::from_rows(std::move(z), num_objects);
  SolveOptions opts;
  opts.node_budget = node_budget;
  const auto solution = solve_exact(problem, opts);
  CoverInstance out;
  out.z = std::move(problem.sets);
  out.selected = solution.selected;
  out.optimal = solution.optimal;
  return out;
}

Ruleset fit(const DecisionSystem& ds, const std::vector<std::size_t>& attr_order,
            const FrriParams& params) {
  Ruleset all = shorten_all(ds, attr_order, params);
  auto z = coverage_matrix(ds, all, params.theta);
  const auto cover = select_rules(std::move(z), ds.object_count(), params.node_budget);

  Ruleset final_rs = all;
  final_rs.rules.clear();
  for (std::size_t r = 0; r < all.rules.size(); ++r)
    if (cover.selected[r]) final_rs.rules.push_back(all.rules[r]);
  final_rs.selection_optimal = cover.optimal;
  return final_rs;
}

std::uint32_t classify(const Ruleset& ruleset, std::span<const double> row) {
  if (ruleset.rules.empty()) throw std::invalid_argument("classify: empty ruleset");
  const double scale = ruleset.params.connectives.similarity_scale;
  double best_cover = -1.0;
  std::uint32_t best_class = 0;
  for (const auto& rule : ruleset.rules) {
    const double c = covering_membership(rule, row, scale);
    if (c > best_cover) {
      best_cover = c;
      best_class = rule.consequent_class;
    } else if (c == best_cover && rule.consequent_class != best_class) {
      const double p_new = ruleset.class_priors[rule.consequent_class];
      const double p_old = ruleset.class_priors[best_class];
      if (p_new > p_old || (p_new == p_old && rule.consequent_class < best_class))
        best_class = rule.consequent_class;
    }
  }
  return best_class;
}

std::string classify_label(const Ruleset& ruleset, std::span<const double> row) {
  return ruleset.class_vocabulary.at(classify(ruleset, row));
}

std::string ruleset_to_json(const Ruleset& rs) {
  nlohmann::ordered_json j;
  j["attributes"] = rs.attribute_names;
  nlohmann::ordered_json norm = nlohmann::ordered_json::array();
  for (const auto& r : rs.normalization) norm.push_back({r.min, r.max});
  j["normalization"] = norm;
  std::vector<std::string> rels;
  for (auto k : rs.relation_kinds)
    rels.emplace_back(k == RelationKind::Indiscernibility ? "indiscernibility" : "dominance");
  j["relation_kinds"] = rels;
  j["class_vocabulary"] = rs.class_vocabulary;
  j["class_priors"] = rs.class_priors;
  j["theta"] = rs.params.theta;
  j["config"] = {{"tnorm", to_string(rs.params.connectives.tnorm)},
                 {"implicator", to_string(rs.params.connectives.implicator)},
                 {"similarity_scale", rs.params.connectives.similarity_scale},
                 {"epsilon", rs.params.epsilon},
                 {"node_budget", rs.params.node_budget}};
  j["selection_optimal"] = rs.selection_optimal;
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const auto& r : rs.rules) rules.push_back(rule_to_json(rs, r));
  j["rules"] = rules;
  return j.dump(2) + "\n";
}

Ruleset ruleset_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Ruleset rs;
  rs.attribute_names = j.at("attributes").get<std::vector<std::string>>();
  for (const auto& r : j.at("normalization"))
    rs.normalization.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  for (const auto& r : j.at("relation_kinds"))
    rs.relation_kinds.push_back(r.get<std::string>() == "dominance"
                                    ? RelationKind::Dominance
                                    : RelationKind::Indiscernibility);
  rs.class_vocabulary = j.at("class_vocabulary").get<std::vector<std::string>>();
  rs.class_priors = j.at("class_priors").get<std::vector<double>>();
  rs.params.theta = j.at("theta").get<double>();
  const auto& cfg = j.at("config");
  rs.params.connectives.tnorm = tnorm_from_string(cfg.at("tnorm").get<std::string>());
  rs.params.connectives.implicator =
      implicator_from_string(cfg.at("implicator").get<std::string>());
  rs.params.connectives.similarity_scale = cfg.at("similarity_scale").get<double>();
  rs.params.epsilon = cfg.at("epsilon").get<double>();
  rs.params.node_budget = cfg.at("node_budget").get<std::uint64_t>();
  rs.selection_optimal = j.at("selection_optimal").get<bool>();
  for (const auto& rj : j.at("rules")) {
    Rule r;
    r.generator = rj.at("generator").get<std::size_t>();
    for (const auto& k : rj.at("kinds"))
      r.kinds.push_back(condition_kind_from_string(k.get<std::string>()));
    r.anchors = rj.at("anchors").get<std::vector<double>>();
    const auto label = rj.at("class").get<std::string>();
    const auto it =
        std::find(rs.class_vocabulary.begin(), rs.class_vocabulary.end(), label);
    if (it == rs.class_vocabulary.end())
      throw std::invalid_argument("ruleset: rule class '" + label + "' not in vocabulary");
    r.consequent_class =
        static_cast<std::uint32_t>(std::distance(rs.class_vocabulary.begin(), it));
    r.consequent_degree = rj.at("consequent_degree").get<double>();
    rs.rules.push_back(std::move(r));
  }
  return rs;
}

void save_ruleset(const Ruleset& rs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << ruleset_to_json(rs);
}

Ruleset load_ruleset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ruleset_from_json(buf.str());
}

std::string rule_to_text(const Ruleset& rs, const Rule& rule) {
  std::ostringstream os;
  os.precision(6);
  os << "IF ";
  bool first = true;
  for (std::size_t a = 0; a < rule.kinds.size(); ++a) {
    if (rule.kinds[a] == ConditionKind::Unused) continue;
    const auto& range = rs.normalization[a];
    const double original = range.min + rule.anchors[a] * (range.max - range.min);
    if (!first) os << " AND ";
    os << rs.attribute_names[a];
    switch (rule.kinds[a]) {
      case ConditionKind::Similar: os << " ~ "; break;
      case ConditionKind::Dominant: os << " <~ "; break;   // value at most anchor-ish
      case ConditionKind::Dominated: os << " >~ "; break;  // value at least anchor-ish
      default: break;
    }
    os << original;
    first = false;
  }
  if (first) os << "(always)";
  os << " THEN class = " << rs.class_vocabulary.at(rule.consequent_class) << "  [degree "
     << rule.consequent_degree << "]";
  return os.str();
}

}  // namespace frri
