#include "frri/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace frri {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(s.substr(start)));
      break;
    }
    out.emplace_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    // from_chars in libstdc++ rejects leading '+'; fall back to strtod.
    std::string tmp(token);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size() && !tmp.empty();
  }
  return true;
}

double normalize_value(double v, const AttributeRange& r) {
  double x = (v - r.min) / (r.max - r.min);
  return std::clamp(x, 0.0, 1.0);
}

struct KeelAttribute {
  std::string name;
  bool numeric = true;
};

}  // namespace

std::vector<std::size_t> DecisionSystem::class_sizes() const {
  std::vector<std::size_t> counts(class_count(), 0);
  for (auto l : labels_) counts[l]++;
  return counts;
}

std::uint32_t DecisionSystem::vocabulary_index(std::string_view label) const {
  for (std::size_t i = 0; i < class_vocabulary_.size(); ++i)
    if (class_vocabulary_[i] == label) return static_cast<std::uint32_t>(i);
  return static_cast<std::uint32_t>(class_vocabulary_.size());
}

std::vector<double> DecisionSystem::transform_new(std::span<const double> raw_row) const {
  const std::size_t m = attribute_count();
  std::vector<double> out(m);
  if (raw_row.size() == m) {
    for (std::size_t a = 0; a < m; ++a) out[a] = normalize_value(raw_row[a], norm_params_[a]);
  } else if (raw_row.size() == source_arity_) {
    for (std::size_t a = 0; a < m; ++a)
      out[a] = normalize_value(raw_row[source_columns_[a]], norm_params_[a]);
  } else {
    throw std::invalid_argument("transform_new: row has " + std::to_string(raw_row.size()) +
                                " values, expected " + std::to_string(m) + " (or " +
                                std::to_string(source_arity_) + " source columns)");
  }
  return out;
}

DecisionSystem DecisionSystem::select_attributes(const std::vector<std::size_t>& attributes) const {
  for (auto a : attributes)
    if (a >= attribute_count())
      throw std::out_of_range("select_attributes: attribute index out of range");
  DecisionSystem out;
  const std::size_t n = object_count();
  const std::size_t m = attributes.size();
  out.values_.resize(n * m);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 0; j < m; ++j) out.values_[u * m + j] = value(u, attributes[j]);
  for (auto a : attributes) {
    out.attribute_names_.push_back(attribute_names_[a]);
    out.norm_params_.push_back(norm_params_[a]);
    out.source_columns_.push_back(source_columns_[a]);
    out.relation_kinds_.push_back(relation_kinds_[a]);
  }
  out.source_arity_ = source_arity_;
  out.labels_ = labels_;
  out.class_vocabulary_ = class_vocabulary_;
  return out;
}

DecisionSystem DecisionSystem::select_objects(const std::vector<std::size_t>& objects) const {
  for (auto u : objects)
    if (u >= object_count()) throw std::out_of_range("select_objects: object index out of range");
  DecisionSystem out;
  const std::size_t m = attribute_count();
  out.values_.reserve(objects.size() * m);
  out.labels_.reserve(objects.size());
  for (auto u : objects) {
    auto r = row(u);
    out.values_.insert(out.values_.end(), r.begin(), r.end());
    out.labels_.push_back(labels_[u]);
  }
  out.attribute_names_ = attribute_names_;
  out.norm_params_ = norm_params_;
  out.source_columns_ = source_columns_;
  out.source_arity_ = source_arity_;
  out.relation_kinds_ = relation_kinds_;
  out.class_vocabulary_ = class_vocabulary_;
  return out;
}

DecisionSystem fit_normalize(const RawDataset& raw) {
  if (raw.rows.empty()) throw std::invalid_argument("fit_normalize: dataset has zero objects");
  const std::size_t n = raw.rows.size();
  const std::size_t m_src = raw.attribute_names.size();
  for (std::size_t i = 0; i < n; ++i)
    if (raw.rows[i].size() != m_src)
      throw std::invalid_argument("fit_normalize: ragged row " + std::to_string(i));
  if (raw.labels.size() != n)
    throw std::invalid_argument("fit_normalize: label count does not match row count");

  DecisionSystem ds;
  ds.warnings_ = raw.warnings;
  ds.source_arity_ = m_src;

  for (std::size_t a = 0; a < m_src; ++a) {
    double lo = raw.rows[0][a], hi = raw.rows[0][a];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, raw.rows[i][a]);
      hi = std::max(hi, raw.rows[i][a]);
    }
    if (lo == hi) {
      ds.warnings_.push_back("attribute '" + raw.attribute_names[a] +
                             "' is constant and was removed");
      continue;
    }
    ds.attribute_names_.push_back(raw.attribute_names[a]);
    ds.norm_params_.push_back({lo, hi});
    ds.source_columns_.push_back(a);
    ds.relation_kinds_.push_back(RelationKind::Indiscernibility);
  }

  const std::size_t m = ds.attribute_names_.size();
  ds.values_.resize(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      ds.values_[i * m + j] =
          normalize_value(raw.rows[i][ds.source_columns_[j]], ds.norm_params_[j]);

  ds.labels_.reserve(n);
  for (const auto& label : raw.labels) {
    auto it = std::find(ds.class_vocabulary_.begin(), ds.class_vocabulary_.end(), label);
    if (it == ds.class_vocabulary_.end()) {
      ds.labels_.push_back(static_cast<std::uint32_t>(ds.class_vocabulary_.size()));
      ds.class_vocabulary_.push_back(label);
    } else {
      ds.labels_.push_back(
          static_cast<std::uint32_t>(std::distance(ds.class_vocabulary_.begin(), it)));
    }
  }
  return ds;
}

RawDataset parse_keel(std::string_view text) {
  std::vector<KeelAttribute> declared;
  std::vector<std::string> inputs, outputs;
  bool saw_data = false;
  RawDataset out;

  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find('\n', start);
      if (pos == std::string_view::npos) {
        lines.push_back(text.substr(start));
        break;
      }
      lines.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
  }

  std::size_t lineno = 0;
  std::size_t data_start = 0;
  for (; lineno < lines.size(); ++lineno) {
    auto line = trim(lines[lineno]);
    if (line.empty() || line.front() == '%') continue;
    if (line.front() != '@')
      throw ParseError("expected a @-directive before @data, got '" + std::string(line) + "'",
                       lineno + 1);
    auto sp = line.find_first_of(" \t");
    std::string keyword = to_lower(line.substr(0, sp));
    std::string rest = sp == std::string_view::npos ? "" : std::string(trim(line.substr(sp)));
    if (keyword == "@relation") {
      out.relation_name = rest;
    } else if (keyword == "@attribute") {
      // name, then either a {...} value list or a numeric type with an
      // optional [lo, hi] range.
      auto name_end = rest.find_first_of(" \t{[");
      if (name_end == std::string::npos) name_end = rest.size();
      KeelAttribute att;
      att.name = std::string(trim(rest.substr(0, name_end)));
      if (att.name.empty()) throw ParseError("@attribute without a name", lineno + 1);
      std::string spec = to_lower(trim(rest.substr(name_end)));
      att.numeric = spec.find('{') == std::string::npos;
      if (att.numeric && !spec.empty() && spec.rfind("real", 0) != 0 &&
          spec.rfind("integer", 0) != 0 && spec.rfind("[", 0) != 0)
        throw ParseError("unsupported attribute type '" + spec + "'", lineno + 1);
      declared.push_back(std::move(att));
    } else if (keyword == "@inputs") {
      inputs = split(rest, ',');
    } else if (keyword == "@outputs" || keyword == "@output") {
      outputs = split(rest, ',');
    } else if (keyword == "@data") {
      saw_data = true;
      data_start = lineno + 1;
      break;
    } else {
      throw ParseError("unknown directive '" + keyword + "'", lineno + 1);
    }
  }
  if (!saw_data) throw ParseError("missing @data section");
  if (declared.empty()) throw ParseError("no @attribute declarations before @data");

  auto find_declared = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < declared.size(); ++i)
      if (declared[i].name == name) return i;
    return declared.size();
  };

  if (outputs.empty() && inputs.empty()) {
    // KEEL headers normally list both; fall back to last-declared-as-output.
    outputs.push_back(declared.back().name);
    for (std::size_t i = 0; i + 1 < declared.size(); ++i) inputs.push_back(declared[i].name);
  } else if (inputs.empty()) {
    for (const auto& a : declared) {
      if (std::find(outputs.begin(), outputs.end(), a.name) == outputs.end())
        inputs.push_back(a.name);
    }
  }
  if (outputs.size() != 1)
    throw ParseError("expected exactly one output attribute, got " +
                     std::to_string(outputs.size()));

  std::vector<std::size_t> input_cols;
  for (const auto& name : inputs) {
    auto idx = find_declared(name);
    if (idx == declared.size())
      throw ParseError("@inputs names unknown attribute '" + name + "'");
    if (!declared[idx].numeric) {
      out.warnings.push_back("categorical input attribute '" + name + "' was removed");
      continue;
    }
    input_cols.push_back(idx);
    out.attribute_names.push_back(name);
  }
  const std::size_t output_col = find_declared(outputs[0]);
  if (output_col == declared.size())
    throw ParseError("@outputs names unknown attribute '" + outputs[0] + "'");

  for (std::size_t li = data_start; li < lines.size(); ++li) {
    auto line = trim(lines[li]);
    if (line.empty() || line.front() == '%') continue;
    auto cells = split(line, ',');
    if (cells.size() != declared.size())
      throw ParseError("row has " + std::to_string(cells.size()) + " values, expected " +
                       std::to_string(declared.size()),
                       li + 1);
    std::vector<double> row;
    row.reserve(input_cols.size());
    for (auto col : input_cols) {
      if (cells[col] == "?")
        throw ParseError("missing value '?' is not supported (attribute '" +
                         declared[col].name + "')",
                         li + 1);
      double v;
      if (!parse_double(cells[col], v))
        throw ParseError("non-numeric cell '" + cells[col] + "' in attribute '" +
                         declared[col].name + "'",
                         li + 1);
      row.push_back(v);
    }
    out.rows.push_back(std::move(row));
    out.labels.push_back(cells[output_col]);
  }
  return out;
}

RawDataset parse_csv(std::string_view text, const std::string& label_column, char delimiter) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw ParseError("empty file");

  auto header = split(trim(lines[first]), delimiter);
  std::size_t label_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == label_column) label_col = i;
  if (label_col == header.size()) {
    std::string available;
    for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
    throw ParseError("label column '" + label_column + "' not found; available: " + available);
  }

  RawDataset out;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (i != label_col) out.attribute_names.push_back(header[i]);

  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    auto line = trim(lines[li]);
    if (line.empty()) continue;
    auto cells = split(line, delimiter);
    if (cells.size() != header.size())
      throw ParseError("row has " + std::to_string(cells.size()) + " values, expected " +
                       std::to_string(header.size()),
                       li + 1);
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_col) continue;
      double v;
      if (!parse_double(cells[c], v))
        throw ParseError("non-numeric cell '" + cells[c] + "' in column '" + header[c] + "'",
                         li + 1);
      row.push_back(v);
    }
    out.rows.push_back(std::move(row));
    out.labels.push_back(cells[label_col]);
  }
  if (out.rows.empty()) throw ParseError("no data rows");
  return out;
}

RawDataset parse_keel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_keel(buf.str());
}

FoldData load_fold_pair(const std::string& train_path, const std::string& test_path) {
  RawDataset train_raw = parse_keel_file(train_path);
  RawDataset test_raw = parse_keel_file(test_path);
  if (train_raw.attribute_names != test_raw.attribute_names)
    throw ParseError("attribute lists differ between '" + train_path + "' and '" + test_path +
                     "'");
  FoldData fold;
  fold.train = fit_normalize(train_raw);
  fold.test_rows.reserve(test_raw.rows.size());
  for (const auto& r : test_raw.rows) fold.test_rows.push_back(fold.train.transform_new(r));
  fold.test_labels = std::move(test_raw.labels);
  return fold;
}

std::vector<FoldSplit> make_folds(const RawDataset& raw, std::size_t k, std::uint64_t seed) {
  const std::size_t n = raw.rows.size();
  if (k < 2) throw std::invalid_argument("make_folds: k must be at least 2");
  if (k > n) throw std::invalid_argument("make_folds: k exceeds the number of objects");

  // Class groups in order of first appearance, indices ascending.
  std::vector<std::string> vocab;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(vocab.begin(), vocab.end(), raw.labels[i]);
    if (it == vocab.end()) {
      vocab.push_back(raw.labels[i]);
      groups.emplace_back();
      groups.back().push_back(i);
    } else {
      groups[static_cast<std::size_t>(std::distance(vocab.begin(), it))].push_back(i);
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> fold_members(k);
  std::size_t cursor = 0;  // continues across classes so fold sizes stay balanced
  for (auto& group : groups) {
    std::shuffle(group.begin(), group.end(), rng);
    for (auto idx : group) {
      fold_members[cursor % k].push_back(idx);
      ++cursor;
    }
  }

  std::vector<FoldSplit> out(k);
  for (std::size_t f = 0; f < k; ++f) {
    auto& test = fold_members[f];
    std::sort(test.begin(), test.end());
    out[f].test_indices = test;
    for (std::size_t i = 0; i < n; ++i)
      if (!std::binary_search(test.begin(), test.end(), i)) out[f].train_indices.push_back(i);
  }
  return out;
}

std::vector<FoldData> split_folds(const RawDataset& raw, const std::vector<FoldSplit>& folds) {
  std::vector<FoldData> out;
  out.reserve(folds.size());
  for (const auto& split : folds) {
    RawDataset train;
    train.relation_name = raw.relation_name;
    train.attribute_names = raw.attribute_names;
    for (auto i : split.train_indices) {
      train.rows.push_back(raw.rows[i]);
      train.labels.push_back(raw.labels[i]);
    }
    FoldData fold;
    fold.train = fit_normalize(train);
    for (auto i : split.test_indices) {
      fold.test_rows.push_back(fold.train.transform_new(raw.rows[i]));
      fold.test_labels.push_back(raw.labels[i]);
    }
    out.push_back(std::move(fold));
  }
  return out;
}

std::string to_keel(const RawDataset& raw) {
  std::ostringstream os;
  os.precision(17);
  os << "@relation " << (raw.relation_name.empty() ? "dataset" : raw.relation_name) << "\n";
  for (std::size_t a = 0; a < raw.attribute_names.size(); ++a) {
    double lo = raw.rows.empty() ? 0.0 : raw.rows[0][a];
    double hi = lo;
    for (const auto& r : raw.rows) {
      lo = std::min(lo, r[a]);
      hi = std::max(hi, r[a]);
    }
    os << "@attribute " << raw.attribute_names[a] << " real [" << lo << ", " << hi << "]\n";
  }
  std::vector<std::string> classes;
  for (const auto& l : raw.labels)
    if (std::find(classes.begin(), classes.end(), l) == classes.end()) classes.push_back(l);
  os << "@attribute class {";
  for (std::size_t i = 0; i < classes.size(); ++i) os << (i ? ", " : "") << classes[i];
  os << "}\n@inputs ";
  for (std::size_t i = 0; i < raw.attribute_names.size(); ++i)
    os << (i ? ", " : "") << raw.attribute_names[i];
  os << "\n@outputs class\n@data\n";
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    for (std::size_t a = 0; a < raw.rows[i].size(); ++a) os << (a ? ", " : "") << raw.rows[i][a];
    os << ", " << raw.labels[i] << "\n";
  }
  return os.str();
}

}  // namespace frri
