// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>

#include <nlohmann/json.hpp>

#include "hqs/error.hpp"

namespace hqs {

// ---------------------------------------------------------------------------
// ItemVector

ItemVector ItemVector::dense(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("vector: non-finite coordinate");
  }
  ItemVector out;
  out.dimension_ = values.size();
  out.values_ = std::move(values);
  return out;
}

ItemVector ItemVector::sparse(std::size_t dimension, std::vector<std::uint32_t> indices,
                              std::vector<double> values) {
  if (indices.size() != values.size()) {
    throw InputError("sparse vector: indices and values differ in length");
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= dimension) throw InputError("sparse vector: index out of range");
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw InputError("sparse vector: indices are not strictly increasing");
    }
    if (!std::isfinite(values[k])) throw InputError("sparse vector: non-finite value");
  }
  ItemVector out;
  out.dimension_ = dimension;
  out.sparse_ = true;
  out.indices_ = std::move(indices);
  out.values_ = std::move(values);
  return out;
}

double ItemVector::at(std::size_t i) const {
  if (i >= dimension_) throw InputError("vector: coordinate out of range");
  if (!sparse_) return values_[i];
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

std::vector<double> ItemVector::to_dense() const {
  if (!sparse_) return values_;
  std::vector<double> out(dimension_, 0.0);
  for (std::size_t k = 0; k < indices_.size(); ++k) out[indices_[k]] = values_[k];
  return out;
}

double ItemVector::squared_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return sum;
}

double ItemVector::dot(std::span<const double> dense) const {
  if (dense.size() != dimension_) throw InputError("vector: dimension mismatch");
  double sum = 0.0;
  if (sparse_) {
    for (std::size_t k = 0; k < indices_.size(); ++k) sum += values_[k] * dense[indices_[k]];
  } else {
    for (std::size_t i = 0; i < dimension_; ++i) sum += values_[i] * dense[i];
  }
  return sum;
}

double ItemVector::dot(const ItemVector& other) const {
  if (other.dimension_ != dimension_) throw InputError("vector: dimension mismatch");
  if (!other.sparse_) return dot(std::span<const double>(other.values_));
  if (!sparse_) return other.dot(std::span<const double>(values_));
  double sum = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < indices_.size() && b < other.indices_.size()) {
    if (indices_[a] < other.indices_[b]) {
      ++a;
    } else if (other.indices_[b] < indices_[a]) {
      ++b;
    } else {
      sum += values_[a++] * other.values_[b++];
    }
  }
  return sum;
}

void ItemVector::add_to(std::span<double> acc, double scale) const {
  if (acc.size() != dimension_) throw InputError("vector: dimension mismatch");
  if (sparse_) {
    for (std::size_t k = 0; k < indices_.size(); ++k) acc[indices_[k]] += scale * values_[k];
  } else {
    for (std::size_t i = 0; i < dimension_; ++i) acc[i] += scale * values_[i];
  }
}

bool operator==(const ItemVector& a, const ItemVector& b) {
  if (a.dimension_ != b.dimension_) return false;
  if (a.sparse_ == b.sparse_) return a.indices_ == b.indices_ && a.values_ == b.values_;
  return a.to_dense() == b.to_dense();
}

double squared_distance(const ItemVector& v, std::span<const double> dense) {
  if (dense.size() != v.dimension()) throw InputError("vector: dimension mismatch");
  double sum = 0.0;
  if (!v.is_sparse()) {
    auto values = v.values();
    for (std::size_t i = 0; i < dense.size(); ++i) {
      double d = values[i] - dense[i];
      sum += d * d;
    }
    return sum;
  }
  auto idx = v.indices();
  auto values = v.values();
  std::size_t k = 0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    double vi = 0.0;
    if (k < idx.size() && idx[k] == i) vi = values[k++];
    double d = vi - dense[i];
    sum += d * d;
  }
  return sum;
}

namespace {

double squared_distance(const ItemVector& a, const ItemVector& b) {
  if (a.dimension() != b.dimension()) throw InputError("vector: dimension mismatch");
  if (!a.is_sparse()) return squared_distance(b, a.values());
  if (!b.is_sparse()) return squared_distance(a, b.values());
  auto ia = a.indices();
  auto ib = b.indices();
  auto va = a.values();
  auto vb = b.values();
  double sum = 0.0;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x < ia.size() || y < ib.size()) {
    double d;
    if (y == ib.size() || (x < ia.size() && ia[x] < ib[y])) {
      d = va[x++];
    } else if (x == ia.size() || ib[y] < ia[x]) {
      d = -vb[y++];
    } else {
      d = va[x++] - vb[y++];
    }
    sum += d * d;
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalogue

Catalogue::Catalogue(std::vector<std::string> ids, std::vector<ItemVector> vectors,
                     std::vector<std::string> texts)
    : ids_(std::move(ids)), vectors_(std::move(vectors)), texts_(std::move(texts)) {
  if (ids_.size() != vectors_.size()) throw InputError("catalogue: ids and vectors differ in length");
  if (!texts_.empty() && texts_.size() != ids_.size()) {
    throw InputError("catalogue: texts and ids differ in length");
  }
  if (!vectors_.empty()) dimension_ = vectors_.front().dimension();
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i].empty()) throw InputError("catalogue: empty item id");
    if (!index_.emplace(ids_[i], i).second) {
      throw InputError("catalogue: duplicate item \"" + ids_[i] + "\"");
    }
    if (vectors_[i].dimension() != dimension_) {
      throw InputError("catalogue: item \"" + ids_[i] + "\" has dimension " +
                       std::to_string(vectors_[i].dimension()) + ", expected " +
                       std::to_string(dimension_));
    }
  }
}

std::optional<std::string_view> Catalogue::text(std::size_t i) const {
  if (texts_.empty()) return std::nullopt;
  return std::string_view(texts_.at(i));
}

std::optional<std::size_t> Catalogue::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Catalogue::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw InputError("catalogue: unknown item \"" + std::string(id) + "\"");
  return *i;
}

// ---------------------------------------------------------------------------
// TF-IDF

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    auto byte = static_cast<unsigned char>(ch);
    if (byte >= 0x80 || std::isalnum(byte)) {
      current.push_back(static_cast<char>(std::tolower(byte)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

using TermCounts = std::map<std::string, std::size_t, std::less<>>;

std::vector<TermCounts> count_terms(std::span<const std::pair<std::string, std::string>> docs) {
  std::vector<TermCounts> counts;
  counts.reserve(docs.size());
  for (const auto& [id, text] : docs) {
    TermCounts tf;
    for (auto& token : tokenize(text)) ++tf[token];
    counts.push_back(std::move(tf));
  }
  return counts;
}

}  // namespace

std::vector<std::string> tfidf_vocabulary(std::span<const std::pair<std::string, std::string>> docs) {
  TermCounts df;
  for (const auto& tf : count_terms(docs)) {
    for (const auto& [term, n] : tf) ++df[term];
  }
  std::vector<std::string> vocab;
  vocab.reserve(df.size());
  for (const auto& [term, n] : df) vocab.push_back(term);
  return vocab;
}

Catalogue build_tfidf(std::span<const std::pair<std::string, std::string>> docs) {
  if (docs.empty()) throw InputError("tfidf: empty corpus");
  auto counts = count_terms(docs);

  std::map<std::string, std::pair<std::uint32_t, std::size_t>, std::less<>> vocab;  // term -> (index, df)
  for (const auto& tf : counts) {
    for (const auto& [term, n] : tf) ++vocab[term].second;
  }
  if (vocab.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("tfidf: vocabulary too large");
  }
  std::vector<double> idf;
  idf.reserve(vocab.size());
  const double n_docs = static_cast<double>(docs.size());
  for (auto& [term, entry] : vocab) {
    entry.first = static_cast<std::uint32_t>(idf.size());
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(entry.second))) + 1.0);
  }

  std::vector<std::string> ids;
  std::vector<ItemVector> vectors;
  std::vector<std::string> texts;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
    for (const auto& [term, n] : counts[d]) {
      std::uint32_t k = vocab.find(term)->second.first;
      indices.push_back(k);
      values.push_back(static_cast<double>(n) * idf[k]);
    }
    ids.push_back(docs[d].first);
    vectors.push_back(ItemVector::sparse(vocab.size(), std::move(indices), std::move(values)));
    texts.push_back(docs[d].second);
  }
  return Catalogue(std::move(ids), std::move(vectors), std::move(texts));
}

// ---------------------------------------------------------------------------
// Centroid

ItemVector centroid(const Catalogue& catalogue, std::span<const std::size_t> items) {
  if (items.empty()) throw InputError("centroid: empty item set");
  std::vector<double> acc(catalogue.dimension(), 0.0);
  for (std::size_t i : items) catalogue.vector(i).add_to(acc);
  const double n = static_cast<double>(items.size());
  for (double& v : acc) v /= n;
  return ItemVector::dense(std::move(acc));
}

ItemVector centroid(const Catalogue& catalogue, std::span<const std::string> items) {
  std::vector<std::size_t> idx;
  idx.reserve(items.size());
  for (const auto& id : items) idx.push_back(catalogue.index_of(id));
  return centroid(catalogue, idx);
}

// ---------------------------------------------------------------------------
// Average-link agglomerative clustering

Hierarchy build_average_link_hierarchy(const Catalogue& catalogue) {
  const std::size_t n = catalogue.size();
  if (n == 0) throw InputError("average link: empty catalogue");

  std::vector<NodeSpec> spec(n);
  for (std::size_t i = 0; i < n; ++i) {
    spec[i].id = "n" + std::to_string(i);
    spec[i].items = {catalogue.id(i)};
  }
  if (n == 1) return Hierarchy::from_spec(spec.front());

  // Condensed upper-triangular matrix over slots. A merged cluster reuses the
  // slot of its first member; `created` tracks the creation index per slot.
  auto tri = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  std::vector<double> dist(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[tri(i, j)] = squared_distance(catalogue.vector(i), catalogue.vector(j));
    }
  }

  std::vector<std::size_t> created(n);
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  for (std::size_t i = 0; i < n; ++i) created[i] = i;

  using Key = std::tuple<double, std::size_t, std::size_t>;
  auto key = [&](std::size_t s, std::size_t t) -> Key {
    return {dist[tri(s, t)], std::min(created[s], created[t]), std::max(created[s], created[t])};
  };

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> nearest(n, kNone);
  auto refresh = [&](std::size_t s) {
    nearest[s] = kNone;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s || !active[t]) continue;
      if (nearest[s] == kNone || key(s, t) < key(s, nearest[s])) nearest[s] = t;
    }
  };
  for (std::size_t s = 0; s < n; ++s) refresh(s);

  std::size_t next_id = n;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best = kNone;
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s] || nearest[s] == kNone) continue;
      if (best == kNone || key(s, nearest[s]) < key(best, nearest[best])) best = s;
    }
    std::size_t a = best;
    std::size_t b = nearest[best];
    if (created[b] < created[a]) std::swap(a, b);  // older cluster first

    const double wa = static_cast<double>(size[a]);
    const double wb = static_cast<double>(size[b]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      dist[tri(k, a)] = (wa * dist[tri(k, a)] + wb * dist[tri(k, b)]) / (wa + wb);
    }

    NodeSpec merged;
    merged.id = "n" + std::to_string(next_id);
    merged.children.push_back(std::move(spec[a]));
    merged.children.push_back(std::move(spec[b]));
    spec[a] = std::move(merged);
    created[a] = next_id++;
    size[a] += size[b];
    active[b] = false;

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nearest[k] == a || nearest[k] == b) {
        refresh(k);
      } else if (key(k, a) < key(k, nearest[k])) {
        nearest[k] = a;
      }
    }
    refresh(a);
  }

  for (std::size_t s = 0; s < n; ++s) {
    if (active[s]) return Hierarchy::from_spec(spec[s]);
  }
  throw Error("average link: no surviving cluster");
}

// ---------------------------------------------------------------------------
// Items file

namespace {

using nlohmann::json;

std::vector<std::uint32_t> read_indices(const json& j, std::size_t line) {
  std::vector<std::uint32_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0 ||
        v.get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
      throw InputError("items line " + std::to_string(line) + ": bad sparse index");
    }
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

std::vector<double> read_numbers(const json& j, std::size_t line) {
  if (!j.is_array()) throw InputError("items line " + std::to_string(line) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError("items line " + std::to_string(line) + ": non-numeric value");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Catalogue parse_items(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> docs;
  std::vector<std::string> ids;
  std::vector<ItemVector> vectors;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "items line " + std::to_string(line);
    json rec;
    try {
      rec = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": malformed JSON: " + e.what());
    }
    if (!rec.is_object()) throw InputError(where + ": expected an object");
    auto id = rec.find("id");
    if (id == rec.end() || !id->is_string()) throw InputError(where + ": missing string \"id\"");

    const int kinds = int(rec.contains("text")) + int(rec.contains("vector")) + int(rec.contains("sparse"));
    if (kinds != 1) {
      throw InputError(where + ": expected exactly one of \"text\", \"vector\", \"sparse\"");
    }
    if (rec.contains("text")) {
      if (!vectors.empty()) throw InputError(where + ": text record mixed with vector records");
      if (!rec["text"].is_string()) throw InputError(where + ": \"text\" is not a string");
      docs.emplace_back(id->get<std::string>(), rec["text"].get<std::string>());
      continue;
    }
    if (!docs.empty()) throw InputError(where + ": vector record mixed with text records");
    try {
      if (rec.contains("vector")) {
        vectors.push_back(ItemVector::dense(read_numbers(rec["vector"], line)));
      } else {
        const json& sp = rec["sparse"];
        if (!sp.is_object() || !sp.contains("dim") || !sp["dim"].is_number_unsigned() ||
            !sp.contains("indices") || !sp["indices"].is_array() || !sp.contains("values")) {
          throw InputError(where + ": \"sparse\" needs dim, indices and values");
        }
        vectors.push_back(ItemVector::sparse(sp["dim"].get<std::size_t>(), read_indices(sp["indices"], line),
                                             read_numbers(sp["values"], line)));
      }
    } catch (const InputError& e) {
      throw InputError(where + " (item \"" + id->get<std::string>() + "\"): " + e.what());
    }
    ids.push_back(id->get<std::string>());
  }

  if (!docs.empty()) return build_tfidf(docs);
  if (ids.empty()) throw InputError("items: no records");
  return Catalogue(std::move(ids), std::move(vectors));
}

Catalogue load_items(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open items file " + path.string());
  return parse_items(in);
}

}  // namespace hqs
