// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hqs/hierarchy.hpp"

namespace hqs {

/// Item feature vector, stored dense or sparse. Arithmetic between the two
/// representations behaves as if both were dense.
class ItemVector {
 public:
  ItemVector() = default;

  /// Throws InputError on non-finite values.
  static ItemVector dense(std::vector<double> values);
  /// Indices must be strictly increasing and below `dimension`.
  static ItemVector sparse(std::size_t dimension, std::vector<std::uint32_t> indices,
                           std::vector<double> values);

  std::size_t dimension() const { return dimension_; }
  bool is_sparse() const { return sparse_; }
  /// Stored coordinates; for sparse vectors, parallel to indices().
  std::span<const double> values() const { return values_; }
  std::span<const std::uint32_t> indices() const { return indices_; }

  double at(std::size_t i) const;
  std::vector<double> to_dense() const;

  double squared_norm() const;
  double dot(const ItemVector& other) const;
  double dot(std::span<const double> dense) const;
  /// acc += scale * this
  void add_to(std::span<double> acc, double scale = 1.0) const;

  friend bool operator==(const ItemVector& a, const ItemVector& b);

 private:
  std::size_t dimension_ = 0;
  bool sparse_ = false;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

/// ||v - dense||^2
double squared_distance(const ItemVector& v, std::span<const double> dense);

/// Items with their vectors, in insertion order. Immutable once built.
class Catalogue {
 public:
  Catalogue() = default;
  /// Validates unique non-empty ids and a shared dimension. `texts` is
  /// either empty or parallel to `ids`.
  Catalogue(std::vector<std::string> ids, std::vector<ItemVector> vectors,
            std::vector<std::string> texts = {});

  std::size_t size() const { return ids_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::span<const std::string> ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const ItemVector& vector(std::size_t i) const { return vectors_.at(i); }
  std::optional<std::string_view> text(std::size_t i) const;

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws InputError for unknown ids.
  std::size_t index_of(std::string_view id) const;

 private:
  std::vector<std::string> ids_;
  std::vector<ItemVector> vectors_;
  std::vector<std::string> texts_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t dimension_ = 0;
};

/// Lowercases ASCII and splits on ASCII non-alphanumerics. Bytes >= 0x80 are
/// kept inside tokens so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// TF-IDF with raw term counts and smooth idf ln((1+D)/(1+df)) + 1. The
/// vocabulary is sorted lexicographically; vectors are sparse and not
/// length-normalised.
Catalogue build_tfidf(std::span<const std::pair<std::string, std::string>> docs);

/// Sorted vocabulary produced by build_tfidf for the same documents.
std::vector<std::string> tfidf_vocabulary(std::span<const std::pair<std::string, std::string>> docs);

/// Coordinate-wise mean of the listed catalogue entries.
ItemVector centroid(const Catalogue& catalogue, std::span<const std::size_t> items);
ItemVector centroid(const Catalogue& catalogue, std::span<const std::string> items);

/// Agglomerative clustering with average linkage over squared Euclidean
/// distance. Leaves are singletons; node labels are "n<k>" where k is the
/// cluster creation index (items take 0..N-1 in catalogue order, merges take
/// N, N+1, ...). Ties go to the pair with the smallest, then second-smallest,
/// creation index.
Hierarchy build_average_link_hierarchy(const Catalogue& catalogue);

/// Items file: JSON Lines of {"id","text"} | {"id","vector"} |
/// {"id","sparse":{"dim","indices","values"}}. Text records become a TF-IDF
/// catalogue; mixing text and vector records is rejected.
Catalogue parse_items(std::istream& in);
Catalogue load_items(const std::filesystem::path& path);

}  // namespace hqs
