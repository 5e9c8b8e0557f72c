#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "atdist/error.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// Similarity threshold ε in [0,1]. Two labels are equivalent when their
/// similarity is strictly above ε; at ε = 1 only exact similarity 1 counts.
class Epsilon {
 public:
  constexpr Epsilon() = default;
  explicit Epsilon(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("epsilon must lie in [0,1], got " + std::to_string(v));
    }
  }
  constexpr double value() const noexcept { return value_; }

 private:
  double value_ = 1.0;
};

inline bool equivalent(double sim, Epsilon eps) noexcept {
  if (eps.value() >= 1.0) return sim >= 1.0;
  return sim > eps.value();
}

/// Trims and, if requested, ASCII-lowercases a label.
inline std::string normalize_label(std::string_view s, bool lowercase = true) {
  std::string out(trim(s));
  if (lowercase) {
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

/// Decodes UTF-8 into scalar values. Invalid bytes decode to U+DC80..U+DCFF
/// so that distinct inputs stay distinct.
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = byte(i);
    std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
    bool ok = len != 0 && i + len <= s.size();
    char32_t cp = 0;
    if (ok) {
      cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
      for (std::size_t k = 1; k < len; ++k) {
        const unsigned char bk = byte(i + k);
        if ((bk & 0xC0) != 0x80) { ok = false; break; }
        cp = (cp << 6) | (bk & 0x3F);
      }
    }
    if (!ok) {
      out.push_back(0xDC00 + b0);
      ++i;
    } else {
      out.push_back(cp);
      i += len;
    }
  }
  return out;
}

/// Unit-cost edit distance over Unicode scalar values.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string x = decode_utf8(a), y = decode_utf8(b);
  std::vector<std::size_t> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

/// 1 - lev(a,b) / max(|a|,|b|); two empty strings are identical.
inline double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::size_t la = decode_utf8(a).size(), lb = decode_utf8(b).size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

/// Anything that scores two labels in [0,1], symmetric, with sim(a,a) = 1.
template <typename P>
concept SimilarityProvider = requires(const P& p, std::string_view a, std::string_view b) {
  { p.similarity(a, b) } -> std::convertible_to<double>;
  { p.name() } -> std::convertible_to<std::string>;
};

/// 1 when the normalized labels are byte-identical, else 0.
struct ExactSimilarity {
  bool lowercase = true;

  double similarity(std::string_view a, std::string_view b) const {
    return normalize_label(a, lowercase) == normalize_label(b, lowercase) ? 1.0 : 0.0;
  }
  std::string name() const { return "exact"; }
};

struct LevenshteinSimilarity {
  bool lowercase = true;

  double similarity(std::string_view a, std::string_view b) const {
    const std::string x = normalize_label(a, lowercase), y = normalize_label(b, lowercase);
    if (x == y) return 1.0;
    return levenshtein_similarity(x, y);
  }
  std::string name() const { return "levenshtein"; }
};

/// Type-erased provider for choosing the strategy at runtime.
class AnyProvider {
 public:
  template <SimilarityProvider P>
    requires(!std::same_as<std::remove_cvref_t<P>, AnyProvider>)
  AnyProvider(P provider)  // NOLINT(google-explicit-constructor)
      : impl_(std::make_shared<Model<P>>(std::move(provider))) {}

  double similarity(std::string_view a, std::string_view b) const { return impl_->similarity(a, b); }
  std::string name() const { return impl_->name(); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double similarity(std::string_view, std::string_view) const = 0;
    virtual std::string name() const = 0;
  };
  template <typename P>
  struct Model final : Concept {
    explicit Model(P p) : provider(std::move(p)) {}
    double similarity(std::string_view a, std::string_view b) const override {
      return provider.similarity(a, b);
    }
    std::string name() const override { return provider.name(); }
    P provider;
  };
  std::shared_ptr<const Concept> impl_;
};

/// Dense row-major |A| x |B| similarity matrix.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols, 0.0) {}
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> v_;
};

template <SimilarityProvider P>
SimilarityMatrix similarity_matrix(const P& provider, const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  SimilarityMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      m(i, j) = std::clamp(static_cast<double>(provider.similarity(a[i], b[j])), 0.0, 1.0);
    }
  }
  return m;
}

}  // namespace atdist
