#pragma once

#include <cstddef>
#include <string_view>

namespace atdist {

enum class OpKind { Remove, Add, Change, Match };

inline std::string_view to_string(OpKind k) {
  switch (k) {
    case OpKind::Remove: return "remove";
    case OpKind::Add: return "add";
    case OpKind::Change: return "change";
    case OpKind::Match: return "match";
  }
  return "?";
}

/// Tally of edit operations reported by a measure.
struct OpCounts {
  std::size_t remove = 0;
  std::size_t add = 0;
  std::size_t change = 0;
  std::size_t match = 0;

  void record(OpKind k, std::size_t n = 1) {
    switch (k) {
      case OpKind::Remove: remove += n; break;
      case OpKind::Add: add += n; break;
      case OpKind::Change: change += n; break;
      case OpKind::Match: match += n; break;
    }
  }
  std::size_t total() const noexcept { return remove + add + change + match; }
  bool operator==(const OpCounts&) const = default;
};

}  // namespace atdist
