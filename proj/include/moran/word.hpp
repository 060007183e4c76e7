#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace moran {

using Symbol = std::uint8_t;

/// Finite word over the alphabet {1..alphabet}. The empty word is allowed.
///
/// Ordering is the lexicographic order of the shift space: a proper prefix
/// precedes its extensions, otherwise the first differing symbol decides.
class Word {
 public:
  Word() = default;
  explicit Word(int alphabet);
  Word(int alphabet, std::vector<Symbol> symbols);

  /// Digits "1213" over the given alphabet (alphabet <= 9).
  static Word parse(std::string_view digits, int alphabet);

  int alphabet() const { return alphabet_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t k) const { return symbols_[k]; }
  Symbol back() const { return symbols_.back(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  /// i|_n
  Word prefix(std::size_t n) const;
  /// i^-, requires size() >= 1
  Word parent() const;
  /// sigma^k(i)
  Word shifted(std::size_t k) const;
  Word appended(Symbol s) const;
  Word concat(const Word& other) const;
  bool has_prefix(const Word& p) const;

  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  int alphabet_ = 2;
  std::vector<Symbol> symbols_;
};

/// i ^ j, the longest common prefix.
Word lcp(const Word& i, const Word& j);

/// [i] and [j] are disjoint: neither word is a prefix of the other.
bool is_orthogonal(const Word& i, const Word& j);

/// i < j in the shift-space lexicographic order.
bool lex_less(const Word& i, const Word& j);

/// Length first, then lexicographic.
bool shortlex_less(const Word& i, const Word& j);

}  // namespace moran
