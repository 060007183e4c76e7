#include "moran/word.hpp"

#include "moran/errors.hpp"

#include <algorithm>

namespace moran {

namespace {

void check_alphabet(int alphabet) {
  if (alphabet < 2 || alphabet > 255) {
    throw ValidationError("alphabet size must be in 2..255, got " + std::to_string(alphabet));
  }
}

void check_same_alphabet(const Word& i, const Word& j) {
  if (i.alphabet() != j.alphabet()) {
    throw ValidationError("alphabet mismatch: " + std::to_string(i.alphabet()) + " vs " +
                          std::to_string(j.alphabet()));
  }
}

}  // namespace

Word::Word(int alphabet) : alphabet_(alphabet) { check_alphabet(alphabet); }

Word::Word(int alphabet, std::vector<Symbol> symbols) : alphabet_(alphabet), symbols_(std::move(symbols)) {
  check_alphabet(alphabet);
  for (Symbol s : symbols_) {
    if (s < 1 || s > alphabet_) {
      throw ValidationError("symbol " + std::to_string(s) + " outside alphabet 1.." + std::to_string(alphabet_));
    }
  }
}

Word Word::parse(std::string_view digits, int alphabet) {
  if (alphabet > 9) throw ValidationError("digit words need alphabet <= 9");
  std::vector<Symbol> symbols;
  symbols.reserve(digits.size());
  for (char c : digits) {
    if (c < '1' || c > '9') throw ValidationError("invalid symbol '" + std::string(1, c) + "' in word");
    symbols.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(alphabet, std::move(symbols));
}

Word Word::prefix(std::size_t n) const {
  Word w(*this);
  w.symbols_.resize(std::min(n, symbols_.size()));
  return w;
}

Word Word::parent() const {
  if (symbols_.empty()) throw ValidationError("the empty word has no parent");
  return prefix(symbols_.size() - 1);
}

Word Word::shifted(std::size_t k) const {
  Word w(alphabet_);
  if (k < symbols_.size()) w.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(k), symbols_.end());
  return w;
}

Word Word::appended(Symbol s) const {
  Word w(*this);
  w.symbols_.push_back(s);
  return w;
}

Word Word::concat(const Word& other) const {
  check_same_alphabet(*this, other);
  Word w(*this);
  w.symbols_.insert(w.symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return w;
}

bool Word::has_prefix(const Word& p) const {
  return p.size() <= size() && std::equal(p.symbols_.begin(), p.symbols_.end(), symbols_.begin());
}

std::string Word::str() const {
  std::string out;
  for (Symbol s : symbols_) {
    if (s <= 9) {
      out.push_back(static_cast<char>('0' + s));
    } else {
      out += "(" + std::to_string(s) + ")";
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.alphabet_ <=> b.alphabet_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(), b.symbols_.begin(),
                                                b.symbols_.end());
}

Word lcp(const Word& i, const Word& j) {
  check_same_alphabet(i, j);
  const auto mismatch = std::mismatch(i.symbols().begin(), i.symbols().end(), j.symbols().begin(), j.symbols().end());
  return i.prefix(static_cast<std::size_t>(mismatch.first - i.symbols().begin()));
}

bool is_orthogonal(const Word& i, const Word& j) { return !i.has_prefix(j) && !j.has_prefix(i); }

bool lex_less(const Word& i, const Word& j) {
  check_same_alphabet(i, j);
  return i < j;
}

bool shortlex_less(const Word& i, const Word& j) {
  if (i.size() != j.size()) return i.size() < j.size();
  return i < j;
}

}  // namespace moran
