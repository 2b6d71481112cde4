#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace csst {

/// Finite address over the alphabet {1,2,3}. The empty word is the root.
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters);
  static Word parse(const std::string& s) { return Word(s); }

  std::size_t length() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  int letter(std::size_t i) const { return s_[i] - '0'; }
  int last() const { return s_.back() - '0'; }
  int first() const { return s_.front() - '0'; }

  Word child(int letter) const;
  Word parent() const { return Word(s_.substr(0, s_.size() - 1)); }
  Word suffix(std::size_t from) const { return Word(s_.substr(from)); }
  Word prefix(std::size_t len) const { return Word(s_.substr(0, len)); }
  Word concat(const Word& tail) const { return Word(s_ + tail.s_); }

  bool is_prefix_of(const Word& other) const {
    return other.s_.size() >= s_.size() && other.s_.compare(0, s_.size(), s_) == 0;
  }
  static std::size_t common_prefix_len(const Word& a, const Word& b);

  const std::string& str() const { return s_; }

  friend bool operator==(const Word&, const Word&) = default;
  // Lexicographic; used only for deterministic container ordering.
  friend auto operator<=>(const Word& a, const Word& b) { return a.s_ <=> b.s_; }

 private:
  std::string s_;
};

std::vector<Word> words_of_length(std::size_t n);
std::vector<Word> words_up_to_length(std::size_t n);

}  // namespace csst
