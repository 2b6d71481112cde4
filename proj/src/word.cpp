#include "csst/word.hpp"

#include "csst/errors.hpp"

namespace csst {

Word::Word(std::string letters) : s_(std::move(letters)) {
  for (char c : s_)
    if (c < '1' || c > '3') fail(Errc::InvalidInput, "word letter out of {1,2,3}: '" + s_ + "'");
}

Word Word::child(int letter) const {
  if (letter < 1 || letter > 3) fail(Errc::InvalidInput, "letter out of {1,2,3}");
  return Word(s_ + static_cast<char>('0' + letter));
}

std::size_t Word::common_prefix_len(const Word& a, const Word& b) {
  std::size_t n = std::min(a.s_.size(), b.s_.size());
  std::size_t i = 0;
  while (i < n && a.s_[i] == b.s_[i]) ++i;
  return i;
}

std::vector<Word> words_of_length(std::size_t n) {
  std::vector<Word> out;
  out.reserve(1);
  std::string cur;
  // iterative odometer
  cur.assign(n, '1');
  if (n == 0) return {Word()};
  while (true) {
    out.emplace_back(Word(cur));
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == '3') cur[--i] = '1';
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

std::vector<Word> words_up_to_length(std::size_t n) {
  std::vector<Word> out;
  for (std::size_t l = 0; l <= n; ++l) {
    auto ws = words_of_length(l);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

}  // namespace csst
