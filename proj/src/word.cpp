#include "shiftlab/word.hpp"

#include <stdexcept>

namespace shiftlab {

char Word::at(std::int64_t n) const {
  if (n < lo() || n > hi()) throw std::out_of_range("Word::at: index outside word");
  return letters_[static_cast<std::size_t>(n - offset_)];
}

Word Word::sub(std::int64_t a, std::int64_t b) const {
  if (a > b) return Word("", a);
  if (a < lo() || b > hi())
    throw std::out_of_range("Word::sub: interval outside word");
  return Word(letters_.substr(static_cast<std::size_t>(a - offset_),
                              static_cast<std::size_t>(b - a + 1)),
              a);
}

bool Word::is_binary() const {
  for (char ch : letters_)
    if (ch != '0' && ch != '1') return false;
  return true;
}

std::string Word::str() const {
  if (offset_ == 0) return letters_;
  return "@" + std::to_string(offset_) + ":" + letters_;
}

Word Word::parse(const std::string& text) {
  if (text.empty() || text[0] != '@') return Word(text, 0);
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("Word: missing ':' after offset prefix");
  return Word(text.substr(colon + 1), std::stoll(text.substr(1, colon - 1)));
}

}  // namespace shiftlab
