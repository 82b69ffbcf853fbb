#pragma once

#include <cstdint>
#include <string>

namespace shiftlab {

// A finite word: ordered letters plus the integer index of the first letter.
// Letters are chars; binary words use '0'/'1'.
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters, std::int64_t offset = 0)
      : letters_(std::move(letters)), offset_(offset) {}

  const std::string& letters() const { return letters_; }
  std::int64_t offset() const { return offset_; }
  std::int64_t size() const { return static_cast<std::int64_t>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  std::int64_t lo() const { return offset_; }
  std::int64_t hi() const { return offset_ + size() - 1; }  // inclusive

  // Letter at absolute position n; throws when out of range.
  char at(std::int64_t n) const;

  // Subword on the absolute interval [a, b], inclusive.
  Word sub(std::int64_t a, std::int64_t b) const;

  Word shifted(std::int64_t delta) const { return Word(letters_, offset_ + delta); }

  bool is_binary() const;

  bool operator==(const Word& o) const {
    return letters_ == o.letters_ && offset_ == o.offset_;
  }

  // "@k:letters"; offset 0 may be written bare.
  std::string str() const;
  static Word parse(const std::string& text);

 private:
  std::string letters_;
  std::int64_t offset_ = 0;
};

}  // namespace shiftlab
