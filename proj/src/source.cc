#include "aeadlint/source.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>

#include "aeadlint/errors.h"

namespace aeadlint {
namespace {

constexpr int kMaxRawHashes = 3;

bool IsIdentChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

// Number of bytes in the UTF-8 sequence introduced by lead byte `c`.
std::size_t Utf8Length(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

enum class Mode { kCommentsOnly, kCommentsAndLiterals };

class Normalizer {
 public:
  Normalizer(std::string_view in, Mode mode) : in_(in), mode_(mode) {
    out_.reserve(in.size());
  }

  std::string Run() {
    while (i_ < in_.size()) {
      const char c = in_[i_];
      if (c == '/' && Peek(1) == '/') {
        LineComment();
      } else if (c == '/' && Peek(1) == '*') {
        BlockComment();
      } else if (c == '"') {
        QuotedString(0);
      } else if (StartsRawString()) {
        // handled inside StartsRawString
      } else if (c == 'b' && Peek(1) == '"' && !PrevIsIdent()) {
        QuotedString(1);
      } else if (c == 'b' && Peek(1) == '\'' && !PrevIsIdent()) {
        if (!CharLiteral(1)) Copy(1);
      } else if (c == '\'') {
        if (!CharLiteral(0)) Copy(1);
      } else {
        Copy(1);
      }
    }
    return std::move(out_);
  }

 private:
  char Peek(std::size_t ahead) const {
    return i_ + ahead < in_.size() ? in_[i_ + ahead] : '\0';
  }
  bool PrevIsIdent() const { return i_ > 0 && IsIdentChar(in_[i_ - 1]); }

  void Copy(std::size_t n) {
    n = std::min(n, in_.size() - i_);
    out_.append(in_.substr(i_, n));
    i_ += n;
  }
  void Blank(std::size_t n) {
    n = std::min(n, in_.size() - i_);
    for (std::size_t k = 0; k < n; ++k) {
      const char c = in_[i_ + k];
      out_.push_back(c == '\n' || c == '\r' ? c : ' ');
    }
    i_ += n;
  }
  // Literal contents: copied or blanked depending on mode.
  void Content(std::size_t n) {
    if (mode_ == Mode::kCommentsAndLiterals) {
      Blank(n);
    } else {
      Copy(n);
    }
  }

  void LineComment() {
    std::size_t end = in_.find('\n', i_);
    if (end == std::string_view::npos) end = in_.size();
    Blank(end - i_);
  }

  void BlockComment() {
    std::size_t j = i_ + 2;
    int depth = 1;
    while (j < in_.size() && depth > 0) {
      if (in_[j] == '/' && j + 1 < in_.size() && in_[j + 1] == '*') {
        ++depth;
        j += 2;
      } else if (in_[j] == '*' && j + 1 < in_.size() && in_[j + 1] == '/') {
        --depth;
        j += 2;
      } else {
        ++j;
      }
    }
    Blank(j - i_);
  }

  // `prefix_len` bytes (the `b` of a byte string) precede the opening quote.
  void QuotedString(std::size_t prefix_len) {
    Copy(prefix_len + 1);
    std::size_t j = i_;
    while (j < in_.size() && in_[j] != '"') {
      j += (in_[j] == '\\') ? 2 : 1;
    }
    j = std::min(j, in_.size());
    Content(j - i_);
    if (i_ < in_.size()) Copy(1);
  }

  bool StartsRawString() {
    std::size_t j = i_;
    if (in_[j] == 'b' && Peek(1) == 'r') {
      ++j;
    }
    if (in_[j] != 'r' || PrevIsIdent()) return false;
    ++j;
    int hashes = 0;
    while (j < in_.size() && in_[j] == '#' && hashes <= kMaxRawHashes) {
      ++hashes;
      ++j;
    }
    if (hashes > kMaxRawHashes || j >= in_.size() || in_[j] != '"') {
      return false;
    }
    const std::string terminator = "\"" + std::string(hashes, '#');
    Copy(j + 1 - i_);
    std::size_t end = in_.find(terminator, i_);
    if (end == std::string_view::npos) {
      Content(in_.size() - i_);
      return true;
    }
    Content(end - i_);
    Copy(terminator.size());
    return true;
  }

  // Returns false when the quote starts a lifetime or label instead.
  bool CharLiteral(std::size_t prefix_len) {
    const std::size_t open = i_ + prefix_len;
    std::size_t close = std::string_view::npos;
    if (open + 1 < in_.size() && in_[open + 1] == '\\') {
      // Escapes: '\n', '\'', '\x41', '\u{1F600}'.
      for (std::size_t j = open + 2; j < in_.size() && j < open + 14; ++j) {
        if (in_[j] == '\'' && j > open + 2) {
          close = j;
          break;
        }
        if (in_[j] == '\n') break;
      }
    } else if (open + 1 < in_.size()) {
      const std::size_t len =
          Utf8Length(static_cast<unsigned char>(in_[open + 1]));
      if (open + 1 + len < in_.size() && in_[open + 1 + len] == '\'' &&
          in_[open + 1] != '\n') {
        close = open + 1 + len;
      }
    }
    if (close == std::string_view::npos) return false;
    Copy(prefix_len + 1);
    Content(close - i_);
    Copy(1);
    return true;
  }

  std::string_view in_;
  Mode mode_;
  std::string out_;
  std::size_t i_ = 0;
};

}  // namespace

std::string BlankComments(std::string_view text) {
  return Normalizer(text, Mode::kCommentsOnly).Run();
}

std::string BlankCommentsAndLiterals(std::string_view text) {
  return Normalizer(text, Mode::kCommentsAndLiterals).Run();
}

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c >> 5) == 0x6) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c >> 4) == 0xE) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c >> 3) == 0x1E) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc >> 6) != 0x2) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates, out of range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

SourceUnit SourceUnit::FromText(std::string path, std::string text) {
  if (!IsValidUtf8(text)) {
    throw EncodingError(path + ": not valid UTF-8");
  }
  SourceUnit unit;
  unit.path_ = std::move(path);
  unit.raw_text_ = std::move(text);
  unit.scan_text_ = BlankComments(unit.raw_text_);
  unit.structure_text_ = BlankCommentsAndLiterals(unit.raw_text_);
  unit.line_starts_.push_back(0);
  for (std::size_t i = 0; i < unit.raw_text_.size(); ++i) {
    if (unit.raw_text_[i] == '\n') unit.line_starts_.push_back(i + 1);
  }
  return unit;
}

SourceLocation SourceUnit::OffsetToLocation(std::size_t offset) const {
  if (offset > raw_text_.size()) {
    std::ostringstream msg;
    msg << path_ << ": offset " << offset << " beyond end of file ("
        << raw_text_.size() << " bytes)";
    throw OutOfRangeError(msg.str());
  }
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  const std::size_t line_index =
      static_cast<std::size_t>(std::distance(line_starts_.begin(), it)) - 1;
  return SourceLocation{line_index + 1, offset - line_starts_[line_index] + 1,
                        offset};
}

SourceUnit LoadSource(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string() + ": cannot open file");
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError(path.string() + ": read failed");
  }
  return SourceUnit::FromText(path.string(), std::move(text));
}

}  // namespace aeadlint
