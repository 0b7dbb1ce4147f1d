#ifndef AEADLINT_SOURCE_H_
#define AEADLINT_SOURCE_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aeadlint {

struct SourceLocation {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::size_t byte_offset = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
  friend auto operator<=>(const SourceLocation& a, const SourceLocation& b) {
    return a.byte_offset <=> b.byte_offset;
  }
};

// Returns `text` with every byte of every line and block comment replaced by
// a space. Newlines (and carriage returns) are kept, string, byte-string,
// raw-string and char literals are copied verbatim, so offsets and line
// structure are identical between input and output.
std::string BlankComments(std::string_view text);

// Like BlankComments, but also blanks the contents of string and char
// literals (delimiters are kept). Used for structural scans such as brace
// matching, where `"{}"` inside a format string must not count.
std::string BlankCommentsAndLiterals(std::string_view text);

// One analyzed Rust file. Immutable after construction.
class SourceUnit {
 public:
  // Throws EncodingError if `text` is not valid UTF-8.
  static SourceUnit FromText(std::string path, std::string text);

  const std::string& path() const { return path_; }
  const std::string& raw_text() const { return raw_text_; }
  // Comments blanked, literals intact. Detectors match against this.
  const std::string& scan_text() const { return scan_text_; }
  // Comments and literal contents blanked.
  const std::string& structure_text() const { return structure_text_; }
  // Byte offset of the start of each line; line_starts()[0] == 0.
  const std::vector<std::size_t>& line_starts() const { return line_starts_; }

  // Total over [0, raw_text().size()]; throws OutOfRangeError beyond that.
  SourceLocation OffsetToLocation(std::size_t offset) const;

  std::size_t size() const { return raw_text_.size(); }

 private:
  SourceUnit() = default;

  std::string path_;
  std::string raw_text_;
  std::string scan_text_;
  std::string structure_text_;
  std::vector<std::size_t> line_starts_;
};

// Reads and normalizes a file. Throws IoError or EncodingError.
SourceUnit LoadSource(const std::filesystem::path& path);

bool IsValidUtf8(std::string_view text);

}  // namespace aeadlint

#endif  // AEADLINT_SOURCE_H_
