#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "xorcodes/random.hpp"

namespace xorcodes {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

/// One bit per entry, stored as 0/1 bytes.
using BitVector = std::vector<std::uint8_t>;

constexpr std::size_t words_for(std::size_t bits) noexcept
{
  return (bits + word_bits - 1) / word_bits;
}

/// Error raised by the strict text readers; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Dense rows x cols matrix over GF(2).
///
/// Bits are kept row-major in 64-bit words, with a column-major mirror kept in
/// sync so that column subsets can be gathered without transposing. Both are
/// implementation details; the public surface only deals in (row, col) bits and
/// word spans.
class BinaryMatrix {
public:
  /// All-zero matrix. Both dimensions must be at least 1.
  BinaryMatrix(std::size_t rows, std::size_t cols);

  static BinaryMatrix identity(std::size_t n);
  static BinaryMatrix ones(std::size_t rows, std::size_t cols);

  /// Each string is one row of '0'/'1' characters; all rows must have equal length.
  static BinaryMatrix from_strings(std::span<const std::string_view> rows);
  static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c);

  /// words_for(cols()) words; bits past cols() are zero.
  std::span<const Word> row_words(std::size_t r) const;
  /// words_for(rows()) words; bits past rows() are zero.
  std::span<const Word> column_words(std::size_t c) const;

  std::size_t count_ones() const noexcept;

  bool operator==(const BinaryMatrix& other) const noexcept;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t row_stride_;
  std::size_t col_stride_;
  std::vector<Word> row_bits_;
  std::vector<Word> col_bits_;
};

/// Incremental span of GF(2) column vectors of a fixed height.
///
/// Vectors are reduced against the stored basis in insertion order; each stored
/// vector is zero at the pivots of all earlier ones, and its own pivot is its
/// lowest set bit. Insertions only append, so truncate() rolls the basis back to
/// any earlier rank.
class ColumnBasis {
public:
  explicit ColumnBasis(std::size_t height);

  /// Returns true when the vector was independent of the current span.
  bool insert(std::span<const Word> column);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t height() const noexcept { return height_; }

  void truncate(std::size_t rank);
  void clear() noexcept { truncate(0); }

private:
  std::size_t height_;
  std::size_t words_;
  std::vector<Word> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Word> scratch_;
};

std::size_t rank(const BinaryMatrix& m);

/// Throws std::invalid_argument("not square") for non-square input.
bool is_nonsingular(const BinaryMatrix& m);

/// Indices must be strictly increasing and in range.
BinaryMatrix select_columns(const BinaryMatrix& m, std::span<const std::size_t> indices);

/// Every bit independently uniform.
BinaryMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// y = x * G over GF(2): XOR of the rows of G picked by the 1-bits of x.
BitVector encode(std::span<const std::uint8_t> x, const BinaryMatrix& g);

// Matrix text format: "k n" on the first line, then k lines of n '0'/'1' chars.
BinaryMatrix parse_matrix(std::istream& in);
BinaryMatrix parse_matrix(std::string_view text);
BinaryMatrix load_matrix(const std::filesystem::path& path);
std::string format_matrix(const BinaryMatrix& m);

} // namespace xorcodes
