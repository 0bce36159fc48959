#include "xorcodes/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "text.hpp"

namespace xorcodes {

namespace {

using detail::split_lines;

void check_index(std::size_t i, std::size_t bound, const char* what)
{
  if (i >= bound)
    throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " out of range");
}

std::size_t parse_count(std::string_view token, std::size_t line)
{
  std::size_t value = 0;
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, "expected a decimal count, got '" + std::string(token) + "'");
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, "count out of range: '" + std::string(token) + "'");
  return value;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
  : std::runtime_error("line " + std::to_string(line) + ": " + what)
  , line_{line}
{}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
  : rows_{rows}
  , cols_{cols}
  , row_stride_{words_for(cols)}
  , col_stride_{words_for(rows)}
{
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("matrix dimensions must be at least 1x1");
  row_bits_.assign(rows_ * row_stride_, 0);
  col_bits_.assign(cols_ * col_stride_, 0);
}

BinaryMatrix BinaryMatrix::identity(std::size_t n)
{
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, true);
  return m;
}

BinaryMatrix BinaryMatrix::ones(std::size_t rows, std::size_t cols)
{
  BinaryMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m.set(r, c, true);
  return m;
}

BinaryMatrix BinaryMatrix::from_strings(std::span<const std::string_view> rows)
{
  if (rows.empty())
    throw std::invalid_argument("matrix needs at least one row");
  BinaryMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols())
      throw std::invalid_argument("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                                  ", expected " + std::to_string(m.cols()));
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1')
        throw std::invalid_argument(std::string("invalid matrix character '") + ch + "'");
      if (ch == '1')
        m.set(r, c, true);
    }
  }
  return m;
}

BinaryMatrix BinaryMatrix::from_strings(std::initializer_list<std::string_view> rows)
{
  return from_strings(std::span<const std::string_view>(rows.begin(), rows.size()));
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const
{
  check_index(r, rows_, "row");
  check_index(c, cols_, "column");
  return (row_bits_[r * row_stride_ + c / word_bits] >> (c % word_bits)) & 1U;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value)
{
  if (get(r, c) != value)
    flip(r, c);
}

void BinaryMatrix::flip(std::size_t r, std::size_t c)
{
  check_index(r, rows_, "row");
  check_index(c, cols_, "column");
  row_bits_[r * row_stride_ + c / word_bits] ^= Word{1} << (c % word_bits);
  col_bits_[c * col_stride_ + r / word_bits] ^= Word{1} << (r % word_bits);
}

std::span<const Word> BinaryMatrix::row_words(std::size_t r) const
{
  check_index(r, rows_, "row");
  return {row_bits_.data() + r * row_stride_, row_stride_};
}

std::span<const Word> BinaryMatrix::column_words(std::size_t c) const
{
  check_index(c, cols_, "column");
  return {col_bits_.data() + c * col_stride_, col_stride_};
}

std::size_t BinaryMatrix::count_ones() const noexcept
{
  std::size_t total = 0;
  for (Word w : row_bits_)
    total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BinaryMatrix::operator==(const BinaryMatrix& other) const noexcept
{
  return rows_ == other.rows_ && cols_ == other.cols_ && row_bits_ == other.row_bits_;
}

ColumnBasis::ColumnBasis(std::size_t height)
  : height_{height}
  , words_{words_for(height)}
  , scratch_(words_for(height), 0)
{
  basis_.reserve(height_ * words_);
  pivots_.reserve(height_);
}

bool ColumnBasis::insert(std::span<const Word> column)
{
  if (column.size() != words_)
    throw std::invalid_argument("column height does not match basis height");

  if (words_ == 1) {
    Word v = column[0];
    for (std::size_t j = 0; j < pivots_.size() && v != 0; ++j)
      if ((v >> pivots_[j]) & 1U)
        v ^= basis_[j];
    if (v == 0)
      return false;
    basis_.push_back(v);
    pivots_.push_back(static_cast<std::size_t>(std::countr_zero(v)));
    return true;
  }

  std::copy(column.begin(), column.end(), scratch_.begin());
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    const std::size_t p = pivots_[j];
    if ((scratch_[p / word_bits] >> (p % word_bits)) & 1U) {
      const Word* b = basis_.data() + j * words_;
      for (std::size_t w = 0; w < words_; ++w)
        scratch_[w] ^= b[w];
    }
  }
  for (std::size_t w = 0; w < words_; ++w) {
    if (scratch_[w] != 0) {
      basis_.insert(basis_.end(), scratch_.begin(), scratch_.end());
      pivots_.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(scratch_[w])));
      return true;
    }
  }
  return false;
}

void ColumnBasis::truncate(std::size_t rank)
{
  if (rank < pivots_.size()) {
    pivots_.resize(rank);
    basis_.resize(rank * words_);
  }
}

std::size_t rank(const BinaryMatrix& m)
{
  const std::size_t stride = words_for(m.cols());
  std::vector<Word> rows(m.rows() * stride);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), rows.begin() + static_cast<std::ptrdiff_t>(r * stride));
  }

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    const std::size_t w = c / word_bits;
    const Word mask = Word{1} << (c % word_bits);
    std::size_t found = pivot_row;
    while (found < m.rows() && (rows[found * stride + w] & mask) == 0)
      ++found;
    if (found == m.rows())
      continue;
    if (found != pivot_row)
      std::swap_ranges(rows.begin() + static_cast<std::ptrdiff_t>(found * stride),
                       rows.begin() + static_cast<std::ptrdiff_t>((found + 1) * stride),
                       rows.begin() + static_cast<std::ptrdiff_t>(pivot_row * stride));
    const Word* pivot = rows.data() + pivot_row * stride;
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      Word* row = rows.data() + r * stride;
      if (row[w] & mask)
        for (std::size_t i = w; i < stride; ++i)
          row[i] ^= pivot[i];
    }
    ++pivot_row;
  }
  return pivot_row;
}

bool is_nonsingular(const BinaryMatrix& m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("not square");
  return rank(m) == m.rows();
}

BinaryMatrix select_columns(const BinaryMatrix& m, std::span<const std::size_t> indices)
{
  if (indices.empty())
    throw std::invalid_argument("select_columns needs at least one index");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= m.cols())
      throw std::out_of_range("column index " + std::to_string(indices[i]) + " out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument("column indices must be strictly increasing");
  }
  BinaryMatrix out(m.rows(), indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m.get(r, indices[j]))
        out.set(r, j, true);
  return out;
}

BinaryMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng)
{
  BinaryMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t base = 0; base < cols; base += word_bits) {
      const Word bits = rng();
      const std::size_t span = std::min(word_bits, cols - base);
      for (std::size_t b = 0; b < span; ++b)
        if ((bits >> b) & 1U)
          m.set(r, base + b, true);
    }
  }
  return m;
}

BitVector encode(std::span<const std::uint8_t> x, const BinaryMatrix& g)
{
  if (x.size() != g.rows())
    throw std::invalid_argument("message length " + std::to_string(x.size()) + " does not match " +
                                std::to_string(g.rows()) + " generator rows");
  std::vector<Word> acc(words_for(g.cols()), 0);
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] > 1)
      throw std::invalid_argument("message entries must be 0 or 1");
    if (x[r] == 0)
      continue;
    const auto row = g.row_words(r);
    for (std::size_t w = 0; w < acc.size(); ++w)
      acc[w] ^= row[w];
  }
  BitVector y(g.cols());
  for (std::size_t c = 0; c < g.cols(); ++c)
    y[c] = static_cast<std::uint8_t>((acc[c / word_bits] >> (c % word_bits)) & 1U);
  return y;
}

BinaryMatrix parse_matrix(std::string_view text)
{
  const auto lines = split_lines(text);
  if (lines.empty())
    throw ParseError(1, "missing header 'k n'");

  const std::string_view header = lines[0];
  const std::size_t space = header.find(' ');
  if (space == std::string_view::npos)
    throw ParseError(1, "header must be 'k n'");
  const std::size_t k = parse_count(header.substr(0, space), 1);
  const std::size_t n = parse_count(header.substr(space + 1), 1);
  if (k == 0 || n == 0)
    throw ParseError(1, "dimensions must be at least 1");

  if (lines.size() < k + 1)
    throw ParseError(lines.size() + 1, "expected " + std::to_string(k) + " matrix rows, found " +
                                           std::to_string(lines.size() - 1));
  if (lines.size() > k + 1)
    throw ParseError(k + 2, "unexpected trailing content");

  BinaryMatrix m(k, n);
  for (std::size_t r = 0; r < k; ++r) {
    const std::string_view row = lines[r + 1];
    const std::size_t line = r + 2;
    if (row.size() != n)
      throw ParseError(line, "row has " + std::to_string(row.size()) + " characters, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
      if (row[c] == '1')
        m.set(r, c, true);
      else if (row[c] != '0')
        throw ParseError(line, "invalid character at column " + std::to_string(c + 1));
    }
  }
  return m;
}

BinaryMatrix parse_matrix(std::istream& in)
{
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(std::string_view(buffer.str()));
}

BinaryMatrix load_matrix(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open matrix file " + path.string());
  return parse_matrix(in);
}

std::string format_matrix(const BinaryMatrix& m)
{
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

} // namespace xorcodes
