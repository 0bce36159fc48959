#include "xorcodes/latin.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace xorcodes {

namespace {

using detail::split_lines;

/// Bipartite matching of columns to still-unused symbols (Kuhn's augmenting
/// paths). Candidate orders are shuffled so the completed row is random.
class RowMatcher {
public:
  RowMatcher(std::size_t width, const std::vector<std::vector<std::uint8_t>>& used_in_column, Rng& rng)
    : width_{width}
    , used_{used_in_column}
    , candidates_(width)
    , symbol_owner_(width, npos)
    , visited_(width, 0)
  {
    for (std::size_t c = 0; c < width_; ++c) {
      for (std::size_t s = 0; s < width_; ++s)
        if (!used_[c][s])
          candidates_[c].push_back(s);
      std::shuffle(candidates_[c].begin(), candidates_[c].end(), rng);
    }
    order_.resize(width_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::shuffle(order_.begin(), order_.end(), rng);
  }

  /// symbol index (0-based) per column
  std::vector<std::size_t> solve()
  {
    for (std::size_t c : order_) {
      ++stamp_;
      if (!augment(c))
        throw std::logic_error("partial Latin rectangle could not be extended");
    }
    std::vector<std::size_t> row(width_, npos);
    for (std::size_t s = 0; s < width_; ++s)
      row[symbol_owner_[s]] = s;
    return row;
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool augment(std::size_t column)
  {
    for (std::size_t s : candidates_[column]) {
      if (visited_[s] == stamp_)
        continue;
      visited_[s] = stamp_;
      if (symbol_owner_[s] == npos || augment(symbol_owner_[s])) {
        symbol_owner_[s] = column;
        return true;
      }
    }
    return false;
  }

  std::size_t width_;
  const std::vector<std::vector<std::uint8_t>>& used_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> symbol_owner_;
  std::vector<std::size_t> visited_;
  std::size_t stamp_ = 0;
};

std::vector<std::size_t> parse_numbers(std::string_view line, std::size_t line_no)
{
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view token = line.substr(pos, end - pos);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw ParseError(line_no, "expected space-separated decimal integers");
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

} // namespace

LatinRectangle::LatinRectangle(std::size_t width, std::vector<std::vector<Symbol>> rows)
  : height_{rows.size()}
  , width_{width}
{
  if (width_ == 0 || height_ == 0)
    throw std::invalid_argument("Latin rectangle must be at least 1x1");
  if (height_ > width_)
    throw std::invalid_argument("Latin rectangle height exceeds width");

  std::vector<std::vector<std::uint8_t>> seen_in_column(width_, std::vector<std::uint8_t>(width_ + 1, 0));
  cells_.reserve(height_ * width_);
  for (std::size_t r = 0; r < height_; ++r) {
    if (rows[r].size() != width_)
      throw std::invalid_argument("Latin rectangle row " + std::to_string(r) + " has wrong length");
    std::vector<std::uint8_t> seen_in_row(width_ + 1, 0);
    for (std::size_t c = 0; c < width_; ++c) {
      const Symbol s = rows[r][c];
      if (s < 1 || s > width_)
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside 1.." + std::to_string(width_));
      if (seen_in_row[s]++)
        throw std::invalid_argument("symbol " + std::to_string(s) + " repeated in row " + std::to_string(r));
      if (seen_in_column[c][s]++)
        throw std::invalid_argument("symbol " + std::to_string(s) + " repeated in column " + std::to_string(c));
      cells_.push_back(s);
    }
  }
}

Symbol LatinRectangle::at(std::size_t r, std::size_t c) const
{
  if (r >= height_ || c >= width_)
    throw std::out_of_range("Latin rectangle index out of range");
  return cells_[r * width_ + c];
}

std::span<const Symbol> LatinRectangle::row(std::size_t r) const
{
  if (r >= height_)
    throw std::out_of_range("Latin rectangle row out of range");
  return {cells_.data() + r * width_, width_};
}

LatinSquare::LatinSquare(LatinRectangle rows)
  : rows_{std::move(rows)}
{
  if (rows_.height() != rows_.width())
    throw std::invalid_argument("Latin square must have as many rows as columns");
}

namespace {

LatinRectangle square_rows(std::vector<std::vector<Symbol>> rows)
{
  const std::size_t order = rows.size(); // read before the move below
  return LatinRectangle(order, std::move(rows));
}

} // namespace

LatinSquare::LatinSquare(std::vector<std::vector<Symbol>> rows)
  : LatinSquare(square_rows(std::move(rows)))
{}

LatinRectangle random_latin_rectangle(std::size_t height, std::size_t width, Rng& rng)
{
  if (width == 0 || height == 0 || height > width)
    throw std::invalid_argument("Latin rectangle needs 1 <= height <= width");

  std::vector<std::vector<std::uint8_t>> used(width, std::vector<std::uint8_t>(width, 0));
  std::vector<std::vector<Symbol>> rows;
  rows.reserve(height);
  for (std::size_t r = 0; r < height; ++r) {
    const auto symbols = RowMatcher(width, used, rng).solve();
    std::vector<Symbol> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      used[c][symbols[c]] = 1;
      row[c] = static_cast<Symbol>(symbols[c] + 1);
    }
    rows.push_back(std::move(row));
  }
  return LatinRectangle(width, std::move(rows));
}

LatinSquare random_latin_square(std::size_t order, Rng& rng)
{
  return LatinSquare(random_latin_rectangle(order, order, rng));
}

LatinRectangle top_rectangle(const LatinSquare& square, std::size_t height)
{
  if (height < 1 || height > square.order())
    throw std::invalid_argument("rectangle height " + std::to_string(height) + " outside 1.." +
                                std::to_string(square.order()));
  std::vector<std::vector<Symbol>> rows;
  for (std::size_t r = 0; r < height; ++r) {
    const auto row = square.rows().row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return LatinRectangle(square.order(), std::move(rows));
}

BinaryMatrix incidence_matrix(const LatinRectangle& rect)
{
  BinaryMatrix m(rect.width(), rect.width());
  for (std::size_t r = 0; r < rect.height(); ++r)
    for (std::size_t c = 0; c < rect.width(); ++c)
      m.set(c, rect.at(r, c) - 1, true);
  return m;
}

BalancedMatrix random_balanced_code(std::size_t order, std::size_t balance, Rng& rng, std::size_t max_tries)
{
  if (balance % 2 == 0)
    throw std::invalid_argument("k1 must be odd");
  if (balance < 1 || balance > order)
    throw std::invalid_argument("k1 must lie in 1..k");

  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    auto rect = random_latin_rectangle(balance, order, rng);
    auto m = incidence_matrix(rect);
    if (is_nonsingular(m))
      return BalancedMatrix{std::move(m), std::move(rect), attempt};
  }
  throw std::runtime_error("no nonsingular balanced matrix found in " + std::to_string(max_tries) + " tries");
}

BinaryMatrix random_balanced_nonsingular(std::size_t order, std::size_t balance, Rng& rng, std::size_t max_tries)
{
  return random_balanced_code(order, balance, rng, max_tries).matrix;
}

LatinRectangle parse_latin(std::string_view text)
{
  const auto lines = split_lines(text);
  if (lines.empty())
    throw ParseError(1, "missing header 'k1 k'");
  const auto header = parse_numbers(lines[0], 1);
  if (header.size() != 2)
    throw ParseError(1, "header must be 'k1 k'");
  const std::size_t height = header[0];
  const std::size_t width = header[1];
  if (height == 0 || width == 0)
    throw ParseError(1, "dimensions must be at least 1");
  if (lines.size() < height + 1)
    throw ParseError(lines.size() + 1, "expected " + std::to_string(height) + " rows");
  if (lines.size() > height + 1)
    throw ParseError(height + 2, "unexpected trailing content");

  std::vector<std::vector<Symbol>> rows;
  for (std::size_t r = 0; r < height; ++r) {
    const auto values = parse_numbers(lines[r + 1], r + 2);
    if (values.size() != width)
      throw ParseError(r + 2, "row has " + std::to_string(values.size()) + " symbols, expected " +
                                  std::to_string(width));
    std::vector<Symbol> row;
    for (std::size_t v : values) {
      if (v < 1 || v > width)
        throw ParseError(r + 2, "symbol " + std::to_string(v) + " outside 1.." + std::to_string(width));
      row.push_back(static_cast<Symbol>(v));
    }
    rows.push_back(std::move(row));
  }
  try {
    return LatinRectangle(width, std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

LatinRectangle load_latin(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open Latin rectangle file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_latin(buffer.str());
}

std::string format_latin(const LatinRectangle& rect)
{
  std::string out = std::to_string(rect.height()) + " " + std::to_string(rect.width()) + "\n";
  for (std::size_t r = 0; r < rect.height(); ++r) {
    for (std::size_t c = 0; c < rect.width(); ++c) {
      if (c > 0)
        out.push_back(' ');
      out += std::to_string(rect.at(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

} // namespace xorcodes
