#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xorcodes/gf2.hpp"
#include "xorcodes/random.hpp"

namespace xorcodes {

using Symbol = std::uint32_t;

/// height x width array over symbols 1..width: every symbol exactly once per
/// row, at most once per column. Validated on construction.
class LatinRectangle {
public:
  LatinRectangle(std::size_t width, std::vector<std::vector<Symbol>> rows);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  Symbol at(std::size_t r, std::size_t c) const;
  std::span<const Symbol> row(std::size_t r) const;

  bool operator==(const LatinRectangle&) const = default;

private:
  std::size_t height_;
  std::size_t width_;
  std::vector<Symbol> cells_;
};

/// A full-height rectangle; every column is then a permutation too.
class LatinSquare {
public:
  explicit LatinSquare(LatinRectangle rows);
  explicit LatinSquare(std::vector<std::vector<Symbol>> rows);

  std::size_t order() const noexcept { return rows_.width(); }
  Symbol at(std::size_t r, std::size_t c) const { return rows_.at(r, c); }
  const LatinRectangle& rows() const noexcept { return rows_; }

  bool operator==(const LatinSquare&) const = default;

private:
  LatinRectangle rows_;
};

LatinRectangle random_latin_rectangle(std::size_t height, std::size_t width, Rng& rng);
LatinSquare random_latin_square(std::size_t order, Rng& rng);

/// First `height` rows of the square.
LatinRectangle top_rectangle(const LatinSquare& square, std::size_t height);

/// width x width matrix with M[i][j] = 1 iff symbol j+1 occurs in column i of
/// the rectangle. Every row and column carries exactly height() ones.
BinaryMatrix incidence_matrix(const LatinRectangle& rect);

inline constexpr std::size_t default_balanced_tries = 1000;
inline constexpr std::size_t default_balance = 3;

struct BalancedMatrix {
  BinaryMatrix matrix;
  LatinRectangle rectangle;
  std::size_t tries;
};

/// Draws random balance x order Latin rectangles until the incidence matrix is
/// nonsingular. Odd `balance` is necessary (an even count makes the columns sum
/// to zero) but not sufficient, hence the retry budget.
BalancedMatrix random_balanced_code(std::size_t order, std::size_t balance, Rng& rng,
                                    std::size_t max_tries = default_balanced_tries);

BinaryMatrix random_balanced_nonsingular(std::size_t order, std::size_t balance, Rng& rng,
                                         std::size_t max_tries = default_balanced_tries);

// Text format: "k1 k", then k1 lines of k space-separated symbols.
LatinRectangle parse_latin(std::string_view text);
LatinRectangle load_latin(const std::filesystem::path& path);
std::string format_latin(const LatinRectangle& rect);

} // namespace xorcodes
