#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace khdet {

struct malformed_complex : std::runtime_error {
  explicit malformed_complex(const std::string& what) : std::runtime_error(what) {}
};

// Dense bit-packed matrix over the two-element field.
//
// Orientation convention used throughout the engine: a boundary matrix has
// one row per *source* generator and bit c set when the image hits target
// generator c. Rank is transpose-invariant, so elimination never cares.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  void set(std::size_t r, std::size_t c) { data_[r * wpr_ + c / 64] |= uint64_t{1} << (c % 64); }
  void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + c / 64] ^= uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1;
  }

  uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }
  const uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }

  void xor_row_into(std::size_t src, uint64_t* dst) const {
    const uint64_t* s = row(src);
    for (std::size_t w = 0; w < wpr_; ++w) dst[w] ^= s[w];
  }

  bool row_is_zero(std::size_t r) const {
    const uint64_t* s = row(r);
    for (std::size_t w = 0; w < wpr_; ++w)
      if (s[w]) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> data_;
};

// Rank over GF(2). Takes a copy; elimination is destructive.
std::size_t rank(F2Matrix m);

// dim ker(d_out) - rank(d_in) for the middle space of d_in -> V -> d_out.
// Throws malformed_complex unless d_out . d_in == 0; this is the d^2 hook.
long long homology_rank(const F2Matrix& d_in, const F2Matrix& d_out);

}  // namespace khdet
