#include "khdet/f2.hpp"

#include <bit>
#include <string>

namespace khdet {

namespace {

int lowest_set_bit(const uint64_t* row, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w)
    if (row[w]) return static_cast<int>(w * 64 + std::countr_zero(row[w]));
  return -1;
}

}  // namespace

std::size_t rank(F2Matrix m) {
  const std::size_t wpr = m.words_per_row();
  // pivot column -> row index owning it
  std::vector<std::pair<int, std::size_t>> pivots;
  std::size_t rk = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    uint64_t* row = m.row(r);
    for (;;) {
      int lead = lowest_set_bit(row, wpr);
      if (lead < 0) break;
      bool reduced = false;
      for (auto& [col, owner] : pivots) {
        if (col == lead) {
          m.xor_row_into(owner, row);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        pivots.emplace_back(lead, r);
        ++rk;
        break;
      }
    }
  }
  return rk;
}

long long homology_rank(const F2Matrix& d_in, const F2Matrix& d_out) {
  if (d_in.cols() != d_out.rows())
    throw malformed_complex("homology_rank: middle dimensions disagree (" +
                            std::to_string(d_in.cols()) + " vs " +
                            std::to_string(d_out.rows()) + ")");
  // d_out . d_in == 0: push every image row of d_in through d_out.
  const std::size_t wpr = d_out.words_per_row();
  std::vector<uint64_t> acc(wpr);
  for (std::size_t r = 0; r < d_in.rows(); ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t c = 0; c < d_in.cols(); ++c)
      if (d_in.get(r, c)) d_out.xor_row_into(c, acc.data());
    for (std::size_t w = 0; w < wpr; ++w)
      if (acc[w]) throw malformed_complex("homology_rank: composition of boundaries is nonzero");
  }
  long long middle = static_cast<long long>(d_out.rows());
  long long h = (middle - static_cast<long long>(rank(d_out))) -
                static_cast<long long>(rank(d_in));
  if (h < 0) throw malformed_complex("homology_rank: negative dimension");
  return h;
}

}  // namespace khdet
