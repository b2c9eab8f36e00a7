#include "khdet/complex.hpp"

#include <algorithm>
#include <bit>

#include "khdet/util.hpp"

namespace khdet {

long long GradedComplex::chain_dimension() const {
  long long n = 0;
  for (const auto& [ij, block] : blocks) n += static_cast<long long>(block.gens.size());
  return n;
}

namespace {

// Per-state transition data shared by all generators of a state.
struct CubeEdge {
  TransitionKind kind;
  int src_a, src_b;  // circle indices in the source state (merge) / src_a (split)
  int dst_a, dst_b;  // circle index in the target state (merge) / two (split)
  std::vector<int> spectator_map;  // source circle idx -> target circle idx, -1 for consumed
};

CubeEdge make_cube_edge(const Diagram& d, const ResolutionState& src,
                        const ResolutionState& dst, int crossing) {
  CubeEdge ce;
  EdgeTransition t = transition(d, src, crossing);
  ce.kind = t.kind;
  ce.spectator_map.assign(src.circle_count(), -1);

  auto src_index_of_key = [&](int key) {
    for (int i = 0; i < src.circle_count(); ++i)
      if (src.circle_key(i) == key) return i;
    throw validation_error("missing source circle key");
  };
  auto dst_index_of_key = [&](int key) {
    for (int i = 0; i < dst.circle_count(); ++i)
      if (dst.circle_key(i) == key) return i;
    throw validation_error("missing target circle key");
  };

  if (t.kind == TransitionKind::merge) {
    ce.src_a = src_index_of_key(t.in_a);
    ce.src_b = src_index_of_key(t.in_b);
    ce.dst_a = dst_index_of_key(t.out_a);
    ce.dst_b = -1;
  } else {
    ce.src_a = src_index_of_key(t.in_a);
    ce.src_b = -1;
    ce.dst_a = dst_index_of_key(t.out_a);
    ce.dst_b = dst_index_of_key(t.out_b);
  }
  // Spectator circles keep their edge sets, hence their keys.
  for (int i = 0; i < src.circle_count(); ++i) {
    if (i == ce.src_a || i == ce.src_b) continue;
    ce.spectator_map[i] = dst_index_of_key(src.circle_key(i));
  }
  return ce;
}

}  // namespace

GradedComplex build_complex(const Diagram& d, bool reduced) {
  const int c = static_cast<int>(d.crossing_count());
  if (c > 25)
    throw validation_error("cube complex limited to 25 crossings; use the fast path");
  if (reduced && d.component_count != 1)
    throw validation_error("reduced complex requires a single component");

  GradedComplex cx;
  cx.n_plus = d.n_plus();
  cx.n_minus = d.n_minus();
  cx.reduced = reduced;

  const int shift = cx.n_plus - 2 * cx.n_minus + (reduced ? 1 : 0);

  std::vector<ResolutionState> states(std::size_t{1} << c);
  for (uint32_t s : gray_states(c)) states[s] = resolve(d, s);

  // Generators, grouped by bigrading; Gray enumeration keeps per-state
  // groups contiguous within each block.
  for (uint32_t s : gray_states(c)) {
    const ResolutionState& rs = states[s];
    const int m = rs.circle_count();
    const int i = rs.weight - cx.n_minus;
    int base_bit = -1;
    if (reduced) base_bit = rs.circle_containing(d.basepoint_edge);
    for (uint32_t labels = 0; labels < (uint32_t{1} << m); ++labels) {
      if (reduced && !((labels >> base_bit) & 1)) continue;
      const int xs = std::popcount(labels);
      const int j = (m - 2 * xs) + rs.weight + shift;
      cx.blocks[{i, j}].gens.push_back({s, labels});
    }
  }

  // Index for target lookup: generators are (state, labels) sorted within a
  // block by construction order; binary search over the sorted copy.
  std::map<Bigrading, std::vector<std::pair<Generator, int>>> index;
  for (auto& [ij, block] : cx.blocks) {
    auto& v = index[ij];
    v.reserve(block.gens.size());
    for (std::size_t n = 0; n < block.gens.size(); ++n)
      v.emplace_back(block.gens[n], static_cast<int>(n));
    std::sort(v.begin(), v.end());
  }
  auto find_gen = [&index](Bigrading ij, Generator g) {
    const auto& v = index.at(ij);
    auto it = std::lower_bound(v.begin(), v.end(), std::pair{g, -1});
    if (it == v.end() || !(it->first == g))
      throw validation_error("boundary image generator missing from target block");
    return it->second;
  };

  for (auto& [ij, block] : cx.blocks) {
    const Bigrading target{ij.i + 1, ij.j};
    auto target_it = cx.blocks.find(target);
    const std::size_t target_dim = target_it == cx.blocks.end() ? 0 : target_it->second.gens.size();
    block.boundary = F2Matrix(block.gens.size(), target_dim);
    if (target_dim == 0) continue;

    // Cube edge data per (state, crossing), built lazily.
    std::map<std::pair<uint32_t, int>, CubeEdge> edges;
    for (std::size_t r = 0; r < block.gens.size(); ++r) {
      const Generator g = block.gens[r];
      const ResolutionState& rs = states[g.state];
      for (int k = 0; k < c; ++k) {
        if ((g.state >> k) & 1) continue;
        const uint32_t s2 = g.state | (uint32_t{1} << k);
        auto [it, fresh] = edges.try_emplace({g.state, k});
        if (fresh) it->second = make_cube_edge(d, rs, states[s2], k);
        const CubeEdge& ce = it->second;

        uint32_t spect = 0;
        for (int ci = 0; ci < rs.circle_count(); ++ci)
          if (ce.spectator_map[ci] >= 0 && ((g.labels >> ci) & 1))
            spect |= uint32_t{1} << ce.spectator_map[ci];

        if (ce.kind == TransitionKind::merge) {
          const bool xa = (g.labels >> ce.src_a) & 1;
          const bool xb = (g.labels >> ce.src_b) & 1;
          if (xa && xb) continue;  // x . x = 0
          uint32_t out = spect;
          if (xa || xb) out |= uint32_t{1} << ce.dst_a;
          block.boundary.flip(r, find_gen(target, {s2, out}));
        } else {
          const bool xc = (g.labels >> ce.src_a) & 1;
          if (xc) {
            uint32_t out = spect | (uint32_t{1} << ce.dst_a) | (uint32_t{1} << ce.dst_b);
            block.boundary.flip(r, find_gen(target, {s2, out}));
          } else {
            block.boundary.flip(r, find_gen(target, {s2, spect | (uint32_t{1} << ce.dst_a)}));
            block.boundary.flip(r, find_gen(target, {s2, spect | (uint32_t{1} << ce.dst_b)}));
          }
        }
      }
    }
  }
  return cx;
}

RankTable homology(const GradedComplex& c, int threads) {
  if (threads <= 0) threads = default_thread_count();
  RankTable t;
  t.reduced = c.reduced;

  std::vector<std::pair<Bigrading, const Block*>> blocks;
  blocks.reserve(c.blocks.size());
  for (const auto& [ij, block] : c.blocks) blocks.emplace_back(ij, &block);

  std::vector<long long> dims(blocks.size(), 0);
  std::vector<std::string> errors(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t n) {
    const auto [ij, block] = blocks[n];
    const Bigrading prev{ij.i - 1, ij.j};
    auto prev_it = c.blocks.find(prev);
    const F2Matrix* d_in = prev_it == c.blocks.end() ? nullptr : &prev_it->second.boundary;
    F2Matrix empty_in(0, block->gens.size());
    try {
      dims[n] = homology_rank(d_in ? *d_in : empty_in, block->boundary);
    } catch (const std::exception& e) {
      errors[n] = e.what();
    }
  });
  for (const auto& err : errors)
    if (!err.empty()) throw malformed_complex(err);

  for (std::size_t n = 0; n < blocks.size(); ++n) {
    if (dims[n] == 0) continue;
    t.entries[blocks[n].first] = dims[n];
    t.total += dims[n];
  }
  return t;
}

RankTable homology_naive(const Diagram& d, bool reduced, int threads) {
  return homology(build_complex(d, reduced), threads);
}

std::string to_json(const RankTable& t) {
  std::string out = "{\"reduced\": ";
  out += t.reduced ? "true" : "false";
  out += ", \"entries\": [";
  bool first = true;
  for (const auto& [ij, dim] : t.entries) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(ij.i) + ", " + std::to_string(ij.j) + ", " +
           std::to_string(dim) + "]";
  }
  out += "], \"total\": " + std::to_string(t.total) + "}";
  return out;
}

}  // namespace khdet
