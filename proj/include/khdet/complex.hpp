#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khdet/cube.hpp"
#include "khdet/f2.hpp"
#include "khdet/pd.hpp"

namespace khdet {

struct Bigrading {
  int i = 0;
  int j = 0;
  auto operator<=>(const Bigrading&) const = default;
};

// One chain generator: a cube state plus a circle labeling. Bit k of labels
// set means circle k (in the state's canonical circle order) carries x; a
// clear bit is the unit label.
struct Generator {
  uint32_t state = 0;
  uint32_t labels = 0;
  auto operator<=>(const Generator&) const = default;
};

// Chain group at one bigrading together with the boundary into (i+1, j).
// The boundary has one row per generator here, bit c hitting generator c of
// the target block; an absent target block means a 0-column matrix.
struct Block {
  std::vector<Generator> gens;
  F2Matrix boundary;
};

struct GradedComplex {
  std::map<Bigrading, Block> blocks;
  int n_plus = 0;
  int n_minus = 0;
  bool reduced = false;

  long long chain_dimension() const;
};

// Dimensions of homology per bigrading; zero entries are dropped.
struct RankTable {
  std::map<Bigrading, long long> entries;
  long long total = 0;
  bool reduced = false;

  bool operator==(const RankTable&) const = default;
};

// Builds the cube complex. Gradings: i = weight - n_minus,
// j = (#unit - #x) + weight + n_plus - 2 n_minus, plus 1 when reduced.
// The reduced complex keeps the generators whose basepoint circle carries x.
GradedComplex build_complex(const Diagram& d, bool reduced);

RankTable homology(const GradedComplex& c, int threads = 0);

// Convenience: homology(build_complex(d, reduced)).
RankTable homology_naive(const Diagram& d, bool reduced, int threads = 0);

// {"reduced": ..., "entries": [[i, j, dim], ...], "total": ...} with entries
// sorted lexicographically by (i, j).
std::string to_json(const RankTable& t);

}  // namespace khdet
