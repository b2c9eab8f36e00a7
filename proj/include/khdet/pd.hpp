#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace khdet {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// One crossing: the four incident edges counterclockwise starting from the
// incoming under-strand. sign is derived from the edge numbering and cached.
struct Crossing {
  std::array<int, 4> e{};
  int sign = 0;
};

// An oriented diagram in PD notation with a marked basepoint edge. Edge ids
// run 1..edge_count, numbered consecutively along each component; the
// 0-crossing unknot is the single edge 1.
struct Diagram {
  std::vector<Crossing> crossings;
  int edge_count = 1;
  int basepoint_edge = 1;
  int component_count = 1;
  // [lo, hi] edge ranges, one per component, ascending
  std::vector<std::pair<int, int>> component_ranges{{1, 1}};

  std::size_t crossing_count() const { return crossings.size(); }
  bool is_unknot_diagram() const { return crossings.empty(); }

  int succ(int edge) const;  // next edge along the orientation
  int n_plus() const;
  int n_minus() const;
};

// Validates tuples (each edge twice, consecutive numbering per component,
// orientation consistency), computes signs and components.
Diagram make_diagram(std::vector<std::array<int, 4>> tuples, int basepoint = 1);

Diagram unknot();

// Grammar: `PD[X(a,b,c,d), ...]` with an optional ` base=<edge>` suffix, or
// the unknot token `U`. An empty crossing list is a syntax error; the unknot
// is only spelled `U`.
Diagram parse_pd(const std::string& text);
std::string serialize(const Diagram& d);

int writhe(const Diagram& d);
Diagram mirror(const Diagram& d);
Diagram reverse(const Diagram& d);          // single component only
Diagram connected_sum(const Diagram& a, const Diagram& b);
Diagram with_basepoint(const Diagram& d, int edge);

// Slot bookkeeping shared by the resolution cube and the satellite builder.
struct EdgeSlot {
  int crossing;
  int pos;  // tuple position 0..3
};
// occurrences[e] lists the 1 or 2 slots of edge e (2 for every edge of a
// diagram with crossings; the unknot edge has none).
std::vector<std::vector<EdgeSlot>> edge_slots(const Diagram& d);
// True when the strand enters the crossing at this tuple position.
bool slot_incoming(const Diagram& d, int crossing, int pos);

}  // namespace khdet
