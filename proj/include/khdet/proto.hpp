#pragma once

#include <optional>
#include <vector>

#include "khdet/pd.hpp"

namespace khdet {

// A port is one of the four arc ends of a crossing, indexed 0..3 in
// counterclockwise planar order. Slots {0,2} carry the under-strand,
// {1,3} the over-strand.
struct ProtoPort {
  int crossing = -1;
  int slot = -1;
};

// Unoriented 4-valent diagram under construction: crossings plus a perfect
// matching of their ports. Tracing the strands assigns edge numbers and emits
// a validated PD, so the output numbering is reproducible byte for byte.
class ProtoDiagram {
 public:
  int add_crossing() {
    mate_.insert(mate_.end(), 4, -1);
    return n_crossings_++;
  }

  void connect(ProtoPort u, ProtoPort v);

  int crossing_count() const { return n_crossings_; }

  // Numbers edges along the strand starting on the arc at `start` heading
  // into it, then emits the PD. Throws validation_error if any port is
  // unconnected; multi-component diagrams get consecutive per-component
  // numbering in discovery order. The start arc becomes edge 1.
  Diagram to_diagram(std::optional<ProtoPort> start = std::nullopt) const;

 private:
  int index(ProtoPort p) const { return 4 * p.crossing + p.slot; }
  int n_crossings_ = 0;
  std::vector<int> mate_;  // port index -> connected port index
};

}  // namespace khdet
