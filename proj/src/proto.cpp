#include "khdet/proto.hpp"

#include <algorithm>

namespace khdet {

void ProtoDiagram::connect(ProtoPort u, ProtoPort v) {
  const int a = index(u), b = index(v);
  if (a == b) throw validation_error("proto arc cannot connect a port to itself");
  if (mate_[a] != -1 || mate_[b] != -1)
    throw validation_error("proto port connected twice");
  mate_[a] = b;
  mate_[b] = a;
}

Diagram ProtoDiagram::to_diagram(std::optional<ProtoPort> start) const {
  if (n_crossings_ == 0) return unknot();
  const int n_ports = 4 * n_crossings_;
  for (int p = 0; p < n_ports; ++p)
    if (mate_[p] == -1) throw validation_error("proto diagram has an unconnected port");

  std::vector<int> edge_at(n_ports, 0);
  std::vector<char> incoming(n_ports, 0);

  // Walk each strand. An arc is identified by its head port; starting at a
  // head port numbers the arc arriving there first.
  int next_edge = 1;
  auto walk = [&](int head) {
    while (edge_at[head] == 0) {
      const int tail = mate_[head];
      edge_at[head] = next_edge;
      edge_at[tail] = next_edge;
      incoming[head] = 1;
      ++next_edge;
      head = mate_[4 * (head / 4) + (head % 4 + 2) % 4];
    }
  };

  if (start) walk(index(*start));
  for (int p = 0; p < n_ports; ++p)
    if (edge_at[p] == 0) walk(p);

  std::vector<std::array<int, 4>> tuples(n_crossings_);
  for (int k = 0; k < n_crossings_; ++k) {
    const bool zero_in = incoming[4 * k + 0];
    const bool two_in = incoming[4 * k + 2];
    if (zero_in == two_in) throw validation_error("proto trace visited an under-strand twice");
    const int u = zero_in ? 0 : 2;
    for (int j = 0; j < 4; ++j) tuples[k][j] = edge_at[4 * k + (u + j) % 4];
  }
  return make_diagram(std::move(tuples), 1);
}

}  // namespace khdet
