#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

#include "khdet/gen.hpp"
#include "khdet/proto.hpp"
#include "khdet/util.hpp"

namespace khdet::oracle {

namespace {

// Laurent polynomial in A with multiply, local to the bracket oracle.
using Poly = std::map<int, long long>;

void add_term(Poly& p, int exp, long long c) {
  auto it = p.find(exp);
  if (it == p.end()) {
    if (c != 0) p[exp] = c;
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_term(out, ea + eb, ca * cb);
  return out;
}

int count_loops(const Diagram& d, uint32_t bits) {
  if (d.is_unknot_diagram()) return 1;
  DisjointSets ds(d.edge_count + 1);
  int loops = d.edge_count;
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    const auto& e = d.crossings[k].e;
    if ((bits >> k) & 1) {
      loops -= ds.unite(e[0], e[3]);
      loops -= ds.unite(e[1], e[2]);
    } else {
      loops -= ds.unite(e[0], e[1]);
      loops -= ds.unite(e[2], e[3]);
    }
  }
  return loops;
}

}  // namespace

LaurentPoly kauffman_jones(const Diagram& d) {
  const int c = static_cast<int>(d.crossing_count());
  if (c > 20) throw std::invalid_argument("bracket oracle capped at 20 crossings");

  const Poly delta = {{2, -1}, {-2, -1}};  // -A^2 - A^-2
  Poly bracket;
  for (uint32_t bits = 0; bits < (uint32_t{1} << c); ++bits) {
    const int ones = std::popcount(bits);
    const int loops = count_loops(d, bits);
    Poly term = {{c - 2 * ones, 1}};  // A^(#0 - #1)
    for (int l = 1; l < loops; ++l) term = mul(term, delta);
    for (const auto& [e, co] : term) add_term(bracket, e, co);
  }

  // f = (-A^3)^(-w) <D>, a polynomial in A^4 for knots.
  const int w = writhe(d);
  Poly f;
  const long long sign = (w % 2 == 0) ? 1 : -1;
  for (const auto& [e, co] : bracket) add_term(f, e - 3 * w, sign * co);

  LaurentPoly jones_q;  // V(q^2): t = A^-4 = q^2
  for (const auto& [e, co] : f) {
    if (e % 4 != 0) throw std::runtime_error("bracket exponent not divisible by 4");
    jones_q.add(-e / 2, co);
  }
  return jones_q;
}

namespace {

struct Faces {
  int count = 0;
  std::vector<int> face_of_dart;  // indexed by head slot
};

// Faces of the 4-valent projection: orbits of "arrive at a slot, turn to the
// clockwise neighbouring slot, cross that edge".
Faces trace_faces(const Diagram& d) {
  const int c = static_cast<int>(d.crossing_count());
  auto slots = edge_slots(d);
  std::vector<int> other(4 * c, -1);
  for (int e = 1; e <= d.edge_count; ++e) {
    const int s0 = 4 * slots[e][0].crossing + slots[e][0].pos;
    const int s1 = 4 * slots[e][1].crossing + slots[e][1].pos;
    other[s0] = s1;
    other[s1] = s0;
  }
  auto next = [&](int s) {
    const int k = s / 4, p = s % 4;
    return other[4 * k + (p + 3) % 4];
  };
  Faces f;
  f.face_of_dart.assign(4 * c, -1);
  for (int s = 0; s < 4 * c; ++s) {
    if (f.face_of_dart[s] != -1) continue;
    int cur = s;
    do {
      f.face_of_dart[cur] = f.count;
      cur = next(cur);
    } while (cur != s);
    ++f.count;
  }
  if (f.count != c + 2)
    throw std::runtime_error("face count " + std::to_string(f.count) +
                             " != crossings + 2; PD code is not a planar knot shadow");
  return f;
}

long long int_determinant(std::vector<std::vector<long long>> m) {
  // Bareiss fraction-free elimination.
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  __int128 prev = 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) a[r][col] = m[r][col];
  long long sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row == -1) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int col = k + 1; col < n; ++col)
        a[r][col] = (a[r][col] * a[k][k] - a[r][k] * a[k][col]) / prev;
    prev = a[k][k];
  }
  return sign * static_cast<long long>(a[n - 1][n - 1]);
}

}  // namespace

long long goeritz_determinant(const Diagram& d) {
  if (d.component_count != 1) throw std::invalid_argument("goeritz oracle expects a knot");
  if (d.is_unknot_diagram()) return 1;
  const int c = static_cast<int>(d.crossing_count());
  Faces f = trace_faces(d);

  // Checkerboard coloring: faces across an edge get opposite colors.
  auto slots = edge_slots(d);
  std::vector<std::vector<int>> adj(f.count);
  for (int e = 1; e <= d.edge_count; ++e) {
    const int f0 = f.face_of_dart[4 * slots[e][0].crossing + slots[e][0].pos];
    const int f1 = f.face_of_dart[4 * slots[e][1].crossing + slots[e][1].pos];
    adj[f0].push_back(f1);
    adj[f1].push_back(f0);
  }
  std::vector<int> color(f.count, -1);
  std::vector<int> queue{0};
  color[0] = 0;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    for (int v : adj[u]) {
      if (color[v] == -1) {
        color[v] = 1 - color[u];
        queue.push_back(v);
      } else if (color[v] == color[u]) {
        throw std::runtime_error("faces are not checkerboard colorable");
      }
    }
  }

  // Corner between slots q and q+1 belongs to the face of the dart whose
  // head is slot q+1. Corners (1,2) and (3,0) are the A-regions.
  auto corner_face = [&](int k, int q) { return f.face_of_dart[4 * k + (q + 1) % 4]; };

  std::vector<int> white_faces;
  std::vector<int> white_index(f.count, -1);
  for (int i = 0; i < f.count; ++i)
    if (color[i] == 0) {
      white_index[i] = static_cast<int>(white_faces.size());
      white_faces.push_back(i);
    }

  const int n = static_cast<int>(white_faces.size());
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
  for (int k = 0; k < c; ++k) {
    const int fa = corner_face(k, 1), fb = corner_face(k, 3);  // A-pair
    const int fc = corner_face(k, 0), fd = corner_face(k, 2);  // B-pair
    if (color[fa] != color[fb] || color[fc] != color[fd])
      throw std::runtime_error("opposite corners disagree in color");
    const bool white_is_a = color[fa] == 0;
    const int eta = white_is_a ? +1 : -1;
    const int u = white_is_a ? fa : fc;
    const int v = white_is_a ? fb : fd;
    if (u == v) continue;
    g[white_index[u]][white_index[v]] -= eta;
    g[white_index[v]][white_index[u]] -= eta;
  }
  for (int s = 0; s < n; ++s) {
    long long row = 0;
    for (int t = 0; t < n; ++t)
      if (t != s) row += g[s][t];
    g[s][s] = -row;
  }
  // Delete the first white face's row and column.
  std::vector<std::vector<long long>> gp(n - 1, std::vector<long long>(n - 1));
  for (int r = 1; r < n; ++r)
    for (int col = 1; col < n; ++col) gp[r - 1][col - 1] = g[r][col];
  return std::llabs(int_determinant(std::move(gp)));
}

std::size_t naive_rank(const std::vector<std::vector<bool>>& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<bool>> a = m;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rk = 0, row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && !a[pivot][col]) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != row && a[r][col])
        for (std::size_t cc = 0; cc < cols; ++cc) a[r][cc] = a[r][cc] != a[row][cc];
    }
    ++row;
    ++rk;
  }
  return rk;
}

Smoothed smooth_crossing(const Diagram& d, int crossing, int resolution) {
  const int c = static_cast<int>(d.crossing_count());
  if (crossing < 0 || crossing >= c) throw std::invalid_argument("crossing index out of range");

  auto slots = edge_slots(d);
  std::vector<int> mate(4 * c, -1);
  for (int e = 1; e <= d.edge_count; ++e) {
    const int s0 = 4 * slots[e][0].crossing + slots[e][0].pos;
    const int s1 = 4 * slots[e][1].crossing + slots[e][1].pos;
    mate[s0] = s1;
    mate[s1] = s0;
  }
  auto is_k = [&](int s) { return s / 4 == crossing; };
  auto sp = [&](int s) {  // smoothing partner inside the removed crossing
    const int p = s % 4;
    if (resolution == 0) return 4 * crossing + (p ^ 1);
    return 4 * crossing + ((p % 2 == 0) ? (p + 3) % 4 : (p + 1) % 4);
  };

  Smoothed out;
  std::vector<char> visited(4, 0);
  std::vector<std::pair<int, int>> joins;  // external slot pairs to reconnect
  for (int p = 0; p < 4; ++p) {
    const int s = 4 * crossing + p;
    if (visited[p] || is_k(mate[s])) continue;
    // Walk from the external attachment through the smoothing.
    int cur = s;
    for (;;) {
      visited[cur % 4] = 1;
      const int n = sp(cur);
      visited[n % 4] = 1;
      const int m = mate[n];
      if (!is_k(m)) {
        joins.emplace_back(mate[s], m);
        break;
      }
      cur = m;
    }
  }
  for (int p = 0; p < 4; ++p) {
    const int s = 4 * crossing + p;
    if (visited[p]) continue;
    // Unreached slots close into crossing-free circles.
    int cur = s;
    do {
      visited[cur % 4] = 1;
      const int n = sp(cur);
      visited[n % 4] = 1;
      cur = mate[n];
    } while (cur != s);
    ++out.free_circles;
  }

  if (c == 1) return out;

  ProtoDiagram proto;
  std::vector<int> remap(c, -1);
  for (int k = 0; k < c; ++k)
    if (k != crossing) remap[k] = proto.add_crossing();
  auto to_port = [&](int s) { return ProtoPort{remap[s / 4], s % 4}; };
  for (int s = 0; s < 4 * c; ++s) {
    if (is_k(s) || is_k(mate[s]) || mate[s] < s) continue;
    proto.connect(to_port(s), to_port(mate[s]));
  }
  for (auto [u, v] : joins) proto.connect(to_port(u), to_port(v));
  out.diagram = proto.to_diagram();
  return out;
}

std::vector<Diagram> random_knots(int count, int max_crossings, uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Diagram> out;
  while (static_cast<int>(out.size()) < count) {
    const int strands = 2 + static_cast<int>(rng() % 3);
    const int len = strands + static_cast<int>(rng() % (max_crossings - strands + 1));
    if (len > max_crossings) continue;
    std::vector<int> word(len);
    for (int& w : word) {
      const int j = 1 + static_cast<int>(rng() % (strands - 1));
      w = (rng() & 1) ? j : -j;
    }
    try {
      out.push_back(braid_closure(word, strands));
    } catch (const validation_error&) {
      continue;  // multi-component or crossing-free strand; resample
    }
  }
  return out;
}

}  // namespace khdet::oracle
