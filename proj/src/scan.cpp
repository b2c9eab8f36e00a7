#include "khdet/scan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "khdet/util.hpp"

namespace khdet {

namespace {

// A basic cobordism between two smoothings is a dot pattern on the cycles of
// their overlay; a morphism is an xor-set of those patterns. Closed surfaces
// evaluate through the rank-2 Frobenius algebra with x^2 = 0, which over this
// field kills any component of positive genus or with two dots.
using Mask = uint32_t;
using Morphism = std::vector<Mask>;  // sorted, duplicate-free

void canonicalize(Morphism& m) {
  std::sort(m.begin(), m.end());
  Morphism out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if ((j - i) % 2) out.push_back(m[i]);
    i = j;
  }
  m.swap(out);
}

void xor_into(Morphism& target, const Morphism& add) {
  target.insert(target.end(), add.begin(), add.end());
  canonicalize(target);
}

struct Arc {
  int a, b;  // endpoints, a < b
  bool operator==(const Arc&) const = default;
};
using Matching = std::vector<Arc>;  // sorted by .a

struct Circle {
  std::vector<int> pts;  // sorted, nonempty
};

struct Obj {
  int iw = 0;  // homological weight: number of 1-smoothings so far
  int jq = 0;  // quantum shift: weight plus deloop contributions
  Matching m;
  std::vector<Circle> circles;  // nonempty only between attach and deloop
  bool alive = true;
};

Arc make_arc(int a, int b) { return a < b ? Arc{a, b} : Arc{b, a}; }


// Overlay cycle structure of a pair of objects over the same open points:
// alternating arc cycles plus each side's closed circles, in a canonical
// order keyed by minimum point. Masks index bits in this order.
struct PairCycles {
  int count = 0;
  std::vector<int> side;                // 0 arcs, 1 source circle, 2 target circle
  std::vector<int> circle_idx;          // for sides 1/2
  std::vector<int> rep_a_arc;           // for side 0: some A-arc on the cycle
  std::map<int, int> cycle_at_point;    // open point -> side-0 cycle
  std::vector<int> of_a_arc, of_b_arc;  // arc index -> cycle
  std::vector<int> of_a_circle, of_b_circle;
};

PairCycles cycles_of(const Obj& A, const Obj& B) {
  std::map<int, std::pair<int, int>> enda, endb;  // point -> (arc idx, other end)
  for (std::size_t i = 0; i < A.m.size(); ++i) {
    enda[A.m[i].a] = {static_cast<int>(i), A.m[i].b};
    enda[A.m[i].b] = {static_cast<int>(i), A.m[i].a};
  }
  for (std::size_t i = 0; i < B.m.size(); ++i) {
    endb[B.m[i].a] = {static_cast<int>(i), B.m[i].b};
    endb[B.m[i].b] = {static_cast<int>(i), B.m[i].a};
  }
  if (enda.size() != endb.size())
    throw malformed_complex("scan: objects disagree on open points");

  struct Raw {
    int key, side, circle_idx, rep_a_arc;
  };
  std::vector<Raw> raw;
  std::vector<std::pair<int, int>> arc_assign_a, arc_assign_b;  // (arc idx, raw idx)
  std::map<int, int> point_raw;

  std::set<int> todo;
  for (const auto& [p, e] : enda) {
    (void)e;
    todo.insert(p);
  }
  while (!todo.empty()) {
    const int start = *todo.begin();
    const int raw_idx = static_cast<int>(raw.size());
    Raw r{start, 0, -1, -1};
    int p = start;
    do {
      todo.erase(p);
      point_raw[p] = raw_idx;
      auto [ai, q] = enda.at(p);
      if (r.rep_a_arc < 0) r.rep_a_arc = ai;
      arc_assign_a.emplace_back(ai, raw_idx);
      todo.erase(q);
      point_raw[q] = raw_idx;
      auto [bi, s] = endb.at(q);
      arc_assign_b.emplace_back(bi, raw_idx);
      p = s;
    } while (p != start);
    raw.push_back(r);
  }
  for (std::size_t i = 0; i < A.circles.size(); ++i)
    raw.push_back({A.circles[i].pts[0], 1, static_cast<int>(i), -1});
  for (std::size_t i = 0; i < B.circles.size(); ++i)
    raw.push_back({B.circles[i].pts[0], 2, static_cast<int>(i), -1});

  std::vector<int> order(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return std::pair{raw[x].key, raw[x].side} < std::pair{raw[y].key, raw[y].side};
  });
  std::vector<int> pos(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

  PairCycles cy;
  cy.count = static_cast<int>(raw.size());
  if (cy.count > 31) throw malformed_complex("scan: more than 31 overlay cycles");
  cy.side.resize(cy.count);
  cy.circle_idx.assign(cy.count, -1);
  cy.rep_a_arc.assign(cy.count, -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    cy.side[pos[i]] = raw[i].side;
    cy.circle_idx[pos[i]] = raw[i].circle_idx;
    cy.rep_a_arc[pos[i]] = raw[i].rep_a_arc;
  }
  cy.of_a_arc.assign(A.m.size(), -1);
  cy.of_b_arc.assign(B.m.size(), -1);
  for (auto [ai, ri] : arc_assign_a) cy.of_a_arc[ai] = pos[ri];
  for (auto [bi, ri] : arc_assign_b) cy.of_b_arc[bi] = pos[ri];
  // Circle raw indices follow the arc cycles in construction order.
  cy.of_a_circle.assign(A.circles.size(), -1);
  cy.of_b_circle.assign(B.circles.size(), -1);
  {
    int base = 0;
    for (const Raw& r : raw) base += r.side == 0;
    for (std::size_t i = 0; i < A.circles.size(); ++i)
      cy.of_a_circle[i] = pos[base + static_cast<int>(i)];
    base += static_cast<int>(A.circles.size());
    for (std::size_t i = 0; i < B.circles.size(); ++i)
      cy.of_b_circle[i] = pos[base + static_cast<int>(i)];
  }
  for (const auto& [p, ri] : point_raw) cy.cycle_at_point[p] = pos[ri];
  return cy;
}

// Normal-form evaluation of a glued family of disk sheets: union-find the
// sheets, compute Euler characteristic and dots per component, kill positive
// genus and double dots, evaluate closed spheres, and expand each surviving
// component into its dot patterns.
bool evaluate_gluing(int n_sheets, const std::vector<int>& dots,
                     const std::vector<std::array<int, 3>>& glues,  // u, v, chi cost
                     const std::vector<int>& owner,                 // out cycle -> sheet
                     Morphism& accum) {
  DisjointSets ds(n_sheets);
  std::vector<int> chi_cost(n_sheets, 0);
  for (const auto& g : glues) ds.unite(g[0], g[1]);
  for (const auto& g : glues) chi_cost[ds.find(g[0])] += g[2];

  std::vector<int> comp_sheets(n_sheets, 0), comp_dots(n_sheets, 0);
  for (int s = 0; s < n_sheets; ++s) {
    comp_sheets[ds.find(s)] += 1;
    comp_dots[ds.find(s)] += dots[s];
  }
  const int n_out = static_cast<int>(owner.size());
  std::vector<std::vector<int>> comp_cycles(n_sheets);
  for (int c = 0; c < n_out; ++c) comp_cycles[ds.find(owner[c])].push_back(c);

  std::vector<std::vector<Mask>> options;
  for (int root = 0; root < n_sheets; ++root) {
    if (ds.find(root) != root) continue;
    const int b = static_cast<int>(comp_cycles[root].size());
    const int chi = comp_sheets[root] - chi_cost[root];
    const int genus2 = 2 - b - chi;
    if (genus2 < 0 || genus2 % 2 != 0)
      throw malformed_complex("scan: non-orientable gluing bookkeeping");
    if (genus2 > 0) return false;
    const int dd = comp_dots[root];
    if (b == 0) {
      if (dd != 1) return false;  // undotted or doubly dotted sphere
      continue;                   // dotted sphere contributes a unit factor
    }
    if (dd > 1) return false;
    Mask all = 0;
    for (int c : comp_cycles[root]) all |= Mask{1} << c;
    if (dd == 1) {
      options.push_back({all});
    } else {
      std::vector<Mask> opts;
      for (int c : comp_cycles[root]) opts.push_back(all ^ (Mask{1} << c));
      options.push_back(std::move(opts));
    }
  }
  std::vector<Mask> result{0};
  for (const auto& opts : options) {
    std::vector<Mask> next;
    next.reserve(result.size() * opts.size());
    for (Mask m : result)
      for (Mask o : opts) next.push_back(m | o);
    result.swap(next);
  }
  accum.insert(accum.end(), result.begin(), result.end());
  return true;
}

Morphism compose(const Obj& A, const Obj& B, const Obj& C, const Morphism& f,
                 const Morphism& g) {
  const PairCycles ab = cycles_of(A, B);
  const PairCycles bc = cycles_of(B, C);
  const PairCycles ac = cycles_of(A, C);
  const int nf = ab.count;
  const int n_sheets = nf + bc.count;

  std::vector<std::array<int, 3>> glues;
  for (std::size_t i = 0; i < B.m.size(); ++i)
    glues.push_back({ab.of_b_arc[i], nf + bc.of_a_arc[i], 1});
  for (std::size_t i = 0; i < B.circles.size(); ++i)
    glues.push_back({ab.of_b_circle[i], nf + bc.of_a_circle[i], 0});

  std::vector<int> owner(ac.count);
  for (int c = 0; c < ac.count; ++c) {
    if (ac.side[c] == 0)
      owner[c] = ab.of_a_arc[ac.rep_a_arc[c]];
    else if (ac.side[c] == 1)
      owner[c] = ab.of_a_circle[ac.circle_idx[c]];
    else
      owner[c] = nf + bc.of_b_circle[ac.circle_idx[c]];
  }

  Morphism result;
  std::vector<int> dots(n_sheets, 0);
  for (Mask mf : f) {
    for (Mask mg : g) {
      std::fill(dots.begin(), dots.end(), 0);
      for (int c = 0; c < nf; ++c) dots[c] = (mf >> c) & 1;
      for (int c = 0; c < bc.count; ++c) dots[nf + c] = (mg >> c) & 1;
      evaluate_gluing(n_sheets, dots, glues, owner, result);
    }
  }
  canonicalize(result);
  return result;
}

// Same-matching morphisms form a nilpotent-plus-identity algebra where basic
// cobordisms compose by disjointness: masks or together, double dots vanish.
Morphism invert_identity_plus_nilpotent(const Morphism& f) {
  Morphism d;
  for (Mask m : f)
    if (m != 0) d.push_back(m);
  Morphism inv{0};
  for (;;) {
    Morphism next{0};
    for (Mask dm : d)
      for (Mask im : inv)
        if (!(dm & im)) next.push_back(dm | im);
    canonicalize(next);
    if (next == inv) return inv;
    inv.swap(next);
  }
}

// Result of fusing a matching with one crossing's local smoothing arcs.
// Pieces identify where each new arc or circle came from: (0, old arc index)
// or (1, local arc index).
struct Fused {
  Matching m;
  std::vector<Circle> circles;
  std::vector<std::vector<std::pair<int, int>>> arc_pieces, circle_pieces;
};

struct LocalArcs {
  // slot pairs of the crossing for this smoothing, with edge labels
  std::array<std::array<int, 2>, 2> slot;  // local arc -> {slot, slot}
  std::array<std::array<int, 2>, 2> edge;  // local arc -> {edge, edge}
};

LocalArcs local_arcs(const std::array<int, 4>& e, int r) {
  LocalArcs la;
  if (r == 0) {
    la.slot = {{{0, 1}, {2, 3}}};
  } else {
    la.slot = {{{0, 3}, {1, 2}}};
  }
  for (int l = 0; l < 2; ++l)
    for (int end = 0; end < 2; ++end) la.edge[l][end] = e[la.slot[l][end]];
  return la;
}

Fused fuse(const Matching& m, const std::array<int, 4>& e, int r,
           const std::map<int, int>& open_arc /* open point -> arc idx */) {
  const LocalArcs la = local_arcs(e, r);

  // Segment ends: (segment id, end). Segments 0..|m|-1 are old arcs,
  // |m| and |m|+1 the local arcs.
  const int n_old = static_cast<int>(m.size());
  auto seg_point = [&](int seg, int end) {
    return seg < n_old ? (end == 0 ? m[seg].a : m[seg].b) : la.edge[seg - n_old][end];
  };

  // Joints at internal points: for each point, the segment ends meeting it.
  std::map<int, std::vector<std::pair<int, int>>> at_point;
  std::map<int, int> tuple_count;
  for (int s = 0; s < 4; ++s) ++tuple_count[e[s]];
  for (int l = 0; l < 2; ++l)
    for (int end = 0; end < 2; ++end) {
      const int x = la.edge[l][end];
      if (tuple_count[x] == 2 || open_arc.count(x)) at_point[x].push_back({n_old + l, end});
    }
  for (int i = 0; i < n_old; ++i)
    for (int end = 0; end < 2; ++end) {
      const int x = seg_point(i, end);
      if (tuple_count.count(x) && tuple_count.at(x) > 0 && at_point.count(x))
        at_point[x].push_back({i, end});
    }
  for (auto& [x, ends] : at_point) {
    if (ends.size() != 2)
      throw malformed_complex("scan: fusion point " + std::to_string(x) + " has " +
                              std::to_string(ends.size()) + " ends");
    (void)x;
  }

  // joined[(seg,end)] = the (seg,end) glued to it, or absent if open.
  std::map<std::pair<int, int>, std::pair<int, int>> joined;
  for (const auto& [x, ends] : at_point) {
    (void)x;
    joined[ends[0]] = ends[1];
    joined[ends[1]] = ends[0];
  }

  Fused out;
  std::vector<char> visited(n_old + 2, 0);
  // Open paths first: start from ends that are not joined.
  for (int seg = 0; seg < n_old + 2; ++seg) {
    for (int end = 0; end < 2; ++end) {
      if (visited[seg] || joined.count({seg, end})) continue;
      // Walk from this open end.
      std::vector<std::pair<int, int>> pieces;
      int cs = seg, ce = end;
      const int p0 = seg_point(cs, ce);
      int p1;
      for (;;) {
        visited[cs] = 1;
        pieces.push_back({cs < n_old ? 0 : 1, cs < n_old ? cs : cs - n_old});
        const std::pair<int, int> far{cs, 1 - ce};
        auto it = joined.find(far);
        if (it == joined.end()) {
          p1 = seg_point(cs, 1 - ce);
          break;
        }
        cs = it->second.first;
        ce = it->second.second;
      }
      out.m.push_back(make_arc(p0, p1));
      out.arc_pieces.push_back(std::move(pieces));
    }
  }
  // Remaining segments close into circles.
  for (int seg = 0; seg < n_old + 2; ++seg) {
    if (visited[seg]) continue;
    std::vector<std::pair<int, int>> pieces;
    std::vector<int> pts;
    int cs = seg, ce = 0;
    do {
      visited[cs] = 1;
      pieces.push_back({cs < n_old ? 0 : 1, cs < n_old ? cs : cs - n_old});
      pts.push_back(seg_point(cs, 1 - ce));
      const auto nxt = joined.at({cs, 1 - ce});
      cs = nxt.first;
      ce = nxt.second;
    } while (cs != seg);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    out.circles.push_back({std::move(pts)});
    out.circle_pieces.push_back(std::move(pieces));
  }

  // Keep matching sorted with pieces in tow.
  std::vector<int> order(out.m.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return out.m[x].a < out.m[y].a; });
  Matching sm;
  std::vector<std::vector<std::pair<int, int>>> sp;
  for (int i : order) {
    sm.push_back(out.m[i]);
    sp.push_back(std::move(out.arc_pieces[i]));
  }
  out.m.swap(sm);
  out.arc_pieces.swap(sp);
  return out;
}

struct Scanner {
  const Diagram& d;
  std::vector<Obj> objs;
  std::vector<std::map<int, Morphism>> out;
  std::vector<std::set<int>> in;
  std::set<int> open_points;

  explicit Scanner(const Diagram& diagram) : d(diagram) {
    objs.push_back(Obj{});
    out.emplace_back();
    in.emplace_back();
  }

  void set_entry(int s, int t, Morphism m) {
    if (m.empty()) return;
    out[s].emplace(t, std::move(m));
    in[t].insert(s);
  }

  void erase_entry(int s, int t) {
    out[s].erase(t);
    in[t].erase(s);
  }

  void run() {
    for (std::size_t k = 0; k < d.crossing_count(); ++k) {
      attach(static_cast<int>(k));
      deloop_all();
      cancel_sweep();
      compact();
    }
    if (!open_points.empty()) throw malformed_complex("scan: open points remain");
  }

  void attach(int k);
  void deloop_all();
  void cancel_sweep();
  void compact();
};

void Scanner::attach(int k) {
  const std::array<int, 4>& e = d.crossings[k].e;
  std::map<int, int> tuple_count;
  for (int s = 0; s < 4; ++s) ++tuple_count[e[s]];

  const int n_old = static_cast<int>(objs.size());
  std::vector<Fused> fused[2];
  fused[0].reserve(n_old);
  fused[1].reserve(n_old);

  // Per-object fusion; open_arc maps open points to arc indices per object.
  std::vector<std::map<int, int>> open_arc(n_old);
  for (int o = 0; o < n_old; ++o) {
    for (std::size_t i = 0; i < objs[o].m.size(); ++i) {
      open_arc[o][objs[o].m[i].a] = static_cast<int>(i);
      open_arc[o][objs[o].m[i].b] = static_cast<int>(i);
    }
    for (int r = 0; r < 2; ++r) fused[r].push_back(fuse(objs[o].m, e, r, open_arc[o]));
  }

  std::vector<Obj> nobjs(2 * n_old);
  for (int o = 0; o < n_old; ++o) {
    for (int r = 0; r < 2; ++r) {
      Obj& n = nobjs[2 * o + r];
      n.iw = objs[o].iw + r;
      n.jq = objs[o].jq + r;
      n.m = fused[r][o].m;
      for (const auto& c : fused[r][o].circles) n.circles.push_back(c);
      n.alive = true;
    }
  }

  // piece -> sheet maps; local arcs are shared cylinder sheets.
  auto piece_sheet = [](const PairCycles& cy, bool a_side, int n_arc_cycles,
                        const std::pair<int, int>& piece) {
    if (piece.first == 1) return n_arc_cycles + piece.second;
    return a_side ? cy.of_a_arc[piece.second] : cy.of_b_arc[piece.second];
  };

  std::vector<std::map<int, Morphism>> nout(2 * n_old);
  std::vector<std::set<int>> nin(2 * n_old);

  // Horizontal entries: old f: O -> P extends over the new local arcs.
  for (int o = 0; o < n_old; ++o) {
    for (const auto& [p, f] : out[o]) {
      const PairCycles cy = cycles_of(objs[o], objs[p]);
      const int ncyl = cy.count;  // sheets: old cycles, then 2 cylinders
      for (int r = 0; r < 2; ++r) {
        const LocalArcs la = local_arcs(e, r);
        std::vector<std::array<int, 3>> glues;
        for (const auto& [x, cnt] : tuple_count) {
          if (cnt == 2) {
            // both slots here: the two local ends meet each other
            std::vector<int> cyls;
            for (int l = 0; l < 2; ++l)
              for (int end = 0; end < 2; ++end)
                if (la.edge[l][end] == x) cyls.push_back(ncyl + l);
            if (cyls.size() != 2) throw malformed_complex("scan: kink ends mismatch");
            glues.push_back({cyls[0], cyls[1], 1});
          } else if (open_points.count(x)) {
            int cyl = -1;
            for (int l = 0; l < 2 && cyl < 0; ++l)
              for (int end = 0; end < 2; ++end)
                if (la.edge[l][end] == x) cyl = ncyl + l;
            glues.push_back({cy.cycle_at_point.at(x), cyl, 1});
          }
        }
        const Obj& A = nobjs[2 * o + r];
        const Obj& B = nobjs[2 * p + r];
        const PairCycles ncy = cycles_of(A, B);
        std::vector<int> owner(ncy.count);
        for (int c = 0; c < ncy.count; ++c) {
          if (ncy.side[c] == 0)
            owner[c] = piece_sheet(cy, true, ncyl, fused[r][o].arc_pieces[ncy.rep_a_arc[c]][0]);
          else if (ncy.side[c] == 1)
            owner[c] = piece_sheet(cy, true, ncyl, fused[r][o].circle_pieces[ncy.circle_idx[c]][0]);
          else
            owner[c] = piece_sheet(cy, false, ncyl, fused[r][p].circle_pieces[ncy.circle_idx[c]][0]);
        }
        Morphism result;
        std::vector<int> dots(ncyl + 2, 0);
        for (Mask mf : f) {
          std::fill(dots.begin(), dots.end(), 0);
          for (int c = 0; c < cy.count; ++c) dots[c] = (mf >> c) & 1;
          evaluate_gluing(ncyl + 2, dots, glues, owner, result);
        }
        canonicalize(result);
        if (!result.empty()) {
          nout[2 * o + r][2 * p + r] = std::move(result);
          nin[2 * p + r].insert(2 * o + r);
        }
      }
    }
  }

  // Saddle entries O_0 -> O_1: one saddle sheet plus a cylinder per old arc.
  for (int o = 0; o < n_old; ++o) {
    const int n_arcs = static_cast<int>(objs[o].m.size());
    const int saddle = n_arcs;
    std::vector<std::array<int, 3>> glues;
    for (const auto& [x, cnt] : tuple_count) {
      if (cnt == 2)
        glues.push_back({saddle, saddle, 1});
      else if (open_points.count(x))
        glues.push_back({open_arc[o].at(x), saddle, 1});
    }
    const Obj& A = nobjs[2 * o];
    const Obj& B = nobjs[2 * o + 1];
    const PairCycles ncy = cycles_of(A, B);
    auto sheet_of = [&](bool a_side, const std::pair<int, int>& piece) {
      (void)a_side;
      return piece.first == 1 ? saddle : piece.second;
    };
    std::vector<int> owner(ncy.count);
    for (int c = 0; c < ncy.count; ++c) {
      if (ncy.side[c] == 0)
        owner[c] = sheet_of(true, fused[0][o].arc_pieces[ncy.rep_a_arc[c]][0]);
      else if (ncy.side[c] == 1)
        owner[c] = sheet_of(true, fused[0][o].circle_pieces[ncy.circle_idx[c]][0]);
      else
        owner[c] = sheet_of(false, fused[1][o].circle_pieces[ncy.circle_idx[c]][0]);
    }
    Morphism result;
    std::vector<int> dots(n_arcs + 1, 0);
    evaluate_gluing(n_arcs + 1, dots, glues, owner, result);
    canonicalize(result);
    if (!result.empty()) {
      nout[2 * o][2 * o + 1] = std::move(result);
      nin[2 * o + 1].insert(2 * o);
    }
  }

  objs.swap(nobjs);
  out.swap(nout);
  in.swap(nin);

  // Update the open boundary.
  for (const auto& [x, cnt] : tuple_count) {
    if (cnt == 2) continue;
    if (open_points.count(x))
      open_points.erase(x);
    else
      open_points.insert(x);
  }
}

void Scanner::deloop_all() {
  std::vector<int> queue;
  for (std::size_t o = 0; o < objs.size(); ++o)
    if (objs[o].alive && !objs[o].circles.empty()) queue.push_back(static_cast<int>(o));

  while (!queue.empty()) {
    const int a = queue.back();
    queue.pop_back();
    if (!objs[a].alive || objs[a].circles.empty()) continue;

    const int circle = static_cast<int>(objs[a].circles.size()) - 1;

    const int plus = static_cast<int>(objs.size());
    const int minus = plus + 1;
    Obj base = objs[a];
    base.circles.pop_back();
    Obj op = base, om = base;
    op.jq += 1;
    om.jq -= 1;
    objs.push_back(std::move(op));
    objs.push_back(std::move(om));
    out.emplace_back();
    out.emplace_back();
    in.emplace_back();
    in.emplace_back();

    auto drop_bit = [](Mask m, int b) {
      return (m & ((Mask{1} << b) - 1)) | ((m >> (b + 1)) << b);
    };

    // Incoming: the plus summand keeps undotted caps, the minus the dotted.
    for (int x : std::vector<int>(in[a].begin(), in[a].end())) {
      const PairCycles cy = cycles_of(objs[x], objs[a]);
      int bit = -1;
      for (int c = 0; c < cy.count; ++c)
        if (cy.side[c] == 2 && cy.circle_idx[c] == circle) bit = c;
      Morphism fp, fm;
      for (Mask m : out[x].at(a))
        ((m >> bit) & 1 ? fm : fp).push_back(drop_bit(m, bit));
      canonicalize(fp);
      canonicalize(fm);
      erase_entry(x, a);
      set_entry(x, plus, std::move(fp));
      set_entry(x, minus, std::move(fm));
    }
    // Outgoing: the plus summand keeps dotted cups, the minus the plain.
    for (const auto& [y, g] : std::map<int, Morphism>(out[a])) {
      const PairCycles cy = cycles_of(objs[a], objs[y]);
      int bit = -1;
      for (int c = 0; c < cy.count; ++c)
        if (cy.side[c] == 1 && cy.circle_idx[c] == circle) bit = c;
      Morphism gp, gm;
      for (Mask m : g) ((m >> bit) & 1 ? gp : gm).push_back(drop_bit(m, bit));
      canonicalize(gp);
      canonicalize(gm);
      erase_entry(a, y);
      set_entry(plus, y, std::move(gp));
      set_entry(minus, y, std::move(gm));
    }
    objs[a].alive = false;
    if (!objs[plus].circles.empty()) queue.push_back(plus);
    if (!objs[minus].circles.empty()) queue.push_back(minus);
  }
}

void Scanner::cancel_sweep() {
  std::vector<std::pair<int, int>> work;
  for (std::size_t s = 0; s < objs.size(); ++s)
    if (objs[s].alive)
      for (const auto& [t, m] : out[s]) {
        (void)m;
        work.emplace_back(static_cast<int>(s), t);
      }

  while (!work.empty()) {
    auto [s, t] = work.back();
    work.pop_back();
    if (!objs[s].alive || !objs[t].alive) continue;
    auto fit = out[s].find(t);
    if (fit == out[s].end()) continue;
    const Morphism& f = fit->second;
    if (!(objs[s].m == objs[t].m) || !objs[s].circles.empty() || !objs[t].circles.empty())
      continue;
    if (!std::binary_search(f.begin(), f.end(), Mask{0})) continue;

    const Morphism finv = invert_identity_plus_nilpotent(f);

    std::vector<std::pair<int, Morphism>> deltas, gammas;
    for (int x : in[t])
      if (x != s) deltas.emplace_back(x, out[x].at(t));
    for (const auto& [y, g] : out[s])
      if (y != t) gammas.emplace_back(y, g);

    for (const auto& [x, delta] : deltas) {
      const Morphism h = compose(objs[x], objs[t], objs[s], delta, finv);
      if (h.empty()) continue;
      for (const auto& [y, gamma] : gammas) {
        Morphism upd = compose(objs[x], objs[s], objs[y], h, gamma);
        if (upd.empty()) continue;
        auto it = out[x].find(y);
        if (it == out[x].end()) {
          set_entry(x, y, std::move(upd));
        } else {
          xor_into(it->second, upd);
          if (it->second.empty()) erase_entry(x, y);
        }
        if (out[x].count(y)) work.emplace_back(x, y);
      }
    }

    // Detach s and t.
    for (int x : std::vector<int>(in[s].begin(), in[s].end())) erase_entry(x, s);
    for (int x : std::vector<int>(in[t].begin(), in[t].end())) erase_entry(x, t);
    for (const auto& [y, g] : std::map<int, Morphism>(out[s])) {
      (void)g;
      erase_entry(s, y);
    }
    for (const auto& [y, g] : std::map<int, Morphism>(out[t])) {
      (void)g;
      erase_entry(t, y);
    }
    objs[s].alive = false;
    objs[t].alive = false;
  }
}

void Scanner::compact() {
  std::vector<int> remap(objs.size(), -1);
  std::vector<Obj> nobjs;
  for (std::size_t o = 0; o < objs.size(); ++o) {
    if (!objs[o].alive) continue;
    remap[o] = static_cast<int>(nobjs.size());
    nobjs.push_back(std::move(objs[o]));
  }
  std::vector<std::map<int, Morphism>> nout(nobjs.size());
  std::vector<std::set<int>> nin(nobjs.size());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    if (remap[o] < 0) continue;
    for (auto& [t, m] : out[o]) {
      if (remap[t] < 0) throw malformed_complex("scan: entry into a dead object");
      nout[remap[o]][remap[t]] = std::move(m);
      nin[remap[t]].insert(remap[o]);
    }
  }
  objs.swap(nobjs);
  out.swap(nout);
  in.swap(nin);
}

RankTable deconvolve_reduced(const RankTable& u) {
  std::map<int, std::map<int, long long>> byi;
  for (const auto& [ij, dim] : u.entries) {
    if (ij.j % 2 == 0)
      throw malformed_complex("unreduced table has an even quantum grading");
    byi[ij.i][ij.j] = dim;
  }
  RankTable r;
  r.reduced = true;
  for (const auto& [i, row] : byi) {
    const int jmax = row.rbegin()->first, jmin = row.begin()->first;
    std::map<int, long long> red;
    for (int j = jmax - 1; j >= jmin + 1; j -= 2) {
      auto at = [&](const std::map<int, long long>& m, int key) {
        auto it = m.find(key);
        return it == m.end() ? 0LL : it->second;
      };
      const long long v = at(row, j + 1) - at(red, j + 2);
      if (v < 0) throw malformed_complex("reduced deconvolution went negative");
      if (v > 0) red[j] = v;
    }
    // Consistency: the reduced row must reproduce the unreduced one.
    for (int j = jmin - 1; j <= jmax + 1; ++j) {
      auto at = [&](const std::map<int, long long>& m, int key) {
        auto it = m.find(key);
        return it == m.end() ? 0LL : it->second;
      };
      if (at(row, j) != at(red, j - 1) + at(red, j + 1))
        throw malformed_complex("reduced deconvolution is inconsistent");
    }
    for (const auto& [j, dim] : red) {
      r.entries[{i, j}] = dim;
      r.total += dim;
    }
  }
  return r;
}

}  // namespace

RankTable homology_fast(const Diagram& d, bool reduced) {
  if (reduced && d.component_count != 1)
    throw validation_error("reduced homology requires a single component");

  RankTable u;
  u.reduced = false;
  if (d.is_unknot_diagram()) {
    if (reduced) {
      RankTable r;
      r.reduced = true;
      r.entries[{0, 0}] = 1;
      r.total = 1;
      return r;
    }
    u.entries[{0, -1}] = 1;
    u.entries[{0, 1}] = 1;
    u.total = 2;
    return u;
  }

  Scanner scanner(d);
  scanner.run();

  const int np = d.n_plus(), nm = d.n_minus();
  for (const auto& obj : scanner.objs) {
    if (!obj.alive) continue;
    if (!obj.m.empty() || !obj.circles.empty())
      throw malformed_complex("scan: leftover boundary structure");
    const Bigrading ij{obj.iw - nm, obj.jq + np - 2 * nm};
    u.entries[ij] += 1;
    u.total += 1;
  }
  for (std::size_t s = 0; s < scanner.out.size(); ++s)
    if (scanner.objs[s].alive && !scanner.out[s].empty())
      throw malformed_complex("scan: differential survived final cancellation");

  return reduced ? deconvolve_reduced(u) : u;
}

}  // namespace khdet
