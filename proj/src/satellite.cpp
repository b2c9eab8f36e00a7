#include "khdet/satellite.hpp"

#include <cstdlib>
#include <optional>

#include "khdet/proto.hpp"

namespace khdet {

int framing_twists(const Diagram& companion) { return -writhe(companion); }

namespace {

struct PortPair {
  ProtoPort l, r;  // left/right of the band, looking along its travel
};

// The four satellite crossings replacing one companion crossing sit on a
// 2x2 grid: the doubled under-strand runs south-north through columns west
// (copy 1) and east (copy 2), the doubled over-strand west-east through rows
// north (copy 1) and south (copy 2). Ports are CCW (S, E, N, W), so slots
// {0,2} are the under-strand on every sub-crossing.
struct CrossingGadget {
  int c11, c12, c21, c22;  // cXY: under-copy column X, over-copy row Y
};

CrossingGadget make_crossing_gadget(ProtoDiagram& proto) {
  CrossingGadget g;
  g.c11 = proto.add_crossing();
  g.c12 = proto.add_crossing();
  g.c21 = proto.add_crossing();
  g.c22 = proto.add_crossing();
  proto.connect({g.c21, 2}, {g.c11, 0});  // under copy 1 between the over rows
  proto.connect({g.c22, 2}, {g.c12, 0});  // under copy 2
  proto.connect({g.c11, 1}, {g.c12, 3});  // over copy 1 between the columns
  proto.connect({g.c21, 1}, {g.c22, 3});  // over copy 2
  return g;
}

// Stub pair of a gadget side for a given companion edge occurrence,
// with the left/right tags fixed by the strand's travel direction there.
PortPair gadget_stubs(const CrossingGadget& g, int pos, bool incoming) {
  switch (pos) {
    case 0:  // south side; the under-strand enters northward
      return {{g.c21, 0}, {g.c22, 0}};
    case 2:  // north side; the under-strand leaves northward
      return {{g.c11, 2}, {g.c12, 2}};
    case 3:  // west side; eastward travel when incoming
      if (incoming) return {{g.c11, 3}, {g.c21, 3}};
      return {{g.c21, 3}, {g.c11, 3}};
    default:  // east side; eastward travel when outgoing
      if (!incoming) return {{g.c12, 1}, {g.c22, 1}};
      return {{g.c22, 1}, {g.c12, 1}};
  }
}

// One half twist of the band, drawn for eastward travel: ports at the four
// diagonal corners, under-strand on slots {0,2}.
struct TwistPorts {
  ProtoPort nw, sw, ne, se;
};

TwistPorts add_band_twist(ProtoDiagram& proto, int handedness) {
  const int k = proto.add_crossing();
  if (handedness < 0) {
    // over-strand SW -> NE; CCW slots (NW, SW, SE, NE)
    return {{k, 0}, {k, 1}, {k, 3}, {k, 2}};
  }
  // over-strand NW -> SE; CCW slots (SW, SE, NE, NW)
  return {{k, 3}, {k, 0}, {k, 2}, {k, 1}};
}

// One clasp crossing, drawn for southward travel through the closure region.
TwistPorts add_clasp_twist(ProtoDiagram& proto, int handedness) {
  const int k = proto.add_crossing();
  if (handedness > 0) {
    // over-strand NW -> SE; CCW slots (NE, NW, SW, SE)
    return {{k, 1}, {k, 2}, {k, 0}, {k, 3}};
  }
  // over-strand NE -> SW; CCW slots (NW, SW, SE, NE)
  return {{k, 0}, {k, 1}, {k, 3}, {k, 2}};
}

}  // namespace

Diagram build_satellite(const Diagram& companion, const PatternSpec& pattern) {
  const int c = static_cast<int>(companion.crossing_count());
  const int twists = framing_twists(companion);
  const int n = pattern.half_twists;
  if (c == 0 && twists == 0 && n == 0) return unknot();

  ProtoDiagram proto;
  std::vector<CrossingGadget> gadgets;
  gadgets.reserve(c);
  for (int k = 0; k < c; ++k) gadgets.push_back(make_crossing_gadget(proto));

  // Band pieces along the companion's basepoint edge: the framing twists,
  // then the clasp. `pending` is the band end waiting to be extended;
  // `first` records the loose start when the companion is the bare unknot.
  std::optional<PortPair> pending, first;
  auto feed = [&](PortPair in) {
    if (pending) {
      proto.connect(pending->l, in.l);
      proto.connect(pending->r, in.r);
    } else {
      first = in;
    }
  };

  auto slots = edge_slots(companion);
  if (c > 0) {
    for (int e = 1; e <= companion.edge_count; ++e) {
      PortPair tail{}, head{};
      for (const EdgeSlot& s : slots[e]) {
        const bool incoming = slot_incoming(companion, s.crossing, s.pos);
        PortPair p = gadget_stubs(gadgets[s.crossing], s.pos, incoming);
        (incoming ? head : tail) = p;
      }
      if (e != companion.basepoint_edge) {
        proto.connect(tail.l, head.l);
        proto.connect(tail.r, head.r);
        continue;
      }
      pending = tail;
      for (int j = 0; j < 2 * std::abs(twists); ++j) {
        TwistPorts t = add_band_twist(proto, twists > 0 ? +1 : -1);
        feed({t.nw, t.sw});
        pending = PortPair{t.ne, t.se};
      }
      if (n == 0) {
        // Unknot pattern: both band ends cap off.
        proto.connect(pending->l, pending->r);
        proto.connect(head.l, head.r);
      } else {
        PortPair west = *pending, east = head;
        ProtoPort prev_w{}, prev_e{};
        for (int j = 0; j < std::abs(n); ++j) {
          TwistPorts t = add_clasp_twist(proto, n > 0 ? +1 : -1);
          if (j == 0) {
            proto.connect(west.l, t.nw);
            proto.connect(east.l, t.ne);
          } else {
            proto.connect(prev_w, t.nw);
            proto.connect(prev_e, t.ne);
          }
          prev_w = t.sw;
          prev_e = t.se;
        }
        proto.connect(prev_w, west.r);
        proto.connect(prev_e, east.r);
      }
      pending.reset();
    }
  } else {
    // Bare unknot companion: writhe 0, so no framing twists, and n != 0 here.
    // The clasp's departing (east) strands wrap around the torus and arrive
    // as the west strands: top-east to top-west, bottom-east to bottom-west.
    (void)feed;
    ProtoPort top_w{}, top_e{}, prev_w{}, prev_e{};
    for (int j = 0; j < std::abs(n); ++j) {
      TwistPorts t = add_clasp_twist(proto, n > 0 ? +1 : -1);
      if (j == 0) {
        top_w = t.nw;
        top_e = t.ne;
      } else {
        proto.connect(prev_w, t.nw);
        proto.connect(prev_e, t.ne);
      }
      prev_w = t.sw;
      prev_e = t.se;
    }
    proto.connect(top_e, top_w);
    proto.connect(prev_e, prev_w);
  }

  Diagram out = proto.to_diagram();
  const std::size_t expect = static_cast<std::size_t>(4 * c + 2 * std::abs(twists) + std::abs(n));
  if (out.crossing_count() != expect)
    throw validation_error("satellite crossing count mismatch");
  if (out.component_count != 1)
    throw validation_error("satellite closed into a link; pattern wiring is inconsistent");
  return out;
}

}  // namespace khdet
