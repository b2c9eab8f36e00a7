#include "khdet/corpus.hpp"

#include <istream>
#include <sstream>

#include "khdet/gen.hpp"

namespace khdet {

namespace {

CorpusEntry entry(const std::string& name, const Diagram& d, long long rank, long long det) {
  return {name, serialize(d), rank, det};
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> v;

  // Unknot diagrams: the token, both kinks, a double kink, and R2 padding.
  Diagram kink_a = braid_closure({1}, 2);
  Diagram kink_pos = writhe(kink_a) == 1 ? kink_a : braid_closure({-1}, 2);
  Diagram kink_neg = mirror(kink_pos);
  v.push_back(entry("U", unknot(), 1, 1));
  v.push_back(entry("unknot_kink_pos", kink_pos, 1, 1));
  v.push_back(entry("unknot_kink_neg", kink_neg, 1, 1));
  v.push_back(entry("unknot_kinks2", braid_closure({1, 2}, 3), 1, 1));
  v.push_back(entry("unknot_r2", braid_closure({1, -1, 1}, 2), 1, 1));

  // The ambient-isotopic trefoil family; the first is the standard table PD.
  v.push_back({"3_1", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)] base=1", 3, 3});
  v.push_back(entry("3_1_mirror", mirror(parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")), 3, 3));
  v.push_back(entry("3_1_braid", braid_closure({1, 1, 1}, 2), 3, 3));
  v.push_back(entry("3_1_kinked", braid_closure({1, 1, 1, 2}, 3), 3, 3));

  v.push_back(entry("4_1", rational_knot({2, 2}), 5, 5));
  v.push_back(entry("4_1_braid", braid_closure({1, -2, 1, -2}, 3), 5, 5));

  // Rational knots through nine crossings; alternating, so the reduced rank
  // equals the determinant, the numerator of the twist fraction.
  v.push_back(entry("5_1", rational_knot({5}), 5, 5));
  v.push_back(entry("5_2", rational_knot({3, 2}), 7, 7));
  v.push_back(entry("6_1", rational_knot({4, 2}), 9, 9));
  v.push_back(entry("6_2", rational_knot({3, 1, 2}), 11, 11));
  v.push_back(entry("6_3", rational_knot({2, 1, 1, 2}), 13, 13));
  v.push_back(entry("7_1", rational_knot({7}), 7, 7));
  v.push_back(entry("7_2", rational_knot({5, 2}), 11, 11));
  v.push_back(entry("7_3", rational_knot({4, 3}), 13, 13));
  v.push_back(entry("7_4", rational_knot({3, 1, 3}), 15, 15));
  v.push_back(entry("7_5", rational_knot({3, 2, 2}), 17, 17));
  v.push_back(entry("7_6", rational_knot({2, 2, 1, 2}), 19, 19));
  v.push_back(entry("7_7", rational_knot({2, 1, 1, 1, 2}), 21, 21));
  v.push_back(entry("8_1", rational_knot({6, 2}), 13, 13));
  v.push_back(entry("8_2", rational_knot({5, 1, 2}), 17, 17));
  v.push_back(entry("8_3", rational_knot({4, 4}), 17, 17));
  v.push_back(entry("8_4", rational_knot({4, 1, 3}), 19, 19));
  v.push_back(entry("9_1", rational_knot({9}), 9, 9));
  v.push_back(entry("9_2", rational_knot({7, 2}), 15, 15));

  // Torus knots and the star of the show, as a pretzel and as a braid.
  v.push_back(entry("8_19", braid_closure({1, 2, 1, 2, 1, 2, 1, 2}, 3), 5, 3));
  v.push_back(entry("10_124", pretzel({-2, 3, 5}), 7, 1));
  v.push_back(entry("10_124_braid", braid_closure({1, 2, 1, 2, 1, 2, 1, 2, 1, 2}, 3), 7, 1));

  return v;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = build_corpus();
  return corpus;
}

const CorpusEntry* find_entry(const std::string& name) {
  for (const CorpusEntry& e : builtin_corpus())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<CorpusEntry> parse_corpus_file(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2)
      throw parse_error("corpus line " + std::to_string(lineno) + ": expected name<TAB>pd", 0);
    CorpusEntry e;
    e.name = fields[0];
    e.pd = fields[1];
    if (fields.size() > 2 && !fields[2].empty()) e.expected_rank = std::stoll(fields[2]);
    if (fields.size() > 3 && !fields[3].empty()) e.expected_det = std::stoll(fields[3]);
    parse_pd(e.pd);  // validate now so errors carry the line number
    out.push_back(std::move(e));
  }
  return out;
}

Diagram resolve_input(const std::string& text) {
  if (const CorpusEntry* e = find_entry(text)) return parse_pd(e->pd);
  return parse_pd(text);
}

}  // namespace khdet
