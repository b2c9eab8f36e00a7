#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "khdet/pd.hpp"

namespace khdet {

// One fixture: a named PD code with optional pinned regression values.
struct CorpusEntry {
  std::string name;
  std::string pd;
  std::optional<long long> expected_rank;  // reduced total rank
  std::optional<long long> expected_det;
};

// The embedded corpus: unknot variants, Rolfsen knots through 9 crossings as
// rational/braid/pretzel diagrams, 8_19, and both 10_124 diagrams.
const std::vector<CorpusEntry>& builtin_corpus();

const CorpusEntry* find_entry(const std::string& name);

// One record per line: name<TAB>pd-code[<TAB>rank[<TAB>det]].
// Blank lines and lines starting with '#' are skipped.
std::vector<CorpusEntry> parse_corpus_file(std::istream& in);

// Resolves a CLI input: a builtin corpus name, else a PD code literal.
Diagram resolve_input(const std::string& text);

}  // namespace khdet
