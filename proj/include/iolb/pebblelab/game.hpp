#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iolb/pebblelab/cdag.hpp"

namespace iolb::pebble {

enum class Variant { std, nr };
Variant parse_variant(const std::string& s);
std::string variant_name(Variant v);

struct GameRules {
  int S = 3;
  Variant variant = Variant::std;
  // R3 may move the pebble of a predecessor when all S pebbles are in use.
  bool slide = true;
};

enum class MoveKind { R1, R2, R3, R4 };

struct Move {
  MoveKind kind;
  int v;
  bool operator==(const Move&) const = default;
};

struct Calculation {
  std::vector<Move> moves;
  int io_count() const;
  std::string str(const Cdag& c) const;
};

// Moves written as R1_2, R3_6, ... separated by commas, spaces or braces.
// An R3 made while all pebbles are used must be followed by R4 of a
// predecessor; the pair is the slide.
Calculation parse_calculation(const Cdag& c, std::string_view text);

// Returns q, or throws an input error naming the offending move.
int validate_calculation(const Cdag& c, const GameRules& rules, const Calculation& calc);

struct SearchLimits {
  int max_vertices = 24;
  long long budget = 4'000'000;  // expanded states
};

struct SearchResult {
  int q = 0;
  bool optimal = true;  // false: budget ran out and q is a greedy upper bound
  Calculation witness;
  long long expanded = 0;
};

SearchResult min_io(const Cdag& c, const GameRules& rules, const SearchLimits& limits = {});
// Topological schedule with least recently used spills. Valid for both variants.
Calculation greedy_calculation(const Cdag& c, const GameRules& rules);

}  // namespace iolb::pebble
