#pragma once

// Bit-parallel truth tables: every formula over k local atoms becomes a
// column of 2^k bits, world w assigning atom b the value (w >> b) & 1.

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "brdkit/formula.hpp"

namespace brdkit::detail {

using Column = std::vector<std::uint64_t>;

class TruthColumns {
 public:
  /// Throws BoundError when atoms.size() exceeds max_atoms.
  TruthColumns(const std::vector<AtomId>& atoms, int max_atoms);

  int atom_count() const { return atom_count_; }
  std::size_t word_count() const { return words_; }

  /// Column of a guilt-free formula whose atoms are all local. Throws
  /// UnknownAtomError otherwise.
  Column evaluate(const Formula& f) const;
  Column ones() const;
  Column atom_column(int bit) const;

  static std::uint64_t count(const Column& column);
  static void and_into(Column& acc, const Column& other);

 private:
  int atom_count_;
  std::size_t words_;
  std::uint64_t last_mask_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace brdkit::detail
