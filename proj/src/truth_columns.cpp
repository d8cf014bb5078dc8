#include "truth_columns.hpp"

#include <bit>

#include "brdkit/error.hpp"

namespace brdkit::detail {
namespace {

constexpr std::uint64_t kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

}  // namespace

TruthColumns::TruthColumns(const std::vector<AtomId>& atoms, int max_atoms)
    : atom_count_(static_cast<int>(atoms.size())) {
  if (atom_count_ > max_atoms) {
    throw BoundError("enumeration over " + std::to_string(atom_count_) + " atoms exceeds the bound of " +
                     std::to_string(max_atoms) + " atoms");
  }
  if (atom_count_ >= 6) {
    words_ = std::size_t{1} << (atom_count_ - 6);
    last_mask_ = ~std::uint64_t{0};
  } else {
    words_ = 1;
    const unsigned worlds = 1u << atom_count_;
    last_mask_ = worlds == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << worlds) - 1);
  }
  for (int i = 0; i < atom_count_; ++i) index_.emplace(atoms[static_cast<std::size_t>(i)].key(), i);
}

Column TruthColumns::ones() const {
  Column c(words_, ~std::uint64_t{0});
  c.back() &= last_mask_;
  return c;
}

Column TruthColumns::atom_column(int bit) const {
  Column c(words_);
  if (bit < 6) {
    for (auto& w : c) w = kLowPatterns[bit];
  } else {
    const int shift = bit - 6;
    for (std::size_t i = 0; i < words_; ++i) c[i] = ((i >> shift) & 1u) ? ~std::uint64_t{0} : 0;
  }
  c.back() &= last_mask_;
  return c;
}

Column TruthColumns::evaluate(const Formula& f) const {
  switch (f.op()) {
    case Op::kTop:
      return ones();
    case Op::kBottom:
      return Column(words_, 0);
    case Op::kAtom: {
      const auto it = index_.find(f.atom_id().key());
      if (it == index_.end()) throw UnknownAtomError("atom '" + f.atom_id().key() + "' is not in scope");
      return atom_column(it->second);
    }
    case Op::kGuilt:
      throw UnknownAtomError("guilt constant must be expanded before evaluation");
    case Op::kNot: {
      Column c = evaluate(f.lhs());
      for (auto& w : c) w = ~w;
      c.back() &= last_mask_;
      return c;
    }
    default:
      break;
  }
  Column a = evaluate(f.lhs());
  const Column b = evaluate(f.rhs());
  for (std::size_t i = 0; i < words_; ++i) {
    switch (f.op()) {
      case Op::kAnd: a[i] &= b[i]; break;
      case Op::kOr: a[i] |= b[i]; break;
      case Op::kImplies: a[i] = ~a[i] | b[i]; break;
      case Op::kIff: a[i] = ~(a[i] ^ b[i]); break;
      default: break;
    }
  }
  a.back() &= last_mask_;
  return a;
}

std::uint64_t TruthColumns::count(const Column& column) {
  std::uint64_t n = 0;
  for (auto w : column) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

void TruthColumns::and_into(Column& acc, const Column& other) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= other[i];
}

}  // namespace brdkit::detail
