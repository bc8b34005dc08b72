#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fps/errors.hpp"

namespace fps {

// A word over a free monoid's alphabet, stored as letter ids
// (positions in the declared alphabet). The empty word is the unit.
struct Word {
  std::vector<std::uint32_t> letters;

  bool operator==(const Word&) const = default;
};

inline std::size_t length(const Word& w) { return w.letters.size(); }
Word concat(const Word& u, const Word& v);
Word subword(const Word& w, std::size_t begin, std::size_t end);  // [begin, end)

// An index: a natural number or a word, depending on the space.
using Index = std::variant<std::uint64_t, Word>;

// Canonical order: numeric on naturals, length then lexicographic on words.
struct IndexLess {
  bool operator()(const Index& a, const Index& b) const;
};
struct IndexHash {
  std::size_t operator()(const Index& x) const;
};

// All ordered k-tuples of (possibly empty) words whose concatenation is w.
// There are C(|w|+k-1, k-1) of them; for k = 0 the answer is the empty
// tuple when w is empty and nothing otherwise.
std::vector<std::vector<Word>> factorizations(const Word& w, std::size_t k);

enum class SpaceKind { Naturals, FreeMonoid };

// The index set of a series: the naturals, or the free monoid X* over a
// finite alphabet. Value semantics, cheap to copy.
class IndexSpace {
 public:
  static IndexSpace naturals();
  // Symbols must be nonempty and pairwise distinct. An empty alphabet is
  // allowed; X* is then just the empty word.
  static IndexSpace free_monoid(std::vector<std::string> alphabet);

  SpaceKind kind() const;
  bool is_monoid() const { return kind() == SpaceKind::FreeMonoid; }
  const std::vector<std::string>& alphabet() const;  // monoid only

  bool operator==(const IndexSpace& other) const;
  bool operator!=(const IndexSpace& other) const { return !(*this == other); }

  // True if x structurally belongs to this space (matching variant kind,
  // letter ids within range).
  bool contains(const Index& x) const;

  // The index at a given position of the canonical enumeration. Positions
  // beyond a finite space (empty alphabet) throw EvalError.
  Index at(std::uint64_t position) const;

  // First n indices in canonical order; a prefix of any longer enumeration.
  // Returns fewer when the space is finite and smaller than n.
  std::vector<Index> enumerate(std::uint64_t n) const;

  // Number of indices of the monoid with length <= len, capped at `cap`.
  std::uint64_t count_up_to_length(std::uint64_t len, std::uint64_t cap) const;

  std::string index_text(const Index& x) const;  // "aba", "" for the unit, "7"
  // Parse "aba" / "7". Greedy longest-symbol match on monoids.
  Index parse_index(std::string_view text) const;
  Word parse_word(std::string_view text) const;  // monoid only

  std::optional<std::uint32_t> letter_id(std::string_view symbol) const;
  Word letter(std::uint32_t id) const;

 private:
  struct Data;
  explicit IndexSpace(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

}  // namespace fps
