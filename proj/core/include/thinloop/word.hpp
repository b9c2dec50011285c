#ifndef THINLOOP_WORD_HPP
#define THINLOOP_WORD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace thinloop {

// A signed letter. `arc` names an oriented embedded arc; `sign` is the
// traversal direction: +1 along the arc's fixed orientation, -1 against.
struct Letter {
  std::int32_t arc = 0;
  std::int32_t sign = +1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline Letter inverse_of(Letter l) { return {l.arc, -l.sign}; }
inline bool are_inverse(Letter a, Letter b) {
  return a.arc == b.arc && a.sign == -b.sign;
}

// Finite word over the signed alphabet; unreduced words are allowed.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

using Match = std::pair<std::int32_t, std::int32_t>;

// A well-nested pairing of mutually inverse letters: every index matched
// exactly once, matched letters are inverse to each other, and no two
// matches cross (no i < k < j < l with (i,j) and (k,l) both present).
struct Pairing {
  std::vector<Match> matches;  // each (i, j) with i < j, sorted by i
};

// Free reduction (cancel adjacent x x^{-1} to a fixpoint). `out` is
// cleared and reused; no allocation happens once its capacity suffices.
void reduce_into(std::span<const Letter> w, std::vector<Letter>& out);
Word reduce(const Word& w);

// A whisker is a word whose reduction is empty; a word "has whiskers"
// if it differs from its reduction.
bool is_whisker(const Word& w);
bool has_whiskers(const Word& w);

// Stack matcher: fills `matches` with a well-nested pairing and returns
// true iff one exists (equivalently, iff the word reduces to empty --
// the equivalence is a tested theorem, not an assumption here).
bool nesting_pairing_into(std::span<const Letter> w, std::vector<Match>& matches);
std::optional<Pairing> nesting_pairing(const Word& w);

// Checks a pairing against the definition. Independent of the stack
// matcher; used to cross-validate it.
bool pairing_valid(const Word& w, const Pairing& p);

// True iff the subword of w at the (sorted, unique) kept indices is a
// whisker.
bool truncation_reducible(const Word& w, std::span<const std::int32_t> keep);

Word word_concat(const Word& a, const Word& b);
Word word_inverse(const Word& w);

// Equality in the free group. Computes both routes -- reduced-word
// equality and whiskerhood of a * b^{-1} -- and insists they agree.
bool equivalent(const Word& a, const Word& b);

// Two words are the same up to renaming arcs and flipping each arc's
// fixed orientation. Canonical form: arcs renumbered by first
// occurrence, first occurrence made positive.
Word canonical_relabel(const Word& w);

// Token syntax: whitespace-separated names, prime marks the inverse,
// e.g. "a b b' c". Names are interned into `names` by first use.
Word parse_word(const std::string& text, std::vector<std::string>& names);
std::string format_word(const Word& w, const std::vector<std::string>& names);

// Default display names: a..z, then a26, a27, ...
std::string letter_name(int arc);
std::vector<std::string> default_names(int count);

}  // namespace thinloop

#endif
