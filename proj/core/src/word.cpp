#include "thinloop/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "thinloop/types.hpp"

namespace thinloop {

void reduce_into(std::span<const Letter> w, std::vector<Letter>& out) {
  out.clear();
  for (const Letter& l : w) {
    if (!out.empty() && are_inverse(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
}

Word reduce(const Word& w) {
  Word r;
  reduce_into(w.letters, r.letters);
  return r;
}

bool is_whisker(const Word& w) {
  if (w.size() % 2 != 0) return false;
  thread_local std::vector<Letter> scratch;
  reduce_into(w.letters, scratch);
  return scratch.empty();
}

bool has_whiskers(const Word& w) {
  thread_local std::vector<Letter> scratch;
  reduce_into(w.letters, scratch);
  return scratch.size() != w.size();
}

bool nesting_pairing_into(std::span<const Letter> w, std::vector<Match>& matches) {
  matches.clear();
  thread_local std::vector<std::int32_t> stack;
  stack.clear();
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(w.size()); ++i) {
    if (!stack.empty() && are_inverse(w[stack.back()], w[i])) {
      matches.emplace_back(stack.back(), i);
      stack.pop_back();
    } else {
      stack.push_back(i);
    }
  }
  if (!stack.empty()) {
    matches.clear();
    return false;
  }
  std::sort(matches.begin(), matches.end());
  return true;
}

std::optional<Pairing> nesting_pairing(const Word& w) {
  Pairing p;
  if (!nesting_pairing_into(w.letters, p.matches)) return std::nullopt;
  return p;
}

bool pairing_valid(const Word& w, const Pairing& p) {
  const std::size_t n = w.size();
  if (p.matches.size() * 2 != n) return false;
  std::vector<int> seen(n, 0);
  for (auto [i, j] : p.matches) {
    if (i < 0 || j < 0 || i >= static_cast<std::int32_t>(n) ||
        j >= static_cast<std::int32_t>(n) || i >= j)
      return false;
    seen[i]++;
    seen[j]++;
    if (!are_inverse(w.letters[i], w.letters[j])) return false;
  }
  for (int s : seen)
    if (s != 1) return false;
  // No crossings: for any two matches, either nested or disjoint.
  for (std::size_t a = 0; a < p.matches.size(); ++a)
    for (std::size_t b = a + 1; b < p.matches.size(); ++b) {
      auto [i, j] = p.matches[a];
      auto [k, l] = p.matches[b];
      if (k < i) {
        std::swap(i, k);
        std::swap(j, l);
      }
      const bool nested = j > l && k > i && l < j;
      const bool disjoint = k > j;
      if (!(nested || disjoint)) return false;
    }
  return true;
}

bool truncation_reducible(const Word& w, std::span<const std::int32_t> keep) {
  thread_local std::vector<Letter> sub, scratch;
  sub.clear();
  for (std::int32_t i : keep) {
    if (i < 0 || i >= static_cast<std::int32_t>(w.size()))
      throw ValidationError("truncation index out of range");
    sub.push_back(w.letters[i]);
  }
  reduce_into(sub, scratch);
  return scratch.empty();
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

Word word_inverse(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(inverse_of(*it));
  return r;
}

bool equivalent(const Word& a, const Word& b) {
  const bool by_normal_form = reduce(a) == reduce(b);
  const bool by_product = is_whisker(word_concat(a, word_inverse(b)));
  if (by_normal_form != by_product)
    throw Error("word equivalence routes disagree (internal inconsistency)");
  return by_normal_form;
}

Word canonical_relabel(const Word& w) {
  Word r = w;
  std::vector<std::int32_t> rename;   // old arc -> new arc
  std::vector<std::int32_t> flip;     // old arc -> sign of first occurrence
  std::int32_t next = 0;
  for (Letter& l : r.letters) {
    if (l.arc < 0) throw ValidationError("negative arc id");
    if (l.arc >= static_cast<std::int32_t>(rename.size())) {
      rename.resize(l.arc + 1, -1);
      flip.resize(l.arc + 1, 0);
    }
    if (rename[l.arc] < 0) {
      rename[l.arc] = next++;
      flip[l.arc] = l.sign;
    }
    l = Letter{rename[l.arc], l.sign * flip[l.arc]};
  }
  return r;
}

Word parse_word(const std::string& text, std::vector<std::string>& names) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = +1;
    if (tok.size() > 1 && tok.back() == '\'') {
      sign = -1;
      tok.pop_back();
    }
    auto it = std::find(names.begin(), names.end(), tok);
    std::int32_t arc;
    if (it == names.end()) {
      arc = static_cast<std::int32_t>(names.size());
      names.push_back(tok);
    } else {
      arc = static_cast<std::int32_t>(it - names.begin());
    }
    w.letters.push_back({arc, sign});
  }
  return w;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    const Letter& l = w.letters[i];
    if (l.arc >= 0 && l.arc < static_cast<std::int32_t>(names.size()))
      out += names[l.arc];
    else
      out += letter_name(l.arc);
    if (l.sign < 0) out += '\'';
  }
  return out;
}

std::string letter_name(int arc) {
  if (arc >= 0 && arc < 26) return std::string(1, static_cast<char>('a' + arc));
  return "a" + std::to_string(arc);
}

std::vector<std::string> default_names(int count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (int i = 0; i < count; ++i) names.push_back(letter_name(i));
  return names;
}

}  // namespace thinloop
