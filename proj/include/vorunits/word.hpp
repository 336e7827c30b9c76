#pragma once

// Words over numbered generators. Letter +(k+1) is generator k, -(k+1) its inverse.

#include <string>
#include <vector>

namespace vor {

using Letter = int;
using Word = std::vector<Letter>;

inline Letter letter(int gen, bool inverse = false) { return inverse ? -(gen + 1) : gen + 1; }
inline int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word free_reduce(const Word& w);
/// Free and cyclic reduction.
Word cyclic_reduce(const Word& w);
/// Canonical representative of the cyclic words of w and its inverse.
Word canonical_cyclic(const Word& w);
Word power(const Word& w, int e);
/// a^3*t*b*t^-1 style rendering.
std::string to_string(const Word& w, const std::vector<std::string>& names);
/// Inverse of to_string; "1" and "" are the empty word. Throws ParseError.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

}  // namespace vor
