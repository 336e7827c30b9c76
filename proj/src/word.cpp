#include "vorunits/word.hpp"

#include <algorithm>
#include <cctype>

#include "vorunits/error.hpp"

namespace vor {

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l = -l;
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return free_reduce(r);
}

Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (Letter l : w) {
    if (!r.empty() && r.back() == -l)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

Word canonical_cyclic(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  // order letters a < a^-1 < b < b^-1 < ... so relators read with positive powers
  auto key = [](Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); };
  auto less = [&key](const Word& x, const Word& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [&key](Letter a, Letter b) { return key(a) < key(b); });
  };
  Word best;
  for (const Word& c : {r, inverse(r)}) {
    for (std::size_t s = 0; s < c.size(); ++s) {
      Word rot(c.begin() + s, c.end());
      rot.insert(rot.end(), c.begin(), c.begin() + s);
      if (best.empty() || less(rot, best)) best = std::move(rot);
    }
  }
  return best;
}

Word power(const Word& w, int e) {
  Word base = e < 0 ? inverse(w) : w;
  Word r;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r.insert(r.end(), base.begin(), base.end());
  return free_reduce(r);
}

std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    int run = static_cast<int>(j - i);
    if (!out.empty()) out += "*";
    out += names[generator_of(w[i])];
    int e = w[i] > 0 ? run : -run;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  Word w;
  if (s.empty() || s == "1") return w;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find('*', i);
    if (j == std::string::npos) j = s.size();
    std::string factor = s.substr(i, j - i);
    std::string base = factor;
    long e = 1;
    if (auto caret = factor.find('^'); caret != std::string::npos) {
      base = factor.substr(0, caret);
      try {
        std::size_t used = 0;
        std::string ex = factor.substr(caret + 1);
        e = std::stol(ex, &used);
        if (used != ex.size()) throw std::invalid_argument("exponent");
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad exponent in '" + factor + "'");
      }
    }
    auto it = std::find(names.begin(), names.end(), base);
    if (it == names.end()) throw Error(ErrorKind::ParseError, "unknown generator '" + base + "'");
    int g = static_cast<int>(it - names.begin());
    for (long k = 0; k < (e < 0 ? -e : e); ++k) w.push_back(letter(g, e < 0));
    i = j + 1;
    if (j == s.size()) break;
  }
  return free_reduce(w);
}

}  // namespace vor
