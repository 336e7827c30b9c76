#pragma once

// Finite groups of units, stored as integer matrices acting on lattice
// coordinates. With mod_sign, g and -g are identified.

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vorunits/linalg.hpp"
#include "vorunits/word.hpp"

namespace vor {

struct KeyHash {
  std::size_t operator()(const std::vector<long>& v) const;
};

/// -g when mod_sign and the first nonzero entry of g is negative, else g.
ZMatrix normalize_sign(const ZMatrix& g, bool mod_sign);
bool is_scalar_sign(const ZMatrix& g);  // g = +1 or -1

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Closes the group generated by gens (and 1). Throws GroupTooLarge above cap.
  FiniteGroup(int dim, const std::vector<ZMatrix>& gens, bool mod_sign, std::size_t cap = 10'000'000);

  std::size_t order() const { return elements_.size(); }
  int dim() const { return dim_; }
  bool mod_sign() const { return mod_sign_; }
  const std::vector<ZMatrix>& elements() const { return elements_; }
  /// A small generating set, chosen greedily by element order.
  const std::vector<ZMatrix>& generators() const { return gens_; }
  std::optional<std::size_t> index_of(const ZMatrix& g) const;
  bool contains(const ZMatrix& g) const { return index_of(g).has_value(); }
  int element_order(std::size_t idx) const { return orders_[idx]; }
  /// A shortest word in generators() for element idx.
  const Word& word(std::size_t idx) const { return words_[idx]; }
  std::optional<Word> word_of(const ZMatrix& g) const;
  /// Defining relators on generators(); cyclic groups give a single power.
  const std::vector<Word>& relators() const { return relators_; }
  /// Product of generator values along a word (normalized when mod_sign).
  ZMatrix evaluate(const Word& w) const;

 private:
  std::vector<long> key(const ZMatrix& g) const;
  std::size_t mul(std::size_t a, std::size_t b) const;
  void choose_generators();
  void build_words();
  void build_relators();

  int dim_ = 0;
  bool mod_sign_ = false;
  std::vector<ZMatrix> elements_;
  std::unordered_map<std::vector<long>, std::size_t, KeyHash> index_;
  std::vector<int> orders_;
  std::vector<ZMatrix> gens_;
  std::vector<std::size_t> gen_index_;
  std::vector<Word> words_;
  std::vector<Word> relators_;
};

/// Index of the subgroup generated by subgroup_words in the group given by
/// generators and relators, by coset enumeration; nullopt if it exceeds max_cosets.
std::optional<std::size_t> coset_enumeration(int ngens, const std::vector<Word>& relators,
                                             const std::vector<Word>& subgroup_words,
                                             std::size_t max_cosets = 200000);

}  // namespace vor
