#include "vorunits/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace vor {

std::size_t KeyHash::operator()(const std::vector<long>& v) const {
  std::size_t h = v.size();
  for (long x : v) h = hash_combine(h, std::hash<long>()(x));
  return h;
}

ZMatrix normalize_sign(const ZMatrix& g, bool mod_sign) {
  if (!mod_sign) return g;
  for (const auto& x : g.data()) {
    int s = sgn(x);
    if (s > 0) return g;
    if (s < 0) {
      ZMatrix r = g;
      for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = -r(i, j);
      return r;
    }
  }
  return g;
}

bool is_scalar_sign(const ZMatrix& g) {
  ZMatrix id = ZMatrix::identity(g.rows());
  if (g == id) return true;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != (i == j ? -1 : 0)) return false;
  return true;
}

std::vector<long> FiniteGroup::key(const ZMatrix& g) const {
  std::vector<long> k;
  k.reserve(g.data().size());
  for (const auto& x : g.data()) {
    if (!x.fits_slong_p()) throw Error(ErrorKind::Internal, "group element entry exceeds machine range");
    k.push_back(x.get_si());
  }
  return k;
}

FiniteGroup::FiniteGroup(int dim, const std::vector<ZMatrix>& gens, bool mod_sign, std::size_t cap)
    : dim_(dim), mod_sign_(mod_sign) {
  ZMatrix id = ZMatrix::identity(dim);
  elements_.push_back(id);
  index_.emplace(key(id), 0);
  std::vector<ZMatrix> input;
  for (const auto& g : gens) input.push_back(normalize_sign(g, mod_sign));
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (const auto& g : input) {
      ZMatrix p = normalize_sign(elements_[head] * g, mod_sign);
      auto k = key(p);
      if (index_.count(k)) continue;
      if (elements_.size() >= cap) throw Error(ErrorKind::GroupTooLarge, "finite group closure exceeded its cap");
      index_.emplace(std::move(k), elements_.size());
      elements_.push_back(std::move(p));
    }
  }
  orders_.assign(elements_.size(), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    int o = 1;
    std::size_t cur = i;
    while (cur != 0) {
      cur = mul(cur, i);
      ++o;
    }
    orders_[i] = o;
  }
  choose_generators();
  build_words();
  build_relators();
}

std::optional<std::size_t> FiniteGroup::index_of(const ZMatrix& g) const {
  if (static_cast<int>(g.rows()) != dim_) return std::nullopt;
  auto it = index_.find(key(normalize_sign(g, mod_sign_)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
  auto it = index_.find(key(normalize_sign(elements_[a] * elements_[b], mod_sign_)));
  if (it == index_.end()) throw Error(ErrorKind::Internal, "finite group is not closed");
  return it->second;
}

void FiniteGroup::choose_generators() {
  std::vector<std::size_t> cand(elements_.size());
  std::iota(cand.begin(), cand.end(), 0);
  std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return orders_[a] > orders_[b]; });
  std::vector<char> in_sub(elements_.size(), 0);
  in_sub[0] = 1;
  std::size_t sub_size = 1;
  for (std::size_t c : cand) {
    if (sub_size == elements_.size()) break;
    if (in_sub[c]) continue;
    gen_index_.push_back(c);
    // regenerate the subgroup
    std::fill(in_sub.begin(), in_sub.end(), 0);
    std::vector<std::size_t> queue{0};
    in_sub[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t g : gen_index_) {
        std::size_t p = mul(queue[h], g);
        if (!in_sub[p]) {
          in_sub[p] = 1;
          queue.push_back(p);
        }
      }
    sub_size = queue.size();
  }
  for (std::size_t g : gen_index_) gens_.push_back(elements_[g]);
}

void FiniteGroup::build_words() {
  const std::size_t n = elements_.size();
  words_.assign(n, Word{});
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::vector<std::size_t> inv_gen(gen_index_.size());
  for (std::size_t k = 0; k < gen_index_.size(); ++k) {
    std::size_t g = gen_index_[k];
    std::size_t cur = g;
    while (mul(cur, g) != 0) cur = mul(cur, g);
    inv_gen[k] = cur;
  }
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gen_index_.size(); ++k)
      for (bool inv : {false, true}) {
        std::size_t p = mul(e, inv ? inv_gen[k] : gen_index_[k]);
        if (seen[p]) continue;
        seen[p] = 1;
        words_[p] = words_[e];
        words_[p].push_back(letter(static_cast<int>(k), inv));
        queue.push_back(p);
      }
  }
}

void FiniteGroup::build_relators() {
  const int k = static_cast<int>(gen_index_.size());
  if (k == 0) return;
  const std::size_t n = elements_.size();
  std::set<Word> schreier;
  for (std::size_t e = 0; e < n; ++e)
    for (int s = 0; s < k; ++s) {
      std::size_t p = mul(e, gen_index_[s]);
      Word r = words_[e];
      r.push_back(letter(s));
      Word back = inverse(words_[p]);
      r.insert(r.end(), back.begin(), back.end());
      Word c = canonical_cyclic(r);
      if (!c.empty()) schreier.insert(c);
    }
  std::vector<Word> pool(schreier.begin(), schreier.end());
  std::stable_sort(pool.begin(), pool.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });

  std::vector<Word> chosen;
  for (int s = 0; s < k; ++s) chosen.push_back(power(Word{letter(s)}, orders_[gen_index_[s]]));
  const std::size_t cap = 40 * n + 1000;
  auto defines_group = [&](const std::vector<Word>& rels) {
    auto idx = coset_enumeration(k, rels, {}, cap);
    return idx && *idx == n;
  };
  std::size_t next = 0;
  while (!defines_group(chosen)) {
    // add relators in growing batches, smallest first
    std::size_t batch = std::max<std::size_t>(1, chosen.size() / 2);
    for (std::size_t b = 0; b < batch && next < pool.size(); ++next) {
      if (std::find(chosen.begin(), chosen.end(), pool[next]) != chosen.end()) continue;
      chosen.push_back(pool[next]);
      ++b;
    }
    if (next >= pool.size() && !defines_group(chosen)) {
      chosen = pool;  // the full Schreier set always presents the group
      for (int s = 0; s < k; ++s) chosen.push_back(power(Word{letter(s)}, orders_[gen_index_[s]]));
      break;
    }
  }
  // drop redundant relators, longest first
  std::stable_sort(chosen.begin(), chosen.end(), [](const Word& a, const Word& b) { return a.size() > b.size(); });
  for (std::size_t i = 0; i < chosen.size();) {
    std::vector<Word> trial = chosen;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (defines_group(trial))
      chosen = std::move(trial);
    else
      ++i;
  }
  std::stable_sort(chosen.begin(), chosen.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  relators_ = std::move(chosen);
}

std::optional<Word> FiniteGroup::word_of(const ZMatrix& g) const {
  auto idx = index_of(g);
  if (!idx) return std::nullopt;
  return words_[*idx];
}

ZMatrix FiniteGroup::evaluate(const Word& w) const {
  std::size_t cur = 0;
  for (Letter l : w) {
    std::size_t g = gen_index_[generator_of(l)];
    if (l > 0) {
      cur = mul(cur, g);
    } else {
      std::size_t inv = g;
      while (mul(inv, g) != 0) inv = mul(inv, g);
      cur = mul(cur, inv);
    }
  }
  return elements_[cur];
}

namespace {

// Hazelwood-Leech-Todd coset enumeration with coincidence processing.
class CosetTable {
 public:
  CosetTable(int ngens, std::size_t max_cosets) : cols_(2 * ngens), max_(max_cosets) { add(); }

  bool alive(std::size_t c) const { return parent_[c] == c; }
  std::size_t size() const { return parent_.size(); }
  std::size_t live() const { return live_; }
  bool overflow() const { return overflow_; }

  static int column(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

  void define(std::size_t c, int x) {
    std::size_t d = add();
    if (overflow_) return;
    set(c, x, d);
    set(d, x ^ 1, c);
  }

  long& at(std::size_t c, int x) { return table_[c * cols_ + x]; }

  void scan_and_fill(std::size_t c, const Word& w) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    while (!overflow_) {
      while (i <= j && at(f, column(w[i])) >= 0) {
        f = static_cast<std::size_t>(at(f, column(w[i])));
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, column(w[j]) ^ 1) >= 0) {
        b = static_cast<std::size_t>(at(b, column(w[j]) ^ 1));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set(f, column(w[i]), b);
        set(b, column(w[i]) ^ 1, f);
        return;
      }
      define(f, column(w[i]));
    }
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t c = queue[qi];
      for (int x = 0; x < cols_; ++x) {
        long dl = at(c, x);
        if (dl < 0) continue;
        std::size_t d = static_cast<std::size_t>(dl);
        at(d, x ^ 1) = -1;
        std::size_t e = rep(c), f = rep(d);
        if (at(e, x) >= 0) {
          merge(f, static_cast<std::size_t>(at(e, x)), queue);
        } else if (at(f, x ^ 1) >= 0) {
          merge(e, static_cast<std::size_t>(at(f, x ^ 1)), queue);
        } else {
          set(e, x, f);
          set(f, x ^ 1, e);
        }
      }
    }
  }

 private:
  std::size_t add() {
    if (parent_.size() >= max_) {
      overflow_ = true;
      return 0;
    }
    std::size_t c = parent_.size();
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, -1);
    ++live_;
    return c;
  }
  void set(std::size_t c, int x, std::size_t d) { at(c, x) = static_cast<long>(d); }
  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::size_t n = parent_[k];
      parent_[k] = r;
      k = n;
    }
    return r;
  }
  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_;
    queue.push_back(l);
  }

  int cols_;
  std::size_t max_;
  std::vector<long> table_;
  std::vector<std::size_t> parent_;
  std::size_t live_ = 0;
  bool overflow_ = false;
};

}  // namespace

std::optional<std::size_t> coset_enumeration(int ngens, const std::vector<Word>& relators,
                                             const std::vector<Word>& subgroup_words, std::size_t max_cosets) {
  if (ngens == 0) return 1;
  CosetTable t(ngens, max_cosets);
  for (const auto& w : subgroup_words) {
    t.scan_and_fill(0, w);
    if (t.overflow()) return std::nullopt;
  }
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (const auto& r : relators) {
      if (!t.alive(c)) break;
      t.scan_and_fill(c, r);
      if (t.overflow()) return std::nullopt;
    }
    if (!t.alive(c)) continue;
    for (int x = 0; x < 2 * ngens; ++x) {
      if (t.at(c, x) < 0) t.define(c, x);
      if (t.overflow()) return std::nullopt;
    }
  }
  return t.live();
}

}  // namespace vor
