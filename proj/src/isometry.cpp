#include "vorunits/isometry.hpp"

#include <algorithm>

#include "vorunits/short_vectors.hpp"

namespace vor {

IsometrySearch::IsometrySearch(const FormChart& chart) : chart_(&chart) {
  for (const auto& c : chart.arithmetic().centralizer_basis()) {
    // the identity adds nothing beyond b_F itself
    if (c == QMatrix::identity(c.rows())) continue;
    centralizer_.push_back(c);
  }
}

namespace {

struct Basis {
  std::vector<std::size_t> picks;  // indices into source vectors
  std::vector<std::size_t> rows;   // pivot rows of Psi, row = i*m + coordinate
  QMatrix sub_inv;                 // inverse of Psi restricted to the pivot rows
};

Basis choose_basis(const Arithmetic& ar, const std::vector<IVec>& vecs) {
  const int d = ar.dim(), m = ar.m();
  const auto& reps = ar.basis_reps();
  Basis b;
  QMatrix psi(0, d);
  std::size_t cur_rank = 0;
  for (std::size_t v = 0; v < vecs.size() && cur_rank < static_cast<std::size_t>(d); ++v) {
    QMatrix ext(psi.rows() + m, d);
    for (std::size_t r = 0; r < psi.rows(); ++r)
      for (int k = 0; k < d; ++k) ext(r, k) = psi(r, k);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < m; ++i) {
        Rational s = 0;
        for (int j = 0; j < m; ++j)
          if (vecs[v][j] != 0) s += reps[k](i, j) * vecs[v][j];
        ext(psi.rows() + i, k) = s;
      }
    std::size_t rk = rank(ext);
    if (rk > cur_rank) {
      cur_rank = rk;
      psi = std::move(ext);
      b.picks.push_back(v);
    }
  }
  if (cur_rank != static_cast<std::size_t>(d))
    throw Error(ErrorKind::NotWellRounded, "vector system does not contain a K-basis");
  QMatrix t = psi.transpose();
  auto piv = rref(t);
  b.rows.assign(piv.begin(), piv.end());
  QMatrix sub(d, d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) sub(r, k) = psi(b.rows[r], k);
  b.sub_inv = *inverse(sub);
  return b;
}

using Value = CompiledBilinear::Value;

}  // namespace

std::vector<ZMatrix> IsometrySearch::run(const VectorSystem& source, const VectorSystem& target,
                                         const IsometryOptions& opt) const {
  const Arithmetic& ar = chart_->arithmetic();
  const int d = ar.dim(), m = ar.m();
  std::vector<ZMatrix> results;
  if (source.vectors.size() != target.vectors.size()) return results;
  const Basis basis = choose_basis(ar, source.vectors);
  const std::size_t nb = basis.picks.size();

  std::vector<EMatrix> forms;
  forms.push_back(source.gram);
  for (const auto& c : centralizer_) forms.push_back(source.gram * to_scalar(c));
  const std::size_t nf = forms.size();
  forms.push_back(target.gram);
  for (const auto& c : centralizer_) forms.push_back(target.gram * to_scalar(c));
  auto compiled = CompiledBilinear::compile(forms, chart_->field());

  std::vector<IVec> xs;
  for (auto p : basis.picks) xs.push_back(source.vectors[p]);
  // want[i][j][f] = b_f(x_i, x_j)
  std::vector<std::vector<std::vector<Value>>> want(nb, std::vector<std::vector<Value>>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t f = 0; f < nf; ++f) want[i][j].push_back(compiled[f].eval(xs[i], xs[j]));

  std::vector<std::vector<std::size_t>> cands(nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t t = 0; t < target.vectors.size(); ++t) {
      const IVec& y = target.vectors[t];
      bool ok = true;
      for (std::size_t f = 0; f < nf && ok; ++f) ok = compiled[nf + f].eval(y, y) == want[i][i][f];
      if (ok) cands[i].push_back(t);
    }

  std::vector<IVec> sorted_targets = target.vectors;
  std::sort(sorted_targets.begin(), sorted_targets.end());
  const auto& reps = ar.basis_reps();

  std::vector<std::size_t> chosen(nb);
  auto leaf = [&]() -> bool {
    QVec rhs(d);
    for (int r = 0; r < d; ++r) {
      std::size_t row = basis.rows[r];
      rhs[r] = target.vectors[chosen[row / m]][row % m];
    }
    QVec coef = basis.sub_inv * rhs;
    QMatrix rq(m, m);
    for (int k = 0; k < d; ++k) {
      if (sgn(coef[k]) == 0) continue;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (sgn(reps[k](i, j)) != 0) rq(i, j) += coef[k] * reps[k](i, j);
    }
    auto rz = to_integer(rq);
    if (!rz) return false;
    for (std::size_t i = 0; i < nb; ++i)
      if (apply_matrix(*rz, xs[i]) != target.vectors[chosen[i]]) return false;
    EMatrix re = to_scalar(*rz);
    if (re.transpose() * target.gram * re != source.gram) return false;
    if (opt.require_set_map)
      for (const auto& x : source.vectors)
        if (!std::binary_search(sorted_targets.begin(), sorted_targets.end(), apply_matrix(*rz, x))) return false;
    if (!ar.is_unit_rep(*rz)) return false;
    results.push_back(std::move(*rz));
    return true;
  };

  bool stop = false;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == nb) {
      if (leaf() && (opt.first_only || results.size() >= opt.max_results)) stop = true;
      return;
    }
    for (std::size_t t : cands[i]) {
      const IVec& y = target.vectors[t];
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const IVec& yj = target.vectors[chosen[j]];
        for (std::size_t f = 0; f < nf && ok; ++f)
          ok = compiled[nf + f].eval(yj, y) == want[j][i][f] && compiled[nf + f].eval(y, yj) == want[i][j][f];
      }
      if (!ok) continue;
      chosen[i] = t;
      self(self, i + 1);
      if (stop) return;
    }
  };
  recurse(recurse, 0);
  return results;
}

namespace {

FiniteGroup group_from_elements(int m, const std::vector<ZMatrix>& elems, bool mod_sign) {
  std::vector<ZMatrix> gens;
  FiniteGroup g(m, gens, mod_sign);
  for (const auto& e : elems) {
    if (g.contains(e)) continue;
    gens.push_back(e);
    g = FiniteGroup(m, gens, mod_sign);
  }
  return g;
}

VectorSystem system_of(const FormChart& chart, const EVec& f) {
  VectorSystem s;
  s.gram = gram_of_form(chart, f);
  s.vectors = minimal_vectors_gram(s.gram).vectors;
  return s;
}

}  // namespace

FiniteGroup automorphism_group(const FormChart& chart, const EVec& f, bool mod_sign) {
  VectorSystem s = system_of(chart, f);
  IsometrySearch search(chart);
  auto elems = search.run(s, s, {});
  return group_from_elements(chart.m(), elems, mod_sign);
}

std::optional<ZMatrix> isometry_test(const FormChart& chart, const VectorSystem& s1, const VectorSystem& s2) {
  if (s1.vectors.size() != s2.vectors.size()) return std::nullopt;
  IsometrySearch search(chart);
  IsometryOptions opt;
  opt.first_only = true;
  auto r = search.run(s1, s2, opt);
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::optional<ZMatrix> isometry_test(const FormChart& chart, const EVec& f1, const EVec& f2) {
  VectorSystem s1 = system_of(chart, f1), s2 = system_of(chart, f2);
  return isometry_test(chart, s1, s2);
}

EVec inverse_class_form(const FormChart& chart, const std::vector<IVec>& s) {
  EVec t(chart.N(), Scalar(0));
  for (const auto& x : s) {
    EVec r = chart.rank_one(x);
    for (int k = 0; k < chart.N(); ++k) t[k] += r[k];
  }
  const AlgebraData& alg = chart.arithmetic().algebra();
  auto inv = inverse_element(alg, chart.element_of(t));
  if (!inv) throw Error(ErrorKind::NotWellRounded, "class form is singular");
  return chart.coords_of(*inv);
}

namespace {

VectorSystem class_system(const FormChart& chart, const std::vector<IVec>& s) {
  VectorSystem v;
  v.gram = chart.gram(inverse_class_form(chart, s));
  v.vectors = s;
  std::sort(v.vectors.begin(), v.vectors.end());
  return v;
}

}  // namespace

FiniteGroup set_stabilizer(const FormChart& chart, const std::vector<IVec>& s, bool mod_sign) {
  VectorSystem v = class_system(chart, s);
  IsometrySearch search(chart);
  IsometryOptions opt;
  opt.require_set_map = true;
  auto elems = search.run(v, v, opt);
  return group_from_elements(chart.m(), elems, mod_sign);
}

std::optional<ZMatrix> set_transporter(const FormChart& chart, const std::vector<IVec>& s1,
                                       const std::vector<IVec>& s2) {
  if (s1.size() != s2.size()) return std::nullopt;
  VectorSystem v1 = class_system(chart, s1), v2 = class_system(chart, s2);
  IsometrySearch search(chart);
  IsometryOptions opt;
  opt.require_set_map = true;
  opt.first_only = true;
  auto r = search.run(v1, v2, opt);
  if (r.empty()) return std::nullopt;
  return r.front();
}

}  // namespace vor
