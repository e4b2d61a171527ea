#include "gfold/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "gfold/errors.hpp"

namespace gfold {

HnfResult hermite_normal_form(int rank, const std::vector<AbVec>& in_rows) {
  const size_t m = in_rows.size();
  std::vector<std::vector<long long>> a(m, std::vector<long long>(rank, 0));
  for (size_t i = 0; i < m; ++i) {
    if (in_rows[i].rank() != rank)
      throw PreconditionError("lattice generator rank mismatch");
    a[i] = in_rows[i].c;
  }
  std::vector<std::vector<long long>> u(m, std::vector<long long>(m, 0));
  for (size_t i = 0; i < m; ++i) u[i][i] = 1;

  auto row_sub = [&](size_t dst, size_t src, long long q) {
    for (int j = 0; j < rank; ++j) a[dst][static_cast<size_t>(j)] -= q * a[src][static_cast<size_t>(j)];
    for (size_t j = 0; j < m; ++j) u[dst][j] -= q * u[src][j];
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto row_neg = [&](size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  };

  size_t top = 0;
  std::vector<size_t> pivot_rows;
  std::vector<int> pivot_cols;
  for (int col = 0; col < rank && top < m; ++col) {
    // Euclid within the column until a single nonzero entry remains below top.
    while (true) {
      size_t best = m;
      for (size_t i = top; i < m; ++i)
        if (a[i][static_cast<size_t>(col)] != 0 &&
            (best == m || std::llabs(a[i][static_cast<size_t>(col)]) <
                              std::llabs(a[best][static_cast<size_t>(col)])))
          best = i;
      if (best == m) break;
      if (best != top) row_swap(top, best);
      bool clean = true;
      for (size_t i = top + 1; i < m; ++i) {
        if (a[i][static_cast<size_t>(col)] == 0) continue;
        long long q = a[i][static_cast<size_t>(col)] / a[top][static_cast<size_t>(col)];
        row_sub(i, top, q);
        if (a[i][static_cast<size_t>(col)] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[top][static_cast<size_t>(col)] == 0) continue;
    if (a[top][static_cast<size_t>(col)] < 0) row_neg(top);
    pivot_rows.push_back(top);
    pivot_cols.push_back(col);
    ++top;
  }
  // Reduce entries above each pivot into [0, pivot).
  for (size_t pi = 0; pi < pivot_rows.size(); ++pi) {
    size_t pr = pivot_rows[pi];
    int pc = pivot_cols[pi];
    long long p = a[pr][static_cast<size_t>(pc)];
    for (size_t i = 0; i < pr; ++i) {
      long long v = a[i][static_cast<size_t>(pc)];
      long long q = v / p;
      if (v - q * p < 0) q -= 1;  // floor
      if (q != 0) row_sub(i, pr, q);
    }
  }

  HnfResult out;
  for (size_t i = 0; i < top; ++i) {
    out.rows.push_back(AbVec(a[i]));
    out.transform.push_back(u[i]);
  }
  for (size_t i = top; i < m; ++i) out.kernel.push_back(u[i]);
  return out;
}

Lattice Lattice::from_generators(int rank, const std::vector<AbVec>& gens) {
  Lattice l;
  l.rank_ = rank;
  auto h = hermite_normal_form(rank, gens);
  l.hnf_ = std::move(h.rows);
  l.transform_ = std::move(h.transform);
  return l;
}

std::optional<std::vector<long long>> Lattice::coords(const AbVec& v) const {
  if (v.rank() != rank_) throw PreconditionError("lattice rank mismatch");
  std::vector<long long> rem = v.c;
  std::vector<long long> out(hnf_.size(), 0);
  for (size_t i = 0; i < hnf_.size(); ++i) {
    int pc = 0;
    while (hnf_[i].c[static_cast<size_t>(pc)] == 0) ++pc;
    long long p = hnf_[i].c[static_cast<size_t>(pc)];
    if (rem[static_cast<size_t>(pc)] % p != 0) return std::nullopt;
    long long q = rem[static_cast<size_t>(pc)] / p;
    out[i] = q;
    for (int j = 0; j < rank_; ++j)
      rem[static_cast<size_t>(j)] -= q * hnf_[i].c[static_cast<size_t>(j)];
  }
  for (long long x : rem)
    if (x != 0) return std::nullopt;
  return out;
}

bool Lattice::contains(const AbVec& v) const { return coords(v).has_value(); }

std::optional<Word> Lattice::express(const AbVec& v) const {
  auto c = coords(v);
  if (!c) return std::nullopt;
  size_t ngens = transform_.empty() ? 0 : transform_[0].size();
  std::vector<long long> exps(ngens, 0);
  for (size_t i = 0; i < c->size(); ++i)
    for (size_t j = 0; j < ngens; ++j) exps[j] += (*c)[i] * transform_[i][j];
  Word w = Word::identity(static_cast<int>(ngens));
  for (size_t j = 0; j < ngens; ++j)
    w = w * Word::letter(static_cast<int>(ngens), static_cast<int>(j) + 1)
                .pow(exps[j]);
  return w;
}

long long Lattice::cyclic_exponent(const AbVec& c) const {
  if (c.rank() != rank_) throw PreconditionError("lattice rank mismatch");
  if (c.is_zero())
    throw PreconditionError("cyclic intersection against the zero vector");
  std::vector<AbVec> rows;
  rows.push_back(c);
  for (auto& b : hnf_) rows.push_back(b);
  auto h = hermite_normal_form(rank_, rows);
  long long g = 0;
  for (auto& k : h.kernel) g = std::gcd(g, k[0]);
  return std::llabs(g);
}

std::optional<long long> Lattice::solve_translate(const AbVec& x,
                                                  const AbVec& g) const {
  // Integer m and t with x = m*g + t*basis, i.e. x in the lattice <g> + L.
  std::vector<AbVec> rows;
  rows.push_back(g);
  for (auto& b : hnf_) rows.push_back(b);
  auto h = hermite_normal_form(rank_, rows);
  Lattice aug;
  aug.rank_ = rank_;
  aug.hnf_ = h.rows;
  auto c = aug.coords(x);
  if (!c) return std::nullopt;
  long long m = 0;
  for (size_t i = 0; i < c->size(); ++i) m += (*c)[i] * h.transform[i][0];
  return m;
}

std::optional<long long> Lattice::power_coset(const AbVec& x,
                                              const AbVec& g) const {
  if (x.rank() != rank_ || g.rank() != rank_)
    throw PreconditionError("lattice rank mismatch");
  auto m0 = solve_translate(x, g);
  if (!m0) return std::nullopt;
  long long period = 0;
  if (g.is_zero())
    period = 1;
  else
    period = cyclic_exponent(g);
  if (period == 0) return *m0 == 0 ? std::nullopt : m0;
  long long r = ((*m0 % period) + period) % period;
  if (r == 0) return period;
  return r <= period - r ? r : r - period;
}

std::optional<Lattice::CosetHit> Lattice::coset_intersect_cyclic(
    const AbVec& a, const AbVec& c) const {
  if (contains(a)) return CosetHit{0, a, *express(a)};
  if (c.is_zero()) return std::nullopt;
  auto n = power_coset(-a, c);
  if (!n) return std::nullopt;
  AbVec elem = a + c * *n;
  return CosetHit{*n, elem, *express(elem)};
}

std::string Lattice::to_text() const {
  std::ostringstream os;
  os << "lattice rank " << rank_ << " dim " << dim() << ":";
  for (auto& b : hnf_) os << ' ' << b.str();
  return os.str();
}

}  // namespace gfold
