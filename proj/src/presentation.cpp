#include "gfold/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace gfold {

namespace {

// Smith normal form diagonal of an integer matrix (rows = relators).
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
  std::vector<long long> diag;
  size_t r = m.size();
  size_t c = r == 0 ? 0 : m[0].size();
  size_t top = 0, left = 0;
  while (top < r && left < c) {
    size_t pi = r, pj = c;
    for (size_t i = top; i < r; ++i)
      for (size_t j = left; j < c; ++j)
        if (m[i][j] != 0 &&
            (pi == r || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    std::swap(m[top], m[pi]);
    for (size_t i = 0; i < r; ++i) std::swap(m[i][left], m[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = top + 1; i < r; ++i) {
        if (m[i][left] == 0) continue;
        long long q = m[i][left] / m[top][left];
        for (size_t j = left; j < c; ++j) m[i][j] -= q * m[top][j];
        if (m[i][left] != 0) {
          std::swap(m[top], m[i]);
          clean = false;
        }
      }
      for (size_t j = left + 1; j < c; ++j) {
        if (m[top][j] == 0) continue;
        long long q = m[top][j] / m[top][left];
        for (size_t i = top; i < r; ++i) m[i][j] -= q * m[i][left];
        if (m[top][j] != 0) {
          for (size_t i = 0; i < r; ++i) std::swap(m[i][left], m[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(std::llabs(m[top][left]));
    ++top;
    ++left;
  }
  // Enforce divisibility d1 | d2 | ... (gcd cascade).
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      long long a = diag[i], b = diag[j];
      long long g = std::gcd(a, b);
      if (g == 0) continue;
      diag[i] = g;
      diag[j] = a / g * b;
    }
  return diag;
}

}  // namespace

void Presentation::simplify() {
  auto cyc = [](const Word& w) {
    auto [conj, core] = w.cyclic_reduce();
    (void)conj;
    return core;
  };
  for (auto& r : relators) r = cyc(r);
  relators.erase(std::remove_if(relators.begin(), relators.end(),
                                [](const Word& w) { return w.trivial(); }),
                 relators.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ri = 0; ri < relators.size() && !changed; ++ri) {
      const Word& r = relators[ri];
      for (int pos = 0; pos < r.length(); ++pos) {
        int g = std::abs(r.letters()[static_cast<size_t>(pos)]);
        int count = 0;
        for (int l : r.letters())
          if (std::abs(l) == g) ++count;
        if (count != 1) continue;
        // r = u g^eps v  =>  g = (v u)^{-eps}; substitute and drop.
        std::vector<int> rot;
        for (int i = pos + 1; i < r.length(); ++i)
          rot.push_back(r.letters()[static_cast<size_t>(i)]);
        for (int i = 0; i < pos; ++i)
          rot.push_back(r.letters()[static_cast<size_t>(i)]);
        Word rest(rank(), rot);
        Word val = r.letters()[static_cast<size_t>(pos)] > 0 ? rest.inverse()
                                                             : rest;
        std::vector<Word> next;
        for (size_t rj = 0; rj < relators.size(); ++rj) {
          if (rj == ri) continue;
          Word out = Word::identity(rank());
          for (int l : relators[rj].letters()) {
            if (std::abs(l) == g)
              out = out * (l > 0 ? val : val.inverse());
            else
              out = out * Word::letter(rank(), l);
          }
          next.push_back(cyc(out));
        }
        // Renumber: drop generator g.
        std::vector<Gen> ng;
        std::vector<int> remap(static_cast<size_t>(rank()) + 1, 0);
        for (int i = 1; i <= rank(); ++i) {
          if (i == g) continue;
          ng.push_back(gens[static_cast<size_t>(i) - 1]);
          remap[static_cast<size_t>(i)] = static_cast<int>(ng.size());
        }
        std::vector<Word> renumbered;
        for (auto& w : next) {
          std::vector<int> ls;
          for (int l : w.letters()) {
            int nl = remap[static_cast<size_t>(std::abs(l))];
            ls.push_back(l > 0 ? nl : -nl);
          }
          Word nw(static_cast<int>(ng.size()), ls);
          if (!nw.trivial()) renumbered.push_back(nw);
        }
        gens = std::move(ng);
        relators = std::move(renumbered);
        changed = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].name.rfind("g", 0) == 0)
      gens[i].name = "g" + std::to_string(i + 1);
  }
}

std::vector<long long> Presentation::abelian_invariants() const {
  std::vector<std::vector<long long>> m;
  for (auto& r : relators) {
    std::vector<long long> row(static_cast<size_t>(rank()), 0);
    for (int l : r.letters())
      row[static_cast<size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
    m.push_back(row);
  }
  auto diag = smith_diagonal(std::move(m));
  std::vector<long long> inv;
  for (long long d : diag)
    if (d != 1) inv.push_back(d);
  int free_rank = rank() - static_cast<int>(diag.size());
  for (int i = 0; i < free_rank; ++i) inv.push_back(0);
  std::sort(inv.begin(), inv.end());
  return inv;
}

int Presentation::abelian_free_rank() const {
  int n = 0;
  for (long long d : abelian_invariants())
    if (d == 0) ++n;
  return n;
}

std::string Presentation::str() const {
  std::ostringstream os;
  os << "generators " << gens.size() << "\n";
  for (auto& g : gens) os << "  " << g.name << " = " << g.value << "\n";
  os << "relators " << relators.size() << "\n";
  std::vector<std::string> names;
  for (auto& g : gens) names.push_back(g.name);
  for (auto& r : relators) os << "  " << r.str(names) << "\n";
  return os.str();
}

}  // namespace gfold
