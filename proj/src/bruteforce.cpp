#include "gfold/bruteforce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gfold/errors.hpp"
#include "gfold/lattice.hpp"

namespace gfold {

bool brute_membership(const ExtensionChain& c, int level,
                      const std::vector<GroupElem>& hgens, const GroupElem& x,
                      int maxlen) {
  if (level == 0) {
    // Plain word arithmetic with letter-vector dedup.
    const Word& target = x.word();
    std::vector<Word> dirs;
    for (auto& h : hgens) {
      dirs.push_back(h.word());
      dirs.push_back(h.word().inverse());
    }
    std::set<std::vector<int>> seen{{}};
    std::vector<Word> layer{Word::identity(target.rank())};
    if (target.trivial()) return true;
    for (int step = 0; step < maxlen; ++step) {
      std::vector<Word> next;
      for (auto& e : layer)
        for (auto& d : dirs) {
          Word f = e * d;
          if (!seen.insert(f.letters()).second) continue;
          if (f == target) return true;
          next.push_back(f);
        }
      layer = std::move(next);
      if (layer.empty()) break;
    }
    return false;
  }
  VertexGroupRef ref = c.group_ref(level);
  GroupElem target = c.reduce(level, x);
  AbVec tab = c.abelianize(level, target);
  std::vector<GroupElem> dirs;
  for (auto& h : hgens) {
    dirs.push_back(c.reduce(level, h));
    dirs.push_back(elem_inv(c, ref, dirs.back()));
  }
  std::vector<GroupElem> layer{elem_identity(c, ref)};
  std::set<std::string> seen{c.print_element(level, layer[0])};
  auto matches = [&](const GroupElem& e) {
    if (!(c.abelianize(level, e) == tab)) return false;
    return elem_equal(c, ref, e, target);
  };
  if (matches(layer[0])) return true;
  for (int step = 0; step < maxlen; ++step) {
    std::vector<GroupElem> next;
    for (auto& e : layer) {
      for (auto& d : dirs) {
        GroupElem f = c.reduce(level, elem_mul(c, ref, e, d));
        std::string key = c.print_element(level, f);
        if (!seen.insert(key).second) continue;
        if (matches(f)) return true;
        next.push_back(f);
      }
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return false;
}

std::optional<long long> brute_pcm(const ExtensionChain& c, int level,
                                   const std::vector<GroupElem>& hgens,
                                   const GroupElem& x, const GroupElem& g,
                                   int maxm, int maxlen) {
  VertexGroupRef ref = c.group_ref(level);
  GroupElem xinv = elem_inv(c, ref, x);
  for (int m = 1; m <= maxm; ++m) {
    GroupElem pos = elem_mul(c, ref, xinv, elem_pow(c, ref, g, m));
    if (brute_membership(c, level, hgens, pos, maxlen)) return m;
    GroupElem neg = elem_mul(c, ref, xinv, elem_pow(c, ref, g, -m));
    if (brute_membership(c, level, hgens, neg, maxlen)) return -m;
  }
  return std::nullopt;
}

namespace {

Lattice abelian_lattice(const ExtensionChain& c, int level,
                        const std::vector<GroupElem>& hgens) {
  std::vector<AbVec> rows;
  for (auto& h : hgens) rows.push_back(c.abelianize(level, h));
  return Lattice::from_generators(c.abelian_rank(), rows);
}

}  // namespace

bool abelian_pcm_impossible(const ExtensionChain& c, int level,
                            const std::vector<GroupElem>& hgens,
                            const GroupElem& x, const GroupElem& g) {
  Lattice l = abelian_lattice(c, level, hgens);
  return !l.power_coset(c.abelianize(level, x), c.abelianize(level, g))
              .has_value();
}

bool abelian_nonmember(const ExtensionChain& c, int level,
                       const std::vector<GroupElem>& hgens,
                       const GroupElem& x) {
  Lattice l = abelian_lattice(c, level, hgens);
  return !l.contains(c.abelianize(level, x));
}

KbSystem::KbSystem() {
  // t^e a^d -> a^d t^e for all sign choices, plus free reduction.
  for (int e : {3, -3})
    for (int d : {1, -1}) rules_.push_back({{e, d}, {d, e}});
  for (int l = 1; l <= 3; ++l) {
    rules_.push_back({{l, -l}, {}});
    rules_.push_back({{-l, l}, {}});
  }
  certify_confluence();
}

std::vector<int> KbSystem::rewrite(std::vector<int> w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < w.size() && !changed; ++i) {
      for (auto& r : rules_) {
        if (i + r.lhs.size() > w.size()) continue;
        if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<long>(i)))
          continue;
        std::vector<int> next(w.begin(), w.begin() + static_cast<long>(i));
        next.insert(next.end(), r.rhs.begin(), r.rhs.end());
        next.insert(next.end(), w.begin() + static_cast<long>(i + r.lhs.size()),
                    w.end());
        w = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

Word KbSystem::normal_form(const Word& w) const {
  if (w.rank() != 3)
    throw PreconditionError("rewriting system is for rank 3 words");
  return Word(3, rewrite(w.letters()));
}

void KbSystem::certify_confluence() const {
  // All left sides have length 2; check every overlap of one letter and
  // every pair of rules applying at the same position.
  for (auto& r1 : rules_) {
    for (auto& r2 : rules_) {
      if (r1.lhs.back() == r2.lhs.front()) {
        std::vector<int> w{r1.lhs[0], r1.lhs[1], r2.lhs[1]};
        std::vector<int> a(r1.rhs);
        a.push_back(r2.lhs[1]);
        std::vector<int> b{r1.lhs[0]};
        b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
        if (rewrite(a) != rewrite(b))
          throw Error("rewriting system failed local confluence");
      }
      if (r1.lhs == r2.lhs && rewrite(r1.rhs) != rewrite(r2.rhs))
        throw Error("rewriting system has conflicting rules");
    }
  }
}

}  // namespace gfold
