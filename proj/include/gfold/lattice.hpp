#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfold/abvec.hpp"
#include "gfold/word.hpp"

namespace gfold {

// Integer lattice (subgroup of Z^r) in row Hermite normal form, together with
// the transform expressing the HNF basis over the original generators.
class Lattice {
 public:
  static Lattice from_generators(int rank, const std::vector<AbVec>& gens);

  int ambient_rank() const { return rank_; }
  const std::vector<AbVec>& basis() const { return hnf_; }
  int dim() const { return static_cast<int>(hnf_.size()); }

  bool contains(const AbVec& v) const;
  std::optional<std::vector<long long>> coords(const AbVec& v) const;

  // Expression over the original generators, as a word g1^e1 g2^e2 ...
  std::optional<Word> express(const AbVec& v) const;

  long long cyclic_exponent(const AbVec& c) const;  // L ∩ <c> = <k c>

  // Minimal-|m| nonzero m with m*g ≡ x (mod L), positive preferred on ties.
  std::optional<long long> power_coset(const AbVec& x, const AbVec& g) const;

  struct CosetHit {
    long long n;
    AbVec element;  // a + n*c
    Word expr;      // over original generators
  };
  std::optional<CosetHit> coset_intersect_cyclic(const AbVec& a,
                                                 const AbVec& c) const;

  std::string to_text() const;

 private:
  int rank_ = 0;
  std::vector<AbVec> hnf_;
  std::vector<std::vector<long long>> transform_;  // hnf_ = transform_ * gens

  // Any integer solution m of m*g - x in L, via HNF of [g; basis].
  std::optional<long long> solve_translate(const AbVec& x, const AbVec& g) const;
};

// Row HNF with transform: returns (hnf rows, U) with hnf = U_top * rows and
// the remaining rows of U spanning the left kernel.
struct HnfResult {
  std::vector<AbVec> rows;                        // nonzero HNF rows
  std::vector<std::vector<long long>> transform;  // one row per HNF row
  std::vector<std::vector<long long>> kernel;     // left kernel basis
};
HnfResult hermite_normal_form(int rank, const std::vector<AbVec>& rows);

}  // namespace gfold
