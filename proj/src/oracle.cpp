#include "gfold/oracle.hpp"

#include <algorithm>

#include "gfold/adjust.hpp"
#include "gfold/agraph.hpp"
#include "gfold/errors.hpp"
#include "gfold/pcm.hpp"
#include "gfold/readpower.hpp"

namespace gfold {

VertexOracle::VertexOracle(const ExtensionChain& chain, VertexGroupRef ref,
                           std::vector<GroupElem> gens)
    : chain_(chain), ref_(ref), gens_(std::move(gens)) {
  all_trivial_ = true;
  for (auto& g : gens_)
    if (!elem_trivial(chain_, ref_, g)) all_trivial_ = false;
  if (all_trivial_) return;
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free: {
      std::vector<Word> ws;
      for (auto& g : gens_) ws.push_back(g.word());
      aut_ = StallingsAutomaton::build(ref_.param, ws);
      break;
    }
    case VertexGroupRef::Kind::Abelian: {
      std::vector<AbVec> vs;
      for (auto& g : gens_) vs.push_back(g.vec());
      lat_ = Lattice::from_generators(ref_.param, vs);
      break;
    }
    case VertexGroupRef::Kind::Pi: {
      std::vector<APath> ps;
      for (auto& g : gens_) ps.push_back(path_reduce(chain_, g.path()));
      pi_ = std::make_shared<const AGraph>(
          build_subgroup_graph(chain_, ref_.param, 0, ps));
      break;
    }
  }
}

VertexOracle::~VertexOracle() = default;

std::shared_ptr<const AGraph> VertexOracle::pi_graph() const { return pi_; }

std::string VertexOracle::key(const GroupElem& e) const {
  return elem_str(chain_, ref_, e);
}

std::optional<Word> VertexOracle::membership(const GroupElem& w) const {
  int m = static_cast<int>(gens_.size());
  if (all_trivial_) {
    if (elem_trivial(chain_, ref_, w)) return Word::identity(m);
    return std::nullopt;
  }
  std::string k = key(w);
  auto it = member_cache_.find(k);
  if (it != member_cache_.end()) return it->second;
  std::optional<Word> out;
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free:
      out = aut_->express(w.word());
      break;
    case VertexGroupRef::Kind::Abelian:
      out = lat_->express(w.vec());
      break;
    case VertexGroupRef::Kind::Pi: {
      APath p = path_reduce(chain_, w.path());
      auto q = sc_first(chain_, *pi_, p, pi_->u0, pi_->u0);
      if (q) out = psi(chain_, *pi_, *q);
      break;
    }
  }
  member_cache_.emplace(std::move(k), out);
  return out;
}

long long VertexOracle::cyclic_exponent(const GroupElem& c) const {
  if (elem_trivial(chain_, ref_, c))
    throw PreconditionError("cyclic intersection against a trivial element");
  if (all_trivial_) return 0;
  std::string k = key(c);
  auto it = cyc_cache_.find(k);
  if (it != cyc_cache_.end()) return it->second;
  long long out = 0;
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free:
      out = aut_->cyclic_exponent(c.word());
      break;
    case VertexGroupRef::Kind::Abelian:
      out = lat_->cyclic_exponent(c.vec());
      break;
    case VertexGroupRef::Kind::Pi: {
      auto [core, conj] = cyclically_reduce(chain_, c.path());
      APath conj_inv = path_inv(chain_, conj);
      std::vector<APath> moved;
      for (auto& g : gens_)
        moved.push_back(path_mul(chain_, conj_inv,
                                 path_mul(chain_, g.path(), conj)));
      if (core.length() == 0) {
        AGraph bz = build_subgroup_graph(chain_, ref_.param, core.start, moved);
        auto sub = chain_.oracle(
            chain_.vertex_ref(core.graph, core.start),
            bz.verts[static_cast<size_t>(bz.u0)].gens);
        GroupElem val = core.elems[0];
        if (elem_trivial(chain_, chain_.vertex_ref(core.graph, core.start),
                         val))
          out = 0;
        else
          out = sub->cyclic_exponent(val);
      } else {
        AGraph bz = build_subgroup_graph(chain_, ref_.param, core.start, moved);
        ReadPowerStats stats;
        auto res = read_power(chain_, bz, core, bz.u0, bz.u0, std::nullopt,
                              &stats, false);
        out = res ? res->m : 0;
      }
      break;
    }
  }
  cyc_cache_.emplace(std::move(k), out);
  return out;
}

std::optional<VertexOracle::Hit> VertexOracle::coset_intersect_cyclic(
    const GroupElem& a, const GroupElem& c) const {
  if (auto expr = membership(a)) return Hit{0, a, *expr};
  if (elem_trivial(chain_, ref_, c)) return std::nullopt;
  if (all_trivial_) {
    // H = 1: need a * c^n = 1.
    auto n = elem_power_of(chain_, ref_, elem_inv(chain_, ref_, a), c);
    if (!n) return std::nullopt;
    return Hit{*n, elem_identity(chain_, ref_),
               Word::identity(static_cast<int>(gens_.size()))};
  }
  std::optional<long long> n;
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free: {
      auto hit = aut_->coset_intersect_cyclic(a.word(), c.word());
      if (!hit) return std::nullopt;
      return Hit{hit->n, GroupElem(hit->element), hit->expr};
    }
    case VertexGroupRef::Kind::Abelian: {
      auto hit = lat_->coset_intersect_cyclic(a.vec(), c.vec());
      if (!hit) return std::nullopt;
      return Hit{hit->n, GroupElem(hit->element), hit->expr};
    }
    case VertexGroupRef::Kind::Pi: {
      std::vector<APath> hp;
      for (auto& g : gens_) hp.push_back(g.path());
      APath xinv = path_inv(chain_, a.path());
      auto res = pcm(chain_, ref_.param, a.path().start, hp, xinv, c.path());
      if (!res) return std::nullopt;
      n = res->m;
      break;
    }
  }
  GroupElem elem =
      elem_mul(chain_, ref_, a, elem_pow(chain_, ref_, c, *n));
  auto expr = membership(elem);
  if (!expr)
    throw Error("internal: coset hit failed the membership recheck");
  return Hit{*n, elem, *expr};
}

std::optional<long long> VertexOracle::power_coset(const GroupElem& x,
                                                   const GroupElem& g) const {
  if (elem_trivial(chain_, ref_, g))
    throw PreconditionError("power coset with trivial g");
  if (all_trivial_) {
    auto m = elem_power_of(chain_, ref_, x, g);
    if (m && *m != 0) return m;
    return std::nullopt;
  }
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free:
      return aut_->power_coset(x.word(), g.word());
    case VertexGroupRef::Kind::Abelian:
      return lat_->power_coset(x.vec(), g.vec());
    case VertexGroupRef::Kind::Pi: {
      std::vector<APath> hp;
      for (auto& gg : gens_) hp.push_back(gg.path());
      auto res = pcm(chain_, ref_.param, x.path().start, hp, x.path(),
                     g.path());
      if (!res) return std::nullopt;
      return res->m;
    }
  }
  return std::nullopt;
}

const VertexOracle::LocalPresentation& VertexOracle::local_presentation()
    const {
  if (local_pres_) return *local_pres_;
  LocalPresentation lp;
  if (all_trivial_) {
    local_pres_ = std::move(lp);
    return *local_pres_;
  }
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free:
      for (auto& b : aut_->tree_basis()) lp.values.push_back(GroupElem(b));
      break;
    case VertexGroupRef::Kind::Abelian: {
      int n = lat_->dim();
      for (auto& b : lat_->basis()) lp.values.push_back(GroupElem(b));
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          lp.relators.push_back(Word(n, {i, j, -i, -j}));
      break;
    }
    case VertexGroupRef::Kind::Pi: {
      reader_ = std::make_shared<const PresReader>(
          extract_presentation_reader(chain_, pi_));
      lp.values = reader_->values;
      lp.relators = reader_->pres.relators;
      break;
    }
  }
  local_pres_ = std::move(lp);
  return *local_pres_;
}

std::optional<Word> VertexOracle::express_local(const GroupElem& w) const {
  const auto& lp = local_presentation();
  int n = static_cast<int>(lp.values.size());
  if (all_trivial_) {
    if (elem_trivial(chain_, ref_, w)) return Word::identity(n);
    return std::nullopt;
  }
  switch (ref_.kind) {
    case VertexGroupRef::Kind::Free:
      return aut_->express_in_basis(w.word());
    case VertexGroupRef::Kind::Abelian: {
      auto coords = lat_->coords(w.vec());
      if (!coords) return std::nullopt;
      Word out = Word::identity(n);
      for (int i = 0; i < n; ++i)
        out = out * Word::letter(n, i + 1).pow((*coords)[static_cast<size_t>(i)]);
      return out;
    }
    case VertexGroupRef::Kind::Pi: {
      APath p = path_reduce(chain_, w.path());
      auto q = sc_first(chain_, *pi_, p, pi_->u0, pi_->u0);
      if (!q) return std::nullopt;
      return reader_express(chain_, *reader_, *q);
    }
  }
  return std::nullopt;
}

}  // namespace gfold
