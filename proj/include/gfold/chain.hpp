#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gfold/gog.hpp"
#include "gfold/presentation.hpp"

namespace gfold {

class VertexOracle;

// Iterated centralizer extension chain over a free base group: level 0 is
// free of rank k, and level i+1 is the fundamental group of a two-vertex
// graph of groups amalgamating level i with Z^{r_i+1} over the cyclic
// subgroup generated by a chosen center g_i.
class ExtensionChain {
 public:
  struct LevelSpec {
    std::string center_text;
    int extra_rank = 1;
  };

  static ExtensionChain build(int base_rank,
                              const std::vector<LevelSpec>& specs);
  // Line-oriented chain file: `base <k>` then `extend g=<word> rank <r>`;
  // `#` starts a comment.
  static ExtensionChain parse_text(const std::string& text);
  static ExtensionChain from_file(const std::string& path);

  int base_rank() const { return base_rank_; }
  int levels() const { return static_cast<int>(graphs_.size()); }
  const GraphOfGroups& graph(int i) const {
    return graphs_.at(static_cast<size_t>(i));
  }
  const GroupElem& center(int i) const {
    return centers_.at(static_cast<size_t>(i));
  }
  int extra_rank(int i) const { return extra_ranks_.at(static_cast<size_t>(i)); }

  VertexGroupRef group_ref(int level) const;
  VertexGroupRef vertex_ref(int graph_idx, int vertex) const;

  // Alphabet of G_level: base letters then t<j>.<s> for each level j <= level.
  int letter_count(int level) const;
  std::string letter_name(int level, int idx) const;          // 1-based
  GroupElem letter_elem(int level, int idx) const;
  const std::vector<std::string>& base_names() const { return base_names_; }

  GroupElem parse_element(int level, const std::string& text) const;
  std::string print_element(int level, const GroupElem& e) const;

  GroupElem embed(int from_level, int to_level, const GroupElem& e) const;
  GroupElem reduce(int level, const GroupElem& e) const;
  bool word_problem(int level, const GroupElem& e) const;
  bool word_problem(int level, const std::string& text) const;

  // Presentation for the subgroup of G_level generated by the given elements.
  Presentation subgroup_presentation(int level,
                                     const std::vector<GroupElem>& gens) const;
  Presentation subgroup_presentation(int level,
                                     const std::vector<std::string>& gens) const;

  // Abelianization G_n -> Z^{k + sum r_i}; level tells how to read e.
  AbVec abelianize(int level, const GroupElem& e) const;
  int abelian_rank() const;

  // Validation notes recorded while building (center root checks etc).
  const std::vector<std::string>& notes() const { return notes_; }

  // Shared oracle cache, keyed by ref + ordered generator prints.
  std::shared_ptr<VertexOracle> oracle(const VertexGroupRef& ref,
                                       const std::vector<GroupElem>& gens) const;

  long long fold_budget = 1000000;
  long long node_budget = 1000000;

 private:
  int base_rank_ = 0;
  std::vector<std::string> base_names_;
  std::vector<GraphOfGroups> graphs_;
  std::vector<GroupElem> centers_;
  std::vector<int> extra_ranks_;
  std::vector<std::string> notes_;

  mutable std::map<std::string, std::shared_ptr<VertexOracle>> oracle_cache_;

  void add_level(const std::string& center_text, int extra_rank);
  void validate_center(int level, const GroupElem& g, const std::string& text);
};

}  // namespace gfold
