#pragma once

#include "tads/affine.hpp"
#include "tads/feasibility.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tads {

namespace nn {
struct Plnn;
}

enum class TerminalKind { Affine, Class, Bool, Bottom };

/// Leaf payload. Class labels are 1-based running-maximum indices.
/// Bottom marks inputs excluded by a precondition.
struct Terminal {
  TerminalKind kind = TerminalKind::Bottom;
  AffineFunction affine;
  int label = 0;
  bool value = false;

  static Terminal make_affine(AffineFunction a);
  static Terminal make_class(int label);
  static Terminal make_bool(bool v);
  static Terminal make_bottom();
};

using NodeId = std::uint32_t;

struct Node {
  bool leaf = true;
  Terminal term;
  LinearPredicate pred;  // inner nodes only
  NodeId on_true = 0;
  NodeId on_false = 0;
};

/// Deduplicating node table. Structurally equal nodes (predicates compared by
/// their canonical keys) are stored once; redundant tests collapse on
/// creation. Single-owner while a structure is being built, immutable and
/// freely shareable afterwards.
class NodeStore {
public:
  explicit NodeStore(Index input_dim) : dim_(input_dim) {}

  NodeId terminal(Terminal t);
  NodeId node(const LinearPredicate& p, NodeId on_true, NodeId on_false);
  NodeId bottom() { return terminal(Terminal::make_bottom()); }

  const Node& at(NodeId id) const { return nodes_[id]; }
  Index input_dim() const { return dim_; }
  std::size_t stored_nodes() const { return nodes_.size(); }

private:
  Index dim_ = 0;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeId> unique_;
};

class Tads {
public:
  Tads(std::shared_ptr<NodeStore> store, NodeId root)
      : store_(std::move(store)), root_(root) {}

  const NodeStore& store() const { return *store_; }
  const std::shared_ptr<NodeStore>& store_ptr() const { return store_; }
  NodeId root() const { return root_; }
  Index input_dim() const { return store_->input_dim(); }
  const Node& node(NodeId id) const { return store_->at(id); }

private:
  std::shared_ptr<NodeStore> store_;
  NodeId root_ = 0;
};

struct EvalResult {
  TerminalKind kind = TerminalKind::Bottom;
  Vector value;  // affine terminal applied to the input
  int label = 0;
  bool flag = false;

  bool is_bottom() const { return kind == TerminalKind::Bottom; }
};

/// Decision-tree style evaluation; TRUE branch iff <w,x> + b > 0.
EvalResult evaluate(const Tads& t, const Vector& x);

struct PruneStats {
  std::size_t lp_calls = 0;
  std::size_t pruned_branches = 0;
  std::size_t interval_cuts = 0;  // branches settled by interval bounds alone
  bool indeterminate = false;     // some feasibility call abstained
};

struct BuildOptions {
  bool prune = true;
  LpOptions lp;
  PruneStats* stats = nullptr;

  static BuildOptions no_prune() {
    BuildOptions o;
    o.prune = false;
    return o;
  }
};

Tads from_terminal(Terminal t, Index input_dim);
Tads from_affine(AffineFunction a);

/// Pointwise sum; both operands need equal input and terminal output
/// dimensions. Bottom absorbs.
Tads lift_add(const Tads& a, const Tads& b,
              const BuildOptions& opts = BuildOptions::no_prune());
Tads lift_scale(double s, const Tads& t);

/// Function composition with `first` applied to the input first:
/// evaluate(compose(t1, t2), x) = evaluate(t2, t1(x)). Every affine terminal
/// of `first` grafts a copy of `second` whose predicates and terminals are
/// rewritten through that terminal. Infeasible branches are elided when
/// pruning is on.
Tads compose(const Tads& first, const Tads& second, const BuildOptions& opts = {});

/// Componentwise max(0, x) over R^k as a depth-k decision structure with
/// 0/1-diagonal terminals.
Tads relu_layer(Index k);

/// Compiles a network, optionally restricted to a region; outside the region
/// the result reaches Bottom. Pruning applies at every composition stage.
Tads from_network(const nn::Plnn& net, const std::optional<Polytope>& region = {},
                  const BuildOptions& opts = {});

/// Running-maximum comparison chain over R^m with Class terminals; ties go to
/// the smaller index (a later coordinate wins only on strict excess).
Tads argmax_tads(Index m);

/// Relabels Class(c) terminals to Bool(true) and all other classes to
/// Bool(false); reduction may collapse the structure.
Tads class_indicator(const Tads& t, int label);

/// restrict-to-S: evaluates as t inside S, Bottom outside. With pruning,
/// branch tests that are constant on the reachable region are elided and
/// unreachable subgraphs never materialize.
Tads precondition_project(const Tads& t, const Polytope& S,
                          const BuildOptions& opts = {});

struct PathRegion {
  Polytope region;
  Terminal terminal;
};

using TerminalSelector = std::function<bool(const Terminal&)>;

/// Root-to-terminal paths whose terminal matches the selector (default: every
/// non-Bottom terminal). TRUE branches contribute strict >, FALSE branches
/// non-strict <=. With check_feasibility set, infeasible paths are dropped.
std::vector<PathRegion> enumerate_paths(const Tads& t,
                                        const TerminalSelector& selector = {},
                                        bool check_feasibility = false,
                                        const LpOptions& lp = {});

struct TadsSize {
  std::size_t inner = 0;
  std::size_t terminals = 0;
  std::size_t total() const { return inner + terminals; }
};

TadsSize tads_size(const Tads& t);

std::string to_dot(const Tads& t);
std::string to_json_text(const Tads& t);
Tads tads_from_json_text(const std::string& text);

}  // namespace tads
