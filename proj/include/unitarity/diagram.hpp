#pragma once

// The Jakobsen diagram of a hermitian symmetric pair: the poset of
// noncompact positive roots grown from beta by adding compact simple roots,
// graded by height, with every node placed on an (height, branch) grid.

#include "unitarity/errors.hpp"
#include "unitarity/root_system.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace unitarity {

struct GridPosition {
  int height = 0;  // j in alpha_j^i
  int index = 0;   // i in alpha_j^i, 1-based

  std::string name() const { return "a" + std::to_string(height) + "^" + std::to_string(index); }
  friend bool operator==(const GridPosition&, const GridPosition&) = default;
};

struct DiagramEdge {
  std::size_t from = 0;    // node index
  std::size_t simple = 0;  // index into RootSystem::simple_roots() (>= 1)
  std::size_t to = 0;      // node index
};

struct DiagramNode {
  Root root;
  std::vector<int> coefficients;
  int height = 0;
  GridPosition grid;
};

// Orders two roots of equal height along the branch direction: index 1 is
// the root carrying the most weight on the low-numbered compact roots.
inline bool branch_before(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(b.begin() + 1, b.end(), a.begin() + 1, a.end());
}

class JakobsenDiagram {
 public:
  // The root system must outlive the diagram.
  explicit JakobsenDiagram(const RootSystem&& rs) = delete;
  explicit JakobsenDiagram(const RootSystem& rs) : rs_(&rs) {
    for (auto i : rs.noncompact_indices()) {
      const auto& pr = rs.positive_roots()[i];
      nodes_.push_back({pr.root, pr.coefficients, pr.height, {}});
    }
    std::stable_sort(nodes_.begin(), nodes_.end(), [](const DiagramNode& a, const DiagramNode& b) {
      if (a.height != b.height) return a.height < b.height;
      return branch_before(a.coefficients, b.coefficients);
    });
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      index_.emplace(nodes_[v].coefficients, v);
      auto& count = per_height_[nodes_[v].height];
      nodes_[v].grid = {nodes_[v].height, ++count};
    }
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      for (std::size_t k = 1; k < rs.rank(); ++k) {
        auto up = nodes_[v].coefficients;
        ++up[k];
        auto it = index_.find(up);
        if (it != index_.end()) edges_.push_back({v, k, it->second});
      }
    check_structure();
  }

  const RootSystem& root_system() const { return *rs_; }
  const std::vector<DiagramNode>& nodes() const { return nodes_; }
  const std::vector<DiagramEdge>& edges() const { return edges_; }
  int max_height() const { return nodes_.empty() ? 0 : nodes_.back().height; }
  int count_at_height(int h) const {
    auto it = per_height_.find(h);
    return it == per_height_.end() ? 0 : it->second;
  }

  std::optional<std::size_t> node_of(const Root& r) const {
    auto p = rs_->find_positive(r);
    if (!p) return std::nullopt;
    auto it = index_.find(rs_->positive_roots()[*p].coefficients);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const DiagramNode& node(const Root& r) const {
    auto v = node_of(r);
    if (!v) throw DomainError("not a noncompact positive root: " + to_string(r));
    return nodes_[*v];
  }

  int height(const Root& r) const { return node(r).height; }

  const Root& at(GridPosition g) const {
    for (const auto& n : nodes_)
      if (n.grid == g) return n.root;
    throw DomainError("no node at grid position " + g.name());
  }

  struct Cones {
    std::vector<Root> forward;
    std::vector<Root> backward;
  };

  Cones cones(const Root& base) const {
    if (!node_of(base)) throw DomainError("cone base is not a noncompact positive root: " + to_string(base));
    Cones c;
    for (const auto& n : nodes_) {
      if (rs_->dominates(n.root, base)) c.forward.push_back(n.root);
      if (rs_->dominates(base, n.root)) c.backward.push_back(n.root);
    }
    return c;
  }

  // Grid positions relative to the forward cone at `base`: heights are kept,
  // branch indices are renumbered inside the cone.
  std::map<Vector, GridPosition> cone_grid(const Root& base) const {
    std::map<Vector, GridPosition> out;
    std::map<int, int> counts;
    for (const auto& n : nodes_)
      if (rs_->dominates(n.root, base)) out[n.root.coords] = {n.height, ++counts[n.height]};
    return out;
  }

  // Harish-Chandra sequence: beta, then repeatedly the smallest root
  // orthogonal to everything chosen so far.
  std::vector<Root> split_rank_sequence() const {
    std::vector<const DiagramNode*> seq;
    while (true) {
      const DiagramNode* best = nullptr;
      for (const auto& n : nodes_) {
        bool orthogonal = std::all_of(seq.begin(), seq.end(), [&](const DiagramNode* g) {
          return rs_->coefficient_inner(g->coefficients, n.coefficients) == 0;
        });
        if (!orthogonal) continue;
        if (!best || n.height < best->height ||
            (n.height == best->height && n.root.coords < best->root.coords))
          best = &n;
      }
      if (!best) break;
      seq.push_back(best);
    }
    std::vector<Root> out;
    for (const auto* n : seq) out.push_back(n->root);
    return out;
  }

  std::size_t split_rank() const { return split_rank_sequence().size(); }

  struct HeightPairingRow {
    Root root;
    int height = 0;
    bool long_root = false;
    Rational expected;
    Rational actual;
    bool pass = false;
  };

  // <R, alpha> against its height formula, for every node.
  std::vector<HeightPairingRow> heights_pairing_check() const {
    std::vector<HeightPairingRow> rows;
    for (const auto& n : nodes_) {
      HeightPairingRow row;
      row.root = n.root;
      row.height = n.height;
      row.long_root = rs_->is_long(n.root);
      row.expected = expected_rho_pairing(n);
      row.actual = pairing(rs_->rho(), n.root);
      row.pass = row.expected == row.actual;
      rows.push_back(std::move(row));
    }
    return rows;
  }

 private:
  Rational expected_rho_pairing(const DiagramNode& n) const {
    const Rational h(n.height);
    switch (rs_->family().tag) {
      case FamilyTag::SP:
        return rs_->is_long(n.root) ? (h + 1) / 2 : h + 1;
      case FamilyTag::SOodd: {
        // Coroot height: sum of c_k (alpha_k, alpha_k) / (alpha, alpha).
        Rational s = 0;
        const Rational len = inner(n.root, n.root);
        for (std::size_t k = 0; k < n.coefficients.size(); ++k)
          s += n.coefficients[k] * inner(rs_->simple_roots()[k], rs_->simple_roots()[k]) / len;
        return s;
      }
      default:
        return h;
    }
  }

  void check_structure() const {
    if (nodes_.empty() || nodes_.front().root != rs_->beta() || count_at_height(1) != 1)
      throw InvariantViolation("beta is not the unique node of height 1");
    if (nodes_.back().root != rs_->gamma_r() || count_at_height(max_height()) != 1)
      throw InvariantViolation("gamma_r is not the unique top node");
    std::vector<int> out_degree(nodes_.size(), 0), in_degree(nodes_.size(), 0);
    for (const auto& e : edges_) {
      ++out_degree[e.from];
      ++in_degree[e.to];
      if (nodes_[e.to].height != nodes_[e.from].height + 1)
        throw InvariantViolation("edge does not raise height by one");
    }
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (out_degree[v] > 2) throw InvariantViolation("more than two arrows leave a node");
      if (v > 0 && in_degree[v] == 0) throw InvariantViolation("node unreachable from beta");
    }
  }

  const RootSystem* rs_;
  std::vector<DiagramNode> nodes_;
  std::vector<DiagramEdge> edges_;
  std::map<std::vector<int>, std::size_t> index_;
  std::map<int, int> per_height_;
};

inline JakobsenDiagram build_diagram(const RootSystem& rs) { return JakobsenDiagram(rs); }

// "beta+2mu6+mu7" style name of a root from its simple coefficients.
inline std::string simple_expansion(const RootSystem& rs, const Vector& coefficients) {
  std::string s;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Rational& c = coefficients[k];
    if (c == 0) continue;
    if (c < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1) s += to_string(a);
    s += rs.simple_name(k);
  }
  return s.empty() ? "0" : s;
}

inline std::string simple_expansion(const RootSystem& rs, const Weight& w) {
  return simple_expansion(rs, rs.simple_coefficients(w));
}

enum class RenderFormat { Ascii, Dot };

inline RenderFormat parse_render_format(const std::string& s) {
  if (s == "ascii") return RenderFormat::Ascii;
  if (s == "dot") return RenderFormat::Dot;
  throw ParameterError("unknown diagram format '" + s + "' (expected ascii or dot)");
}

// Rows by height from the top root down; `marked` roots (the split-rank
// overlay) get a '*'.
inline std::string render(const JakobsenDiagram& d, RenderFormat format,
                          const std::vector<Root>& marked = {}) {
  const RootSystem& rs = d.root_system();
  std::set<Vector> mark;
  for (const auto& r : marked) mark.insert(r.coords);
  auto expansion = [&](const DiagramNode& n) {
    Vector c(n.coefficients.begin(), n.coefficients.end());
    return simple_expansion(rs, c);
  };
  std::ostringstream out;
  if (format == RenderFormat::Ascii) {
    out << "# " << rs.family().name() << ": " << d.nodes().size() << " noncompact positive roots, "
        << d.edges().size() << " edges\n";
    for (int h = d.max_height(); h >= 1; --h) {
      out << "h" << h << ":";
      for (const auto& n : d.nodes())
        if (n.height == h) out << " [" << n.grid.name() << (mark.count(n.root.coords) ? "*" : "") << "]";
      out << "\n";
    }
    out << "nodes:\n";
    for (const auto& n : d.nodes())
      out << "  " << n.grid.name() << (mark.count(n.root.coords) ? "*" : "") << " = " << expansion(n)
          << " " << to_string(n.root) << "\n";
    out << "edges:\n";
    for (const auto& e : d.edges())
      out << "  " << d.nodes()[e.from].grid.name() << " -" << rs.simple_name(e.simple) << "-> "
          << d.nodes()[e.to].grid.name() << "\n";
    return out.str();
  }

  out << "digraph \"" << rs.family().name() << "\" {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (int h = 1; h <= d.max_height(); ++h) {
    out << "  { rank=same;";
    for (const auto& n : d.nodes())
      if (n.height == h) out << " \"" << n.grid.name() << "\";";
    out << " }\n";
  }
  for (const auto& n : d.nodes()) {
    out << "  \"" << n.grid.name() << "\" [label=\"" << n.grid.name() << "\\n" << expansion(n)
        << "\\nheight " << n.height << "\"";
    if (mark.count(n.root.coords)) out << ", style=filled, fillcolor=\"#f4d03f\"";
    out << "];\n";
  }
  for (const auto& e : d.edges())
    out << "  \"" << d.nodes()[e.from].grid.name() << "\" -> \"" << d.nodes()[e.to].grid.name()
        << "\" [label=\"" << rs.simple_name(e.simple) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace unitarity
