#pragma once

// JSON and TSV renderings of classifier, diagram, catalog and oracle
// results. Rationals are always strings ("p" or "p/q"); key order is fixed.

#include "unitarity/classifier.hpp"
#include "unitarity/diagram.hpp"
#include "unitarity/hwv.hpp"
#include "unitarity/shapovalov.hpp"

#include "json.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace unitarity::report {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json rational(const Rational& r) { return to_string(r); }

inline Json coords(const Weight& w) {
  Json a = Json::array();
  for (const auto& x : w.coords) a.push_back(to_string(x));
  return a;
}

inline Json labels_json(const RootSystem& rs, const Labels& labels) {
  Json j = Json::object();
  for (int k : rs.compact_labels()) {
    auto it = labels.find(k);
    j["mu" + std::to_string(k)] = it == labels.end() ? 0 : it->second;
  }
  return j;
}

inline std::string grid_name(const JakobsenDiagram& d, const Root& r) { return d.node(r).grid.name(); }

inline Json root_json(const JakobsenDiagram& d, const Root& r) {
  const RootSystem& rs = d.root_system();
  Json j;
  j["grid"] = grid_name(d, r);
  j["expansion"] = simple_expansion(rs, r);
  j["coords"] = coords(r);
  return j;
}

inline Json classification_json(const RootSystem& rs, const ClassificationResult& c,
                                const std::vector<Rational>& lambdas) {
  JakobsenDiagram d(rs);
  Json j;
  j["schema"] = "unitarity.classify";
  j["schema_version"] = schema_version;
  j["family"] = rs.family().name();
  j["labels"] = labels_json(rs, c.labels);
  j["lambda0"] = rational(c.lambda0);
  j["alpha0"] = root_json(d, c.alpha0);
  j["alpha0_tie"] = c.alpha0_tie;
  j["lambda_s"] = rational(c.lambda_s);
  j["reduction_level"] = c.reduction_level;
  j["last_isolated_place"] = rational(c.last_isolated_place);
  Json missing = Json::array();
  for (const auto& m : c.missing) {
    Json mj;
    mj["order"] = m.order;
    mj["lambda_q"] = rational(m.lambda_q);
    mj["omega"] = simple_expansion(rs, m.omega_q);
    Json roots = Json::array();
    for (std::size_t i = 0; i < m.contributing.size(); ++i) {
      Json r = root_json(d, m.contributing[i]);
      r["multiplicity"] = rational(m.coefficients[i]);
      roots.push_back(std::move(r));
    }
    mj["roots"] = std::move(roots);
    mj["highest_weight_plus_rho"] = coords(m.highest_weight);
    Json cert = Json::array();
    if (m.certificate)
      for (const auto& step : *m.certificate) cert.push_back({{"root", grid_name(d, step.root)}, {"n", rational(step.multiplicity)}});
    mj["certificate"] = m.certificate ? std::move(cert) : Json(nullptr);
    mj["alternatives"] = m.alternatives;
    missing.push_back(std::move(mj));
  }
  j["missing"] = std::move(missing);
  Json verdicts = Json::array();
  for (const auto& l : lambdas) {
    auto v = unitarity_verdict(c, l);
    verdicts.push_back({{"lambda", rational(l)}, {"verdict", v.name()}, {"order", v.order}});
  }
  j["verdicts"] = std::move(verdicts);
  j["inconsistencies"] = c.inconsistencies;
  return j;
}

inline std::string classification_tsv(const RootSystem& rs, const ClassificationResult& c,
                                      const std::vector<Rational>& lambdas) {
  JakobsenDiagram d(rs);
  std::ostringstream out;
  out << "key\tvalue\n";
  out << "family\t" << rs.family().name() << "\n";
  out << "lambda0\t" << to_string(c.lambda0) << "\n";
  out << "alpha0\t" << grid_name(d, c.alpha0) << "\n";
  out << "lambda_s\t" << to_string(c.lambda_s) << "\n";
  out << "reduction_level\t" << c.reduction_level << "\n";
  out << "last_isolated_place\t" << to_string(c.last_isolated_place) << "\n";
  out << "\norder\tlambda_q\tomega\troots\tcertificate\n";
  for (const auto& m : c.missing) {
    out << m.order << "\t" << to_string(m.lambda_q) << "\t" << simple_expansion(rs, m.omega_q) << "\t";
    for (std::size_t i = 0; i < m.contributing.size(); ++i)
      out << (i ? "," : "") << (m.coefficients[i] != 1 ? to_string(m.coefficients[i]) + "*" : "")
          << grid_name(d, m.contributing[i]);
    out << "\t";
    if (m.certificate)
      for (std::size_t i = 0; i < m.certificate->size(); ++i)
        out << (i ? "," : "") << grid_name(d, (*m.certificate)[i].root) << ":" << to_string((*m.certificate)[i].multiplicity);
    else
      out << "-";
    out << "\n";
  }
  out << "\nlambda\tverdict\torder\n";
  for (const auto& l : lambdas) {
    auto v = unitarity_verdict(c, l);
    out << to_string(l) << "\t" << v.name() << "\t" << v.order << "\n";
  }
  return out.str();
}

inline Json diagram_json(const JakobsenDiagram& d, bool with_split_rank) {
  const RootSystem& rs = d.root_system();
  Json j;
  j["schema"] = "unitarity.diagram";
  j["schema_version"] = schema_version;
  j["family"] = rs.family().name();
  j["max_height"] = d.max_height();
  Json nodes = Json::array();
  for (const auto& n : d.nodes()) {
    Json nj = root_json(d, n.root);
    nj["height"] = n.height;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : d.edges())
    edges.push_back({{"from", d.nodes()[e.from].grid.name()},
                     {"simple", rs.simple_name(e.simple)},
                     {"to", d.nodes()[e.to].grid.name()}});
  j["edges"] = std::move(edges);
  if (with_split_rank) {
    Json seq = Json::array();
    for (const auto& r : d.split_rank_sequence()) seq.push_back(grid_name(d, r));
    j["split_rank"] = seq.size();
    j["split_rank_sequence"] = std::move(seq);
  }
  return j;
}

inline std::string diagram_tsv(const JakobsenDiagram& d, bool with_split_rank) {
  const RootSystem& rs = d.root_system();
  std::set<Vector> marked;
  if (with_split_rank)
    for (const auto& r : d.split_rank_sequence()) marked.insert(r.coords);
  std::ostringstream out;
  out << "grid\theight\texpansion\tcoords" << (with_split_rank ? "\tsplit_rank" : "") << "\n";
  for (const auto& n : d.nodes()) {
    out << n.grid.name() << "\t" << n.height << "\t" << simple_expansion(rs, n.root) << "\t" << to_string(n.root);
    if (with_split_rank) out << "\t" << (marked.count(n.root.coords) ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

inline Json catalog_json(const CatalogReport& r) {
  Json j;
  j["schema"] = "unitarity.catalog";
  j["schema_version"] = schema_version;
  j["passed"] = r.passed();
  j["total"] = r.entries.size();
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json ej;
    ej["id"] = e.id;
    ej["family"] = e.family;
    ej["pass"] = e.pass();
    ej["symbolic"] = e.symbolic_pass;
    if (!e.symbolic_detail.empty()) ej["symbolic_detail"] = e.symbolic_detail;
    Json inst = Json::array();
    for (const auto& i : e.instantiations) {
      Json ij;
      ij["values"] = i.values;
      ij["drop"] = i.drop_matches;
      ij["classifier"] = i.classifier_matches;
      if (!i.detail.empty()) ij["detail"] = i.detail;
      inst.push_back(std::move(ij));
    }
    ej["instantiations"] = std::move(inst);
    ej["repairs"] = e.repairs;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline std::string catalog_tsv(const CatalogReport& r) {
  std::ostringstream out;
  out << "id\tfamily\tsymbolic\tinstantiations\trepairs\tpass\n";
  for (const auto& e : r.entries) {
    std::size_t ok = 0;
    for (const auto& i : e.instantiations) ok += i.drop_matches && i.classifier_matches;
    out << e.id << "\t" << e.family << "\t" << (e.symbolic_pass ? "ok" : "FAIL") << "\t" << ok << "/"
        << e.instantiations.size() << "\t" << e.repairs.size() << "\t" << (e.pass() ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

inline std::string weight_key_name(const ShapovalovOracle& o, const WeightKey& w) { return o.weight_name(w); }

inline Json concordance_json(const ShapovalovOracle& o, const Concordance& c,
                             const std::vector<RankOneCheck>& rank_one) {
  Json j;
  j["schema"] = "unitarity.oracle";
  j["schema_version"] = schema_version;
  j["algebra"] = c.algebra;
  j["labels"] = labels_json(o.algebra().root_system(), c.labels);
  j["max_degree"] = o.max_degree();
  j["weights_scanned"] = o.weights().size();
  j["agree"] = c.agree();
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json rj;
    rj["lambda"] = rational(r.lambda);
    rj["verdict"] = r.verdict.name();
    rj["psd"] = r.positive_semidefinite;
    rj["first_negative"] = r.first_negative ? Json(weight_key_name(o, *r.first_negative)) : Json(nullptr);
    Json sing = Json::array();
    for (const auto& [w, n] : r.singular) sing.push_back({{"omega", weight_key_name(o, w)}, {"dimension", n}});
    rj["singular"] = std::move(sing);
    Json exp = Json::array();
    for (const auto& w : r.expected) exp.push_back(weight_key_name(o, w));
    rj["expected"] = std::move(exp);
    rj["agree"] = r.agree;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  if (!rank_one.empty()) {
    Json checks = Json::array();
    for (const auto& r : rank_one)
      checks.push_back({{"degree", r.degree}, {"computed", to_string(r.computed)}, {"expected", to_string(r.expected)}, {"pass", r.pass}});
    j["rank_one"] = std::move(checks);
  }
  return j;
}

inline std::string concordance_tsv(const ShapovalovOracle& o, const Concordance& c,
                                   const std::vector<RankOneCheck>& rank_one) {
  std::ostringstream out;
  out << "lambda\tverdict\tpsd\tfirst_negative\tsingular\texpected\tagree\n";
  for (const auto& r : c.rows) {
    out << to_string(r.lambda) << "\t" << r.verdict.name() << "\t" << (r.positive_semidefinite ? "PSD" : "not-PSD") << "\t"
        << (r.first_negative ? weight_key_name(o, *r.first_negative) : "-") << "\t";
    if (r.singular.empty()) out << "-";
    for (std::size_t i = 0; i < r.singular.size(); ++i)
      out << (i ? "," : "") << weight_key_name(o, r.singular[i].first) << "x" << r.singular[i].second;
    out << "\t";
    if (r.expected.empty()) out << "-";
    for (std::size_t i = 0; i < r.expected.size(); ++i) out << (i ? "," : "") << weight_key_name(o, r.expected[i]);
    out << "\t" << (r.agree ? "yes" : "NO") << "\n";
  }
  if (!rank_one.empty()) {
    out << "\ndegree\tcomputed\texpected\tpass\n";
    for (const auto& r : rank_one)
      out << r.degree << "\t" << to_string(r.computed) << "\t" << to_string(r.expected) << "\t" << (r.pass ? "yes" : "NO") << "\n";
  }
  return out.str();
}

}  // namespace unitarity::report
