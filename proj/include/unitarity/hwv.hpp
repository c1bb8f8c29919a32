#pragma once

// Formal highest weight vectors: products of (possibly negative or
// fractional) powers of simple lowering operators. Only the weight
// bookkeeping is checked here: the exponents must telescope so that the net
// lowering is the claimed drop, for every value of the label parameters.

#include "unitarity/classifier.hpp"
#include "unitarity/errors.hpp"
#include "unitarity/root_system.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace unitarity {

// c + sum_k a_k n_k over named integer parameters.
struct AffineForm {
  std::map<std::string, Rational> coefficients;
  Rational constant;

  AffineForm() = default;
  AffineForm(Rational c) : constant(std::move(c)) {}  // NOLINT: implicit by design

  static AffineForm parameter(const std::string& name) {
    AffineForm f;
    f.coefficients[name] = 1;
    return f;
  }

  bool is_constant() const {
    for (const auto& [name, a] : coefficients)
      if (a != 0) return false;
    return true;
  }

  Rational evaluate(const std::map<std::string, long long>& values) const {
    Rational v = constant;
    for (const auto& [name, a] : coefficients) {
      if (a == 0) continue;
      auto it = values.find(name);
      if (it == values.end()) throw ParameterError("no value for parameter " + name);
      v += a * Rational(it->second);
    }
    return v;
  }

  AffineForm& operator+=(const AffineForm& o) {
    for (const auto& [name, a] : o.coefficients) coefficients[name] += a;
    constant += o.constant;
    return *this;
  }
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator*(const Rational& c, AffineForm a) {
    for (auto& [name, x] : a.coefficients) x *= c;
    a.constant *= c;
    return a;
  }
  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    AffineForm d = a + Rational(-1) * b;
    return d.is_constant() && d.constant == 0;
  }
};

inline std::string to_string(const AffineForm& f) {
  std::string s;
  for (const auto& [name, a] : f.coefficients) {
    if (a == 0) continue;
    if (a < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    Rational m = a < 0 ? Rational(-a) : a;
    if (m != 1) s += to_string(m) + "*";
    s += name;
  }
  if (f.constant != 0 || s.empty()) {
    if (f.constant < 0)
      s += "-" + to_string(Rational(-f.constant));
    else
      s += (s.empty() ? "" : "+") + to_string(f.constant);
  }
  return s;
}

// "-n1-n2-3", "n+4", "3/2", "2*n5-1".
inline AffineForm parse_affine(const std::string& text) {
  AffineForm out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw ParameterError("empty exponent");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      throw ParameterError("bad exponent '" + text + "'");
    }
    first = false;
    Rational coef = 1;
    bool have_number = false;
    std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    if (i > start) {
      coef = parse_rational(text.substr(start, i - start));
      have_number = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    if (i > start) {
      std::string name = text.substr(start, i - start);
      if (!std::isalpha(static_cast<unsigned char>(name[0])))
        throw ParameterError("bad exponent '" + text + "'");
      out.coefficients[name] += Rational(sign) * coef;
    } else if (have_number) {
      out.constant += Rational(sign) * coef;
    } else {
      throw ParameterError("bad exponent '" + text + "'");
    }
    skip();
  }
  return out;
}

struct FormalFactor {
  std::size_t simple = 0;  // index into RootSystem::simple_roots()
  AffineForm exponent;
};

struct FormalExpression {
  std::vector<FormalFactor> factors;

  FormalExpression& operator+=(const FormalExpression& o) {
    factors.insert(factors.end(), o.factors.begin(), o.factors.end());
    return *this;
  }
};

// Net lowering in simple-root coordinates, symbolic in the parameters.
inline std::vector<AffineForm> net_lowering_symbolic(const RootSystem& rs, const FormalExpression& e) {
  std::vector<AffineForm> drop(rs.rank());
  for (const auto& f : e.factors) drop.at(f.simple) += f.exponent;
  return drop;
}

inline Weight net_lowering(const RootSystem& rs, const FormalExpression& e,
                           const std::map<std::string, long long>& values = {}) {
  Weight w(rs.ambient_dim());
  for (const auto& f : e.factors) w += f.exponent.evaluate(values) * rs.simple_roots().at(f.simple);
  return w;
}

// "beta" or "muK" -> simple root index.
inline std::size_t simple_index(const RootSystem& rs, const std::string& name) {
  if (name == "beta") return 0;
  if (name.size() > 2 && name.compare(0, 2, "mu") == 0) {
    int label = 0;
    try {
      label = std::stoi(name.substr(2));
    } catch (const std::exception&) {
      throw ParameterError("bad root name '" + name + "'");
    }
    if (auto k = rs.simple_index_of_label(label)) return *k;
  }
  throw ParameterError("no simple root '" + name + "' in " + rs.family().name());
}

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  std::string id;
  Family family;
  std::map<int, AffineForm> labels;  // compact label -> parameter expression
  std::map<std::string, long long> minimum;  // parameter lower bounds
  int level = 0;
  Rational lambda_q;
  std::vector<std::pair<std::string, AffineForm>> factors;  // root name, exponent
  std::map<std::string, Rational> drop;  // claimed drop, simple-root coordinates
  std::vector<std::map<std::string, long long>> instantiations;
  std::vector<std::string> repairs;
};

struct Catalog {
  int schema_version = 0;
  std::vector<CatalogEntry> entries;
};

inline Family parse_family(const std::string& name, int p, int q, int n) {
  if (name == "su") return Family::su(p, q);
  if (name == "sp") return Family::sp(n);
  if (name == "sostar") return Family::so_star(n);
  if (name == "so-odd") return Family::so_odd(n);
  if (name == "so-even") return Family::so_even(n);
  if (name == "e6") return Family::e6();
  if (name == "e7") return Family::e7();
  throw ParameterError("unknown family '" + name + "'");
}

inline Catalog parse_catalog(const nlohmann::json& j) {
  Catalog c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != 1)
    throw ParameterError("unsupported catalog schema version " + std::to_string(c.schema_version));
  for (const auto& e : j.at("entries")) {
    CatalogEntry entry;
    entry.id = e.at("id").get<std::string>();
    const auto& f = e.at("family");
    entry.family = parse_family(f.at("name").get<std::string>(), f.value("p", 0), f.value("q", 0), f.value("n", 0));
    for (const auto& [name, expr] : e.at("labels").items()) {
      if (name.compare(0, 2, "mu") != 0) throw ParameterError(entry.id + ": bad label key " + name);
      entry.labels[std::stoi(name.substr(2))] = parse_affine(expr.get<std::string>());
    }
    const auto constraints = e.value("constraints", nlohmann::json::object());
    for (const auto& [name, v] : constraints.items()) entry.minimum[name] = v.get<long long>();
    entry.level = e.at("level").get<int>();
    entry.lambda_q = parse_rational(e.at("lambda_q").get<std::string>());
    for (const auto& factor : e.at("factors"))
      entry.factors.emplace_back(factor.at(0).get<std::string>(), parse_affine(factor.at(1).get<std::string>()));
    for (const auto& [name, v] : e.at("drop").items()) entry.drop[name] = Rational(v.get<long long>());
    for (const auto& inst : e.at("instantiations")) {
      std::map<std::string, long long> values;
      for (const auto& [name, v] : inst.items()) values[name] = v.get<long long>();
      entry.instantiations.push_back(std::move(values));
    }
    const auto repairs = e.value("repairs", nlohmann::json::array());
    for (const auto& r : repairs) entry.repairs.push_back(r.get<std::string>());
    c.entries.push_back(std::move(entry));
  }
  return c;
}

inline Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open catalog " + path);
  return parse_catalog(nlohmann::json::parse(in));
}

inline FormalExpression expression_of(const RootSystem& rs, const CatalogEntry& e) {
  FormalExpression expr;
  for (const auto& [root, exponent] : e.factors) expr.factors.push_back({simple_index(rs, root), exponent});
  return expr;
}

inline Vector claimed_drop(const RootSystem& rs, const CatalogEntry& e) {
  Vector v(rs.rank(), Rational(0));
  for (const auto& [name, c] : e.drop) v[simple_index(rs, name)] = c;
  return v;
}

struct InstantiationCheck {
  std::map<std::string, long long> values;
  bool drop_matches = false;      // numeric net lowering == claimed drop
  bool classifier_matches = false;  // claimed drop == omega_q at the entry's level
  std::string detail;
};

struct EntryReport {
  std::string id;
  std::string family;
  bool symbolic_pass = false;  // parameters cancel and the constant part is the claimed drop
  std::string symbolic_detail;
  std::vector<InstantiationCheck> instantiations;
  std::vector<std::string> repairs;

  bool pass() const {
    if (!symbolic_pass || instantiations.size() < 3) return false;
    for (const auto& i : instantiations)
      if (!i.drop_matches || !i.classifier_matches) return false;
    return true;
  }
};

struct CatalogReport {
  std::vector<EntryReport> entries;
  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.pass();
    return n;
  }
  bool pass() const { return passed() == entries.size(); }
};

inline EntryReport verify_entry(const CatalogEntry& e) {
  const RootSystem rs(e.family);
  EntryReport report;
  report.id = e.id;
  report.family = e.family.name();
  report.repairs = e.repairs;

  const FormalExpression expr = expression_of(rs, e);
  const Vector claimed = claimed_drop(rs, e);

  auto symbolic = net_lowering_symbolic(rs, expr);
  report.symbolic_pass = true;
  for (std::size_t k = 0; k < rs.rank(); ++k) {
    if (symbolic[k].is_constant() && symbolic[k].constant == claimed[k]) continue;
    report.symbolic_pass = false;
    report.symbolic_detail += rs.simple_name(k) + ": " + to_string(symbolic[k]) + " (claimed " +
                              to_string(claimed[k]) + "); ";
  }

  for (const auto& values : e.instantiations) {
    InstantiationCheck check;
    check.values = values;
    for (const auto& [name, low] : e.minimum)
      if (values.at(name) < low) throw ParameterError(e.id + ": instantiation violates " + name + " >= " + std::to_string(low));

    Vector got = rs.simple_coefficients(net_lowering(rs, expr, values));
    check.drop_matches = got == claimed;
    if (!check.drop_matches) {
      for (std::size_t k = 0; k < rs.rank(); ++k)
        if (got[k] != claimed[k])
          check.detail += "coefficient of " + rs.simple_name(k) + " is " + to_string(got[k]) + ", claimed " +
                          to_string(claimed[k]) + "; ";
    }

    Labels labels;
    for (const auto& [label, form] : e.labels) {
      Rational v = form.evaluate(values);
      if (!is_integer(v) || v < 0) throw ParameterError(e.id + ": label mu" + std::to_string(label) + " not a natural number");
      labels[label] = to_int64(v);
    }
    auto result = classify(rs, labels);
    if (e.level < static_cast<int>(result.missing.size())) {
      const auto& m = result.missing[e.level];
      check.classifier_matches = m.lambda_q == e.lambda_q && rs.simple_coefficients(m.omega_q) == claimed;
      if (!check.classifier_matches)
        check.detail += "classifier: lambda_q " + to_string(m.lambda_q) + ", omega " + simple_expansion(rs, m.omega_q) + "; ";
    } else {
      check.detail += "classifier has no level " + std::to_string(e.level) + "; ";
    }
    report.instantiations.push_back(std::move(check));
  }
  return report;
}

inline CatalogReport verify_catalog(const Catalog& catalog) {
  CatalogReport report;
  for (const auto& e : catalog.entries) report.entries.push_back(verify_entry(e));
  return report;
}

}  // namespace unitarity
