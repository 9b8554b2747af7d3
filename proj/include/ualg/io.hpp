#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/cong_equation.hpp"
#include "ualg/maltsev.hpp"
#include "ualg/partition.hpp"
#include "ualg/term.hpp"
#include "ualg/transformers.hpp"

namespace ualg {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Algebra documents: {"name": .., "size": .., "operations":
// [{"symbol": .., "arity": .., "table": [..]}]} with flat row-major tables.

inline Json algebra_to_json(const FiniteAlgebra& A) {
  Json doc;
  doc["name"] = A.name;
  doc["size"] = A.size;
  doc["operations"] = Json::array();
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    Json op;
    op["symbol"] = A.signature.symbols[s].name;
    op["arity"] = A.signature.symbols[s].arity;
    op["table"] = A.tables[s];
    doc["operations"].push_back(std::move(op));
  }
  return doc;
}

inline FiniteAlgebra algebra_from_json(const Json& doc) {
  FiniteAlgebra A;
  try {
    A.name = doc.value("name", std::string{});
    A.size = doc.at("size").get<int>();
    for (const Json& op : doc.at("operations")) {
      A.signature.symbols.push_back(
          {op.at("symbol").get<std::string>(), op.at("arity").get<int>()});
      A.tables.push_back(op.at("table").get<std::vector<Element>>());
    }
  } catch (const Json::exception& e) {
    throw Error(std::string("algebra document: ") + e.what());
  }
  A.validate();
  return A;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

inline FiniteAlgebra load_algebra(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return algebra_from_json(doc);
}

inline void save_algebra(const std::string& path, const FiniteAlgebra& A) {
  write_file(path, algebra_to_json(A).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Transformer files: tau as lines "delta-term | epsilon-term", rho as one
// binary term per line.  Blank lines and '#' comments are skipped.

namespace detail {
inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}
}  // namespace detail

inline TransformerTau load_tau(const std::string& path,
                               const Signature* sig = nullptr) {
  TransformerTau tau;
  for (const std::string& line : detail::content_lines(read_file(path))) {
    std::size_t bar = line.find('|');
    if (bar == std::string::npos) {
      throw Error(path + ": expected 'delta | epsilon' on each line");
    }
    tau.pairs.emplace_back(parse_term(line.substr(0, bar), sig),
                           parse_term(line.substr(bar + 1), sig));
  }
  tau.validate();
  return tau;
}

inline TransformerRho load_rho(const std::string& path,
                               const Signature* sig = nullptr) {
  TransformerRho rho;
  for (const std::string& line : detail::content_lines(read_file(path))) {
    rho.terms.push_back(parse_term(line, sig));
  }
  rho.validate();
  return rho;
}

inline Json tau_to_json(const TransformerTau& tau) {
  Json out = Json::array();
  for (const auto& [d, e] : tau.pairs) {
    out.push_back({{"delta", to_prefix(d)}, {"epsilon", to_prefix(e)}});
  }
  return out;
}

inline Json rho_to_json(const TransformerRho& rho) {
  Json out = Json::array();
  for (const Term& t : rho.terms) out.push_back(to_prefix(t));
  return out;
}

inline TransformerTau tau_from_json(const Json& j, const Signature* sig = nullptr) {
  TransformerTau tau;
  for (const Json& p : j) {
    tau.pairs.emplace_back(parse_term(p.at("delta").get<std::string>(), sig),
                           parse_term(p.at("epsilon").get<std::string>(), sig));
  }
  tau.validate();
  return tau;
}

inline TransformerRho rho_from_json(const Json& j, const Signature* sig = nullptr) {
  TransformerRho rho;
  for (const Json& t : j) rho.terms.push_back(parse_term(t.get<std::string>(), sig));
  rho.validate();
  return rho;
}

// ---------------------------------------------------------------------------
// Maltsev schemes.

inline Json scheme_to_json(const MaltsevScheme& s) {
  Json out;
  out["tau"] = tau_to_json(s.tau);
  out["rho"] = rho_to_json(s.rho);
  out["chain"] = Json::array();
  for (const Term& t : s.chain_terms) out["chain"].push_back(to_prefix(t));
  return out;
}

inline MaltsevScheme scheme_from_json(const Json& j,
                                      const Signature* sig = nullptr) {
  MaltsevScheme s;
  s.tau = tau_from_json(j.at("tau"), sig);
  s.rho = rho_from_json(j.at("rho"), sig);
  for (const Json& t : j.at("chain")) {
    s.chain_terms.push_back(parse_term(t.get<std::string>(), sig));
  }
  s.validate();
  return s;
}

inline MaltsevScheme load_scheme(const std::string& path,
                                 const Signature* sig = nullptr) {
  try {
    return scheme_from_json(Json::parse(read_file(path)), sig);
  } catch (const Json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Partitions, relations and failure certificates.

inline Json partition_to_json(const Partition& p) { return Json(p.block_of); }

inline Partition partition_from_json(const Json& j) {
  Partition p;
  p.block_of = j.get<std::vector<Element>>();
  p.n = static_cast<int>(p.block_of.size());
  for (Element x = 0; x < p.n; ++x) {
    Element r = p.block_of[static_cast<std::size_t>(x)];
    if (r < 0 || r > x || p.block_of[static_cast<std::size_t>(r)] != r) {
      throw Error("partition document: block map is not normalized");
    }
  }
  return p;
}

inline Json binrel_to_json(const BinRel& r) {
  Json pairs = Json::array();
  for (auto [a, b] : r.pairs()) pairs.push_back(Json::array({a, b}));
  Json out;
  out["universe"] = r.n;
  out["pairs"] = std::move(pairs);
  return out;
}

inline BinRel binrel_from_json(const Json& j) {
  BinRel r(j.at("universe").get<int>());
  for (const Json& p : j.at("pairs")) {
    r.add(p.at(0).get<Element>(), p.at(1).get<Element>());
  }
  return r;
}

inline Json certificate_to_json(const FailureCertificate& cert) {
  Json out;
  out["algebra"] = algebra_to_json(cert.algebra);
  out["equation"] = to_string(cert.equation);
  out["assignment"] = Json::array();
  for (const auto& [name, p] : cert.assignment) {
    out["assignment"].push_back(
        {{"variable", name}, {"block_of", partition_to_json(p)}});
  }
  out["lhs"] = binrel_to_json(cert.lhs_value);
  out["rhs"] = binrel_to_json(cert.rhs_value);
  out["discrepancy"] = Json::array({cert.discrepancy.first, cert.discrepancy.second});
  return out;
}

inline FailureCertificate certificate_from_json(const Json& j) {
  FailureCertificate cert;
  try {
    cert.algebra = algebra_from_json(j.at("algebra"));
    cert.equation = parse_cong_equation(j.at("equation").get<std::string>());
    for (const Json& a : j.at("assignment")) {
      cert.assignment.emplace_back(a.at("variable").get<std::string>(),
                                   partition_from_json(a.at("block_of")));
    }
    cert.lhs_value = binrel_from_json(j.at("lhs"));
    cert.rhs_value = binrel_from_json(j.at("rhs"));
    cert.discrepancy = {j.at("discrepancy").at(0).get<Element>(),
                        j.at("discrepancy").at(1).get<Element>()};
  } catch (const Json::exception& e) {
    throw Error(std::string("certificate document: ") + e.what());
  }
  return cert;
}

inline FailureCertificate load_certificate(const std::string& path) {
  try {
    return certificate_from_json(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace ualg
