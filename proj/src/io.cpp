#include "fdk/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace fdk::io {

namespace {

Json big_integer(const mpz_class& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json element_list(const SubsetConfig& s) {
  Json pts = Json::array();
  for (auto idx : s.indices()) pts.push_back(s.group().residues_of(idx));
  return pts;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

Json to_json(const FiniteAbelianGroup& g) { return Json{{"orders", g.orders()}}; }

Json to_json(const GroupElement& x) { return Json(x.residues()); }

Json to_json(const SubsetConfig& s) { return Json{{"group", to_json(s.group())}, {"points", element_list(s)}}; }

Json to_json(const Provenance& p) {
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  return Json{{"kind", p.kind}, {"params", params}};
}

Json to_json(const DualPair& pair) {
  return Json{{"schema", kSchema},
              {"group", to_json(pair.group())},
              {"S", to_json(pair.s())},
              {"T", to_json(pair.t())},
              {"provenance", to_json(pair.provenance())}};
}

Json to_json(const DualityCertificate& cert) {
  Json j{{"schema", kSchema}, {"verdict", to_string(cert.verdict)}};
  j["sizes"] = Json{{"S", cert.s_size}, {"T", cert.t_size}, {"group", cert.group_size}};
  if (cert.witness) j["witness"] = to_json(*cert.witness);
  if (cert.lhs) {
    Json coeffs = Json::array();
    for (const auto& c : cert.lhs->reduced()) coeffs.push_back(big_integer(c));
    j["lhs_level"] = cert.lhs->level();
    j["lhs_coeffs"] = coeffs;
  }
  if (cert.rhs) j["rhs"] = cert.rhs->to_string();
  return j;
}

Json to_json(const SearchReport& report, bool include_timing) {
  Json orbits = Json::array();
  for (const auto& o : report.orbits) orbits.push_back(Json{{"S", element_list(o.s)}, {"T", element_list(o.t)}});
  Json j{{"schema", kSchema},
         {"group", to_json(report.group)},
         {"N", report.n},
         {"M", report.m},
         {"pair_count", report.pair_count},
         {"orbit_count", report.orbits.size()},
         {"automorphism_count", report.automorphism_count},
         {"orbits", orbits},
         {"stats",
          {{"subsets_scanned", report.stats.subsets_scanned},
           {"primitive_subsets", report.stats.primitive_subsets},
           {"passed_integrality", report.stats.passed_integrality},
           {"duals_found", report.stats.duals_found},
           {"primitive_pairs", report.stats.primitive_pairs}}}};
  if (include_timing) j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

Json to_json(const BarlowVerdict& v) {
  Json j{{"sequence", v.sequence.to_string()},
         {"layers", v.sequence.layers()},
         {"fcc", v.sequence.is_fcc()},
         {"has_dual", v.has_dual},
         {"reason", to_string(v.reason)}};
  if (v.failing_character) j["failing_character"] = to_json(*v.failing_character);
  if (v.dual) j["dual"] = element_list(*v.dual);
  return j;
}

Json to_json(const BarlowScan& scan) {
  Json verdicts = Json::array();
  for (const auto& v : scan.verdicts) verdicts.push_back(to_json(v));
  return Json{{"schema", kSchema},
              {"k_max", scan.k_max},
              {"sequence_count", scan.verdicts.size()},
              {"consistent", scan.consistent()},
              {"anomalies", scan.anomalies},
              {"verdicts", verdicts}};
}

Json to_json(const PeriodicConfiguration& p) {
  Json basis = Json::array();
  for (int c = 0; c < p.dimension(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < p.dimension(); ++r) col.push_back(p.lattice().basis()(r, c));
    basis.push_back(col);
  }
  Json translates = Json::array();
  for (const auto& v : p.translates()) translates.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return Json{{"dimension", p.dimension()},
              {"basis_columns", basis},
              {"translates", translates},
              {"covolume", p.lattice().covolume()},
              {"density", p.density()}};
}

Json to_json(const NumericReport& report) {
  Json tests = Json::array();
  for (const auto& r : report.results) {
    tests.push_back(Json{{"c", r.test.c},
                         {"shift", std::vector<double>(r.test.shift.data(), r.test.shift.data() + r.test.shift.size())},
                         {"lhs", r.lhs.real()},
                         {"rhs", {r.rhs.real(), r.rhs.imag()}},
                         {"residual", r.residual},
                         {"imaginary", r.imaginary},
                         {"tail_bound", r.tail_bound},
                         {"passed", r.passed}});
  }
  return Json{{"tolerance", report.tolerance},
              {"passed", report.passed},
              {"max_residual", report.max_residual},
              {"tests", tests}};
}

FiniteAbelianGroup group_from_json(const Json& j) {
  const auto& orders = require(j, "orders");
  if (!orders.is_array() || orders.empty()) throw ParseError("group orders must be a nonempty array");
  std::vector<std::int64_t> out;
  for (const auto& o : orders) {
    const auto n = as_int(o, "group order");
    if (n < 1) throw ParseError("group orders must be positive");
    out.push_back(n);
  }
  try {
    return FiniteAbelianGroup(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

GroupElement element_from_json(const FiniteAbelianGroup& g, const Json& j) {
  if (!j.is_array() || j.size() != g.rank()) {
    throw ParseError("element must be an array of " + std::to_string(g.rank()) + " residues");
  }
  std::vector<std::int64_t> r;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = as_int(j[i], "residue");
    if (v < 0 || v >= g.order(i)) throw ParseError("residue out of range for " + g.to_string());
    r.push_back(v);
  }
  return {g, std::move(r)};
}

SubsetConfig subset_from_json(const Json& j, const FiniteAbelianGroup* g) {
  FiniteAbelianGroup group;
  if (j.is_object() && j.contains("group")) {
    group = group_from_json(j.at("group"));
  } else if (g) {
    group = *g;
  } else {
    throw ParseError("subset has no group");
  }
  if (g && !(group == *g)) throw ParseError("subset group differs from the pair group");
  const auto& pts = require(j, "points");
  if (!pts.is_array()) throw ParseError("points must be an array");
  std::vector<GroupElement> elems;
  for (const auto& p : pts) elems.push_back(element_from_json(group, p));
  try {
    return {group, elems};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

PairDocument pair_document_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("pair document must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchema) throw ParseError("unsupported schema");
  const auto g = group_from_json(require(j, "group"));
  auto s = subset_from_json(require(j, "S"), &g);
  auto t = subset_from_json(require(j, "T"), &g);
  Provenance prov{"custom", {}};
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    if (!p.is_object()) throw ParseError("provenance must be an object");
    if (p.contains("kind")) {
      if (!p.at("kind").is_string()) throw ParseError("provenance kind must be a string");
      prov.kind = p.at("kind").get<std::string>();
    }
    if (p.contains("params")) {
      for (const auto& [k, v] : p.at("params").items()) prov.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return {g, std::move(s), std::move(t), std::move(prov)};
}

PairDocument pair_document_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return pair_document_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad pair document: ") + e.what());
  }
}

DualPair pair_from_document(const PairDocument& doc) { return {doc.s, doc.t, doc.provenance}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string barlow_csv(const BarlowScan& scan) {
  std::ostringstream out;
  out << "sequence,layers,fcc,has_dual,reason\n";
  for (const auto& v : scan.verdicts) {
    out << v.sequence.to_string() << ',' << v.sequence.layers() << ',' << (v.sequence.is_fcc() ? 1 : 0) << ','
        << (v.has_dual ? 1 : 0) << ',' << to_string(v.reason) << '\n';
  }
  return out.str();
}

std::string orbits_csv(const SearchReport& report) {
  auto render = [&](const SubsetConfig& s) {
    std::string text;
    for (auto idx : s.indices()) {
      if (!text.empty()) text += ' ';
      const auto r = s.group().residues_of(idx);
      for (std::size_t i = 0; i < r.size(); ++i) text += (i ? ":" : "") + std::to_string(r[i]);
    }
    return text;
  };
  std::ostringstream out;
  out << "orbit,S,T\n";
  for (std::size_t i = 0; i < report.orbits.size(); ++i) {
    out << i << ',' << render(report.orbits[i].s) << ',' << render(report.orbits[i].t) << '\n';
  }
  return out.str();
}

}  // namespace fdk::io
