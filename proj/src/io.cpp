#include "egh/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "egh/errors.hpp"

namespace egh {

namespace {

// JSON has no infinities; they are written as null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const FiniteMetricSpace& m) {
  Json j;
  j["n"] = m.size();
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.size(); ++k) row.push_back(m.d(i, k));
    rows.push_back(row);
  }
  j["dist"] = rows;
  j["basepoint"] = m.basepoint();
  j["labels"] = m.labels();
  return j;
}

FiniteMetricSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dist")) throw StructuralError("space needs a \"dist\" matrix");
  std::vector<std::vector<double>> rows;
  try {
    rows = j.at("dist").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("\"dist\" must be a matrix of numbers: ") + e.what());
  }
  if (j.contains("n") && j.at("n").get<size_t>() != rows.size())
    throw StructuralError("\"n\" does not match the matrix size");
  int base = j.value("basepoint", 0);
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  FiniteMetricSpace m(rows, base, labels);
  auto bad = validate_metric(m);
  if (!bad.empty()) throw DomainError("not a metric: " + describe(bad.front()));
  return m;
}

Json to_json(const Triple& t) {
  Json g;
  g["gens"] = t.G().generators();
  g["order"] = t.G().order();
  return Json{{"space", to_json(t.X())}, {"group", g}};
}

Triple triple_from_json(const Json& j) {
  if (!j.contains("space")) throw StructuralError("triple needs a \"space\"");
  FiniteMetricSpace m = space_from_json(j.at("space"));
  if (!j.contains("group")) return trivial_triple(std::move(m));
  const Json& g = j.at("group");
  if (g.value("full", false)) return full_triple(std::move(m));
  std::vector<Perm> gens;
  if (g.contains("gens")) gens = g.at("gens").get<std::vector<Perm>>();
  for (const Perm& p : gens) {
    if (static_cast<int>(p.size()) != m.size()) throw StructuralError("generator has the wrong length");
    std::vector<bool> seen(p.size(), false);
    for (int x : p) {
      if (x < 0 || x >= m.size() || seen[x]) throw StructuralError("generator is not a permutation");
      seen[x] = true;
    }
    if (!is_isometry(m, p)) throw DomainError("generator " + perm_to_string(p) + " is not an isometry");
  }
  return make_triple(std::move(m), gens);
}

Json to_json(const Group& G, const Elem& e) {
  Json c = Json::array();
  for (int i = 0; i < e.n; ++i) c.push_back(e[i]);
  return Json{{"coords", c}, {"text", G.format(e)}};
}

Json to_json(const EpsApproximation& a) {
  Json j;
  j["eps"] = a.eps;
  j["offset"] = a.offset;
  Json rel = Json::array();
  for (auto [x, y] : a.relation.pairs) rel.push_back({x, y});
  j["relation"] = rel;
  j["distortion"] = a.relation.distortion;
  j["phi"] = a.phi;
  j["psi"] = a.psi;
  return j;
}

Json to_json(const GhResult& r) {
  Json j;
  j["eps"] = r.value;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["mode"] = r.mode();
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const ConditionReport& r, const Group& source, const Group& target) {
  static const char* names[] = {"I", "II", "III", "IV", "V"};
  Json j;
  j["delta"] = r.delta;
  j["n_max"] = r.n_max;
  Json conds = Json::array();
  for (int c = 0; c < 5; ++c) {
    const ConditionResult& cr = r.cond[c];
    Json w = Json::array();
    // Condition I witnesses live in the target, the others start in the source.
    for (size_t k = 0; k < cr.witness.size(); ++k) {
      bool tgt = c == 0 || (c == 4 && k == 1);
      w.push_back(to_json(tgt ? target : source, cr.witness[k]));
    }
    conds.push_back(Json{{"condition", names[c]}, {"pass", cr.pass}, {"slack", num(cr.slack)},
                         {"witness", w}, {"note", cr.note}});
  }
  j["conditions"] = conds;
  j["all_pass"] = r.all_pass();
  return j;
}

Json to_json(const SymmetricTriangulation& t) {
  Json j;
  j["n"] = t.n;
  j["subdivisions"] = t.subdivisions;
  Json v = Json::array();
  for (const auto& x : t.vertices) v.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  j["vertices"] = v;
  j["simplices"] = t.simplices;
  j["antipode"] = t.antipode;
  j["mesh"] = t.mesh;
  return j;
}

Json to_json(const ZeroWitness& w) {
  auto vec = [](const Eigen::VectorXd& x) { return std::vector<double>(x.data(), x.data() + x.size()); };
  Json j;
  j["x0"] = vec(w.x0);
  j["value"] = vec(w.value);
  j["value_norm"] = w.value_norm();
  j["simplex"] = w.simplex;
  j["vertex"] = w.vertex;
  j["vertex_value_norm"] = w.vertex_value_norm();
  return j;
}

OddMapSample sample_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  int s = j.value("subdivisions", 0);
  auto tri = std::make_shared<const SymmetricTriangulation>(build_triangulation(n, s));
  if (j.contains("map")) {
    auto rows = j.at("map").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw StructuralError("linear map needs at least one row");
    Eigen::MatrixXd M(rows.size(), n);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(rows[r].size()) != n) throw StructuralError("map rows must have n entries");
      for (int c = 0; c < n; ++c) M(r, c) = rows[r][c];
    }
    return sample_map(tri, [M](const Eigen::VectorXd& x) { return Eigen::VectorXd(M * x); });
  }
  auto vals = j.at("values").get<std::vector<std::vector<double>>>();
  if (vals.size() != tri->keys.size())
    throw StructuralError("expected " + std::to_string(tri->keys.size()) + " vertex values");
  OddMapSample out;
  out.tri = tri;
  for (const auto& v : vals) out.values.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  out.require_odd();
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StructuralError("cannot write " + tmp);
    out << text;
    if (!out) throw StructuralError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace egh
