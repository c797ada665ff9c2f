#include "cobarlab/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace cobarlab {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const json& need(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where + "/" + key, "missing");
  return *it;
}

std::size_t need_index(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

const json& need_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

Vector parse_vector(const FieldSpec& f, const json& j, const std::string& where, std::optional<std::size_t> len = {}) {
  need_array(j, where);
  if (len && j.size() != *len) fail(where, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_scalar(f, j[i], where + "/" + std::to_string(i)));
  return v;
}

std::vector<TermList> parse_terms(const FieldSpec& f, const json& j, std::size_t n, const std::string& where) {
  need_array(j, where);
  if (j.size() != n) fail(where, "expected one term list per basis vector (" + std::to_string(n) + ")");
  std::vector<TermList> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto w = where + "/" + std::to_string(t);
    for (std::size_t k = 0; k < need_array(j[t], w).size(); ++k) {
      const auto& term = j[t][k];
      const auto wk = w + "/" + std::to_string(k);
      if (!term.is_array() || term.size() != 3) fail(wk, "expected [left, right, coefficient]");
      out[t].push_back({need_index(term[0], wk + "/0"), need_index(term[1], wk + "/1"), parse_scalar(f, term[2], wk + "/2")});
    }
  }
  return out;
}

std::optional<std::vector<unsigned>> parse_weights(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  std::vector<unsigned> w;
  for (std::size_t i = 0; i < need_array(*it, "/" + key).size(); ++i)
    w.push_back(static_cast<unsigned>(need_index((*it)[i], "/" + key + "/" + std::to_string(i))));
  return w;
}

Matrix parse_dense(const FieldSpec& f, const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  need_array(j, where);
  if (j.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
  std::vector<Vector> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(parse_vector(f, j[i], where + "/" + std::to_string(i), cols));
  return Matrix::from_rows(f, cols, r);
}

json scalar_json(const FieldSpec& f, const Scalar& x) {
  const auto s = f.normalize(x);
  if (s.get_den() == 1 && s.get_num().fits_slong_p()) return s.get_num().get_si();
  return f.format(s);
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

LoadedFile load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  LoadedFile out{path, sha256_hex(bytes), {}};
  if (bytes.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError(path.string() + ": empty document");
  try {
    out.doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": byte " + std::to_string(e.byte) + ": invalid JSON");
  }
  return out;
}

FieldSpec parse_field(const json& j, const std::string& where) {
  if (j.is_object()) return FieldSpec::prime(need_index(need(j, "prime", where), where + "/prime"));
  if (!j.is_string()) fail(where, "expected \"Q\", \"GF(p)\" or {\"prime\": p}");
  const auto s = j.get<std::string>();
  if (s == "Q" || s == "QQ" || s == "rationals") return FieldSpec::rationals();
  if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
    const auto digits = s.substr(3, s.size() - 4);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      try {
        return FieldSpec::prime(std::stoull(digits));
      } catch (const std::exception& e) {
        fail(where, e.what());
      }
    }
  }
  fail(where, "unknown field \"" + s + "\"");
}

Scalar parse_scalar(const FieldSpec& f, const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return f.from_int(j.get<long>());
    if (j.is_string()) return f.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "expected an integer or a string \"a/b\"");
}

std::string presentation_kind(const json& doc) {
  if (!doc.is_object()) fail("", "expected a JSON object");
  const auto& schema = need(doc, "schema", "");
  if (!schema.is_string() || schema.get<std::string>() != kSchema)
    fail("/schema", std::string("expected \"") + kSchema + "\"");
  const auto& kind = need(doc, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  return kind.get<std::string>();
}

Coalgebra parse_finite_coalgebra(const json& doc) {
  const auto f = parse_field(need(doc, "field", ""));
  const auto n = need_index(need(doc, "dim", ""), "/dim");
  const auto g = need_index(need(doc, "grouplike", ""), "/grouplike");
  auto counit = parse_vector(f, need(doc, "counit", ""), "/counit", n);
  auto comul = parse_terms(f, need(doc, "comul", ""), n, "/comul");
  std::optional<unsigned> bound;
  if (doc.contains("truncation_bound")) bound = static_cast<unsigned>(need_index(doc["truncation_bound"], "/truncation_bound"));
  return Coalgebra(f, n, g, std::move(counit), std::move(comul), parse_weights(doc, "grading"), bound);
}

GradedCoalgebra parse_graded_coalgebra(const json& doc) {
  const auto f = parse_field(need(doc, "field", ""));
  const auto D = static_cast<unsigned>(need_index(need(doc, "bound", ""), "/bound"));
  if (doc.contains("construction")) {
    const auto& c = doc["construction"];
    const auto& type = need(c, "type", "/construction");
    const auto m = static_cast<unsigned>(need_index(need(c, "m", "/construction"), "/construction/m"));
    const auto t = type.is_string() ? type.get<std::string>() : "";
    if (t == "tensor") return tensor_coalgebra(m, D, f);
    if (t == "symmetric") return symmetric_coalgebra(m, D, f);
    if (t == "quadratic_dual") {
      std::vector<Vector> rel;
      const auto& rj = need_array(need(c, "relations", "/construction"), "/construction/relations");
      for (std::size_t k = 0; k < rj.size(); ++k)
        rel.push_back(parse_vector(f, rj[k], "/construction/relations/" + std::to_string(k), std::size_t{m} * m));
      return graded_dual(quadratic_algebra(m, rel, D, f));
    }
    fail("/construction/type", "expected \"tensor\", \"symmetric\" or \"quadratic_dual\"");
  }
  const auto& dj = need_array(need(doc, "dims", ""), "/dims");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) dims.push_back(need_index(dj[i], "/dims/" + std::to_string(i)));
  if (dims.size() != D + 1u) fail("/dims", "expected bound + 1 entries");
  std::map<GradedCoalgebra::Key, Matrix> comp;
  const auto& cj = need_array(need(doc, "components", ""), "/components");
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const auto w = "/components/" + std::to_string(k);
    const auto j = static_cast<unsigned>(need_index(need(cj[k], "j", w), w + "/j"));
    const auto p = static_cast<unsigned>(need_index(need(cj[k], "p", w), w + "/p"));
    const auto q = static_cast<unsigned>(need_index(need(cj[k], "q", w), w + "/q"));
    if (j > D || p + q != j) fail(w, "need p + q = j <= bound");
    comp.emplace(GradedCoalgebra::Key{j, p, q}, parse_dense(f, need(cj[k], "matrix", w), dims[p] * dims[q], dims[j], w + "/matrix"));
  }
  return GradedCoalgebra(f, D, std::move(dims), std::move(comp));
}

Comodule parse_comodule(const json& doc, CoalgebraPtr base) {
  if (doc.is_string()) {
    const auto s = doc.get<std::string>();
    if (s == "k") return Comodule::trivial(std::move(base));
    if (s == "regular") return Comodule::regular(std::move(base));
    fail("", "expected \"k\", \"regular\" or a comodule document");
  }
  const auto n = need_index(need(doc, "dim", ""), "/dim");
  auto coaction = parse_terms(base->field(), need(doc, "coaction", ""), n, "/coaction");
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& term : coaction[t])
      if (term.left >= base->dim() || term.right >= n)
        fail("/coaction/" + std::to_string(t), "index out of range");
  return Comodule(std::move(base), n, std::move(coaction), parse_weights(doc, "weights"));
}

Algebra parse_algebra(const json& doc) {
  const auto f = parse_field(need(doc, "field", ""));
  const auto n = need_index(need(doc, "dim", ""), "/dim");
  auto unit = parse_vector(f, need(doc, "unit", ""), "/unit", n);
  std::vector<Triplet> t;
  const auto& mj = need_array(need(doc, "mult", ""), "/mult");
  for (std::size_t k = 0; k < mj.size(); ++k) {
    const auto w = "/mult/" + std::to_string(k);
    if (!mj[k].is_array() || mj[k].size() != 4) fail(w, "expected [t, a, b, coefficient] for e_a e_b -> e_t");
    const auto r = need_index(mj[k][0], w + "/0"), a = need_index(mj[k][1], w + "/1"), b = need_index(mj[k][2], w + "/2");
    if (r >= n || a >= n || b >= n) fail(w, "index out of range");
    t.push_back({r, a * n + b, parse_scalar(f, mj[k][3], w + "/3")});
  }
  std::optional<Vector> aug;
  if (doc.contains("augmentation")) aug = parse_vector(f, doc["augmentation"], "/augmentation", n);
  return Algebra(f, n, std::move(unit), Matrix::from_triplets(f, n, n * n, std::move(t)), std::move(aug),
                 parse_weights(doc, "weights"));
}

GradedAlgebra parse_quadratic_algebra(const json& doc) {
  const auto f = parse_field(need(doc, "field", ""));
  const auto m = static_cast<unsigned>(need_index(need(doc, "m", ""), "/m"));
  const auto D = static_cast<unsigned>(need_index(need(doc, "bound", ""), "/bound"));
  std::vector<Vector> rel;
  const auto& rj = need_array(need(doc, "relations", ""), "/relations");
  for (std::size_t k = 0; k < rj.size(); ++k)
    rel.push_back(parse_vector(f, rj[k], "/relations/" + std::to_string(k), std::size_t{m} * m));
  return quadratic_algebra(m, rel, D, f);
}

json to_json(const Coalgebra& c) {
  const auto& f = c.field();
  json comul = json::array();
  for (std::size_t t = 0; t < c.dim(); ++t) {
    json terms = json::array();
    for (const auto& [l, r, x] : c.comul(t)) terms.push_back({l, r, scalar_json(f, x)});
    comul.push_back(terms);
  }
  json counit = json::array();
  for (const auto& x : c.counit()) counit.push_back(scalar_json(f, x));
  json out{{"schema", kSchema}, {"kind", "finite"}, {"field", f.name()}, {"dim", c.dim()},
           {"grouplike", c.grouplike()}, {"counit", counit}, {"comul", comul}};
  if (c.grading()) out["grading"] = *c.grading();
  if (c.truncation_bound()) out["truncation_bound"] = *c.truncation_bound();
  return out;
}

json to_json(const ExtTable& t) {
  json entries = json::array();
  for (const auto& [key, d] : t.cells)
    if (d) entries.push_back({key.first, key.second, d});
  return {{"graded", t.graded},
          {"window", {{"imax", t.imax}, {"jmax", t.jmax}}},
          {"entries", entries},
          {"totals", t.totals()},
          {"totals_complete", t.totals_complete},
          {"truncation_note", t.truncation_note}};
}

json to_json(const ValidationReport& r) {
  return {{"coassociative", r.coassociative}, {"counital", r.counital},       {"coaugmented", r.coaugmented},
          {"conilpotent", r.conilpotent},     {"cocommutative", r.cocommutative}, {"grading_compatible", r.grading_compatible},
          {"problems", r.problems}};
}

json to_json(const MinimalCoresolution& r) {
  json steps = json::array();
  for (const auto& s : r.steps())
    steps.push_back({{"source_dim", s.source.dim()}, {"cofree_dim", s.cofree.dim()}, {"cogenerators", s.retraction.rows()}});
  json cells = json::array();
  for (const auto& [key, d] : r.cogenerator_cells()) cells.push_back({key.first, key.second, d});
  json out{{"cogenerator_dims", r.cogenerator_dims()}, {"minimal", r.minimal()}, {"steps", steps}, {"cells", cells}};
  if (r.weight_cap()) out["weight_cap"] = *r.weight_cap();
  return out;
}

json to_json(const ComparisonReport& r) {
  return {{"comodule_side", r.comodule_side}, {"module_side", r.module_side}, {"equal", r.equal}, {"verdict", r.verdict}};
}

}  // namespace cobarlab
