#include "zplie/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zplie::io {

using json = nlohmann::ordered_json;

namespace {

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_scalar(x));
  return out;
}

Vector vector_from(const json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected)
    throw ParseError("expected an array of " + std::to_string(expected) + " rationals");
  Vector v;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("rationals must be strings");
    v.push_back(parse_scalar(x.get<std::string>()));
  }
  return v;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Matrix matrix_from(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ParseError("expected a " + std::to_string(rows) + "-row matrix");
  std::vector<Vector> rs;
  for (const auto& r : j) rs.push_back(vector_from(r, cols));
  if (rows == 0) return Matrix(0, cols);
  return Matrix::from_rows(rs);
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

const json& node(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void check_algebra_name(const json& j, const Algebra& alg) {
  auto name = field<std::string>(j, "algebra");
  if (name != alg.name())
    throw ParseError("file refers to algebra \"" + name + "\" but \"" + alg.name() + "\" was given");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const char* ordering_name(Ordering o) { return o == Ordering::A ? "a" : "b"; }

Ordering ordering_from(const std::string& s) {
  if (s == "a" || s == "A") return Ordering::A;
  if (s == "b" || s == "B") return Ordering::B;
  throw ParseError("ordering must be \"a\" or \"b\"");
}

json family_levels(const MapFamily& f) {
  json levels = json::array();
  for (std::size_t n = 1; n <= f.order(); ++n) levels.push_back(matrix_json(f[n].matrix()));
  return levels;
}

MapFamily family_from_node(const json& j, const Algebra& alg) {
  const auto order = field<std::size_t>(j, "order");
  const json& levels = node(j, "levels");
  if (!levels.is_array()) throw ParseError("\"levels\" must be an array");
  const std::size_t d = alg.dim();
  std::vector<LinMap> maps;
  if (levels.size() == order + 1) {
    for (const auto& m : levels) maps.emplace_back(matrix_from(m, d, d));
    if (maps.front() != LinMap::identity(d)) throw ParseError("level 0 must be the identity");
  } else if (levels.size() == order) {
    maps.push_back(LinMap::identity(d));
    for (const auto& m : levels) maps.emplace_back(matrix_from(m, d, d));
  } else {
    throw ParseError("\"levels\" does not match \"order\"");
  }
  return MapFamily(std::move(maps));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string algebra_to_json(const Algebra& alg) {
  json j;
  j["name"] = alg.name();
  j["dim"] = alg.dim();
  j["labels"] = alg.labels();
  j["unit"] = vector_json(alg.unit().coords());
  json mul = json::array();
  for (std::size_t p = 0; p < alg.dim(); ++p)
    for (std::size_t q = 0; q < alg.dim(); ++q) {
      const auto& prod = alg.product(p, q);
      if (prod.empty()) continue;
      Vector coeffs = zero_vector(alg.dim());
      for (const auto& [k, c] : prod) coeffs[k] = c;
      mul.push_back(json::array({p, q, vector_json(coeffs)}));
    }
  j["mul"] = std::move(mul);
  j["blocks"] = alg.has_blocks() ? json(alg.block_sizes()) : json(nullptr);
  return dump(j);
}

Algebra algebra_from_json(std::string_view text) {
  const json j = parse(text);
  const auto name = field<std::string>(j, "name");
  const auto d = field<std::size_t>(j, "dim");
  if (d == 0) throw ParseError("algebra dimension must be positive");
  auto labels = field<std::vector<std::string>>(j, "labels");
  if (labels.size() != d) throw ParseError("label count does not match dim");
  Element unit(vector_from(node(j, "unit"), d));

  std::vector<std::vector<Algebra::SparseVec>> table(d, std::vector<Algebra::SparseVec>(d));
  const json& mul = node(j, "mul");
  if (!mul.is_array()) throw ParseError("\"mul\" must be an array");
  for (const auto& entry : mul) {
    if (!entry.is_array() || entry.size() != 3) throw ParseError("\"mul\" entries are [i, j, coeffs]");
    const auto p = entry[0].get<std::size_t>();
    const auto q = entry[1].get<std::size_t>();
    if (p >= d || q >= d) throw ParseError("\"mul\" index out of range");
    if (!table[p][q].empty()) throw ParseError("duplicate \"mul\" entry");
    Vector coeffs = vector_from(entry[2], d);
    for (std::size_t k = 0; k < d; ++k)
      if (sgn(coeffs[k]) != 0) table[p][q].emplace_back(k, coeffs[k]);
  }

  std::optional<std::vector<std::size_t>> blocks;
  if (j.contains("blocks") && !j.at("blocks").is_null()) blocks = field<std::vector<std::size_t>>(j, "blocks");

  std::optional<Algebra> alg;
  try {
    alg.emplace(name, std::move(labels), std::move(table), std::move(unit), blocks);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (auto bad = alg->validate()) throw ParseError("not a unital associative algebra: " + *bad);
  if (blocks) {
    const Algebra model = build_block_diagonal(*blocks);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        if (alg->product(p, q) != model.product(p, q))
          throw ParseError("multiplication table does not match the declared blocks");
  }
  return std::move(*alg);
}

std::string family_to_json(const Algebra& alg, const MapFamily& f) {
  json j;
  j["algebra"] = alg.name();
  j["order"] = f.order();
  j["levels"] = family_levels(f);
  return dump(j);
}

MapFamily family_from_json(std::string_view text, const Algebra& alg) {
  const json j = parse(text);
  check_algebra_name(j, alg);
  return family_from_node(j, alg);
}

std::string solution_space_to_json(const SolutionSpace& s) {
  json j;
  j["level"] = s.level;
  j["xi"] = format_scalar(s.xi);
  j["particular"] = matrix_json(s.particular.matrix());
  json hom = json::array();
  for (const auto& h : s.homogeneous_basis) hom.push_back(matrix_json(h.matrix()));
  j["homogeneous"] = std::move(hom);
  j["span_dim"] = s.span_dim;
  j["constraints"] = s.constraint_count;
  j["seed"] = s.seed;
  return dump(j);
}

SolutionSpace solution_space_from_json(std::string_view text, const Algebra& alg) {
  const json j = parse(text);
  const std::size_t d = alg.dim();
  SolutionSpace s;
  s.level = field<std::size_t>(j, "level");
  s.xi = parse_scalar(field<std::string>(j, "xi"));
  s.particular = LinMap(matrix_from(node(j, "particular"), d, d));
  const json& hom = node(j, "homogeneous");
  if (!hom.is_array()) throw ParseError("\"homogeneous\" must be an array");
  for (const auto& h : hom) s.homogeneous_basis.emplace_back(matrix_from(h, d, d));
  s.span_dim = field<std::size_t>(j, "span_dim");
  s.constraint_count = field<std::size_t>(j, "constraints");
  s.seed = field<std::uint64_t>(j, "seed");
  return s;
}

std::string delta_to_json(const Algebra& alg, const DeltaSequence& d) {
  json j;
  j["algebra"] = alg.name();
  j["ordering"] = ordering_name(d.ordering);
  json deltas = json::array();
  for (const auto& m : d.deltas) deltas.push_back(matrix_json(m.matrix()));
  j["deltas"] = std::move(deltas);
  return dump(j);
}

DeltaSequence delta_from_json(std::string_view text, const Algebra& alg) {
  const json j = parse(text);
  check_algebra_name(j, alg);
  DeltaSequence d;
  d.ordering = ordering_from(field<std::string>(j, "ordering"));
  const json& deltas = node(j, "deltas");
  if (!deltas.is_array() || deltas.empty()) throw ParseError("\"deltas\" must be a nonempty array");
  for (const auto& m : deltas) d.deltas.emplace_back(matrix_from(m, alg.dim(), alg.dim()));
  return d;
}

std::string decomposition_to_json(const Decomposition& d) {
  json j;
  json blocks = json::array();
  for (const auto& b : d.blocks) {
    json bj;
    json t = json::array();
    for (const auto& m : b.t) t.push_back(matrix_json(m));
    json h = json::array();
    for (const auto& v : b.h) h.push_back(vector_json(v));
    bj["T"] = std::move(t);
    bj["h"] = std::move(h);
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  j["verified_pairs"] = d.verified_pairs;
  return dump(j);
}

Decomposition decomposition_from_json(std::string_view text, const Algebra& alg) {
  const json j = parse(text);
  if (!alg.has_blocks()) throw ParseError("decompositions need a block algebra");
  const json& blocks = node(j, "blocks");
  if (!blocks.is_array() || blocks.size() != alg.blocks().size()) throw ParseError("one entry per block expected");
  Decomposition d;
  d.verified_pairs = field<std::size_t>(j, "verified_pairs");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t s = alg.blocks()[b].size;
    BlockDecomposition bd;
    const json& t = node(blocks[b], "T");
    const json& h = node(blocks[b], "h");
    if (!t.is_array() || !h.is_array() || t.size() != h.size()) throw ParseError("\"T\" and \"h\" lengths differ");
    for (const auto& m : t) bd.t.push_back(matrix_from(m, s, s));
    for (const auto& v : h) bd.h.push_back(vector_from(v, alg.dim()));
    d.blocks.push_back(std::move(bd));
  }
  return d;
}

std::string classification_to_json(const Algebra& alg, const XiClassification& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  if (c.associated) {
    json a;
    a["algebra"] = alg.name();
    a["order"] = c.associated->order();
    a["levels"] = family_levels(*c.associated);
    j["associate"] = std::move(a);
  } else {
    j["associate"] = nullptr;
  }
  j["witnesses"] = c.witnesses;
  return dump(j);
}

XiClassification classification_from_json(std::string_view text, const Algebra& alg) {
  const json j = parse(text);
  XiClassification c;
  const auto verdict = field<std::string>(j, "verdict");
  if (verdict == "HigherDerivation") {
    c.verdict = Verdict::HigherDerivation;
  } else if (verdict == "GeneralizedHigherDerivation") {
    c.verdict = Verdict::GeneralizedHigherDerivation;
  } else if (verdict == "NotClassified") {
    c.verdict = Verdict::NotClassified;
  } else {
    throw ParseError("unknown verdict \"" + verdict + "\"");
  }
  if (j.contains("associate") && !j.at("associate").is_null()) {
    check_algebra_name(j.at("associate"), alg);
    c.associated = family_from_node(j.at("associate"), alg);
  }
  if (j.contains("witnesses")) c.witnesses = field<std::vector<std::string>>(j, "witnesses");
  return c;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("write failed: " + path.string());
}

}  // namespace zplie::io
