#include "modvar/io.hpp"

#include <fstream>
#include <sstream>

#include "modvar/errors.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw InputError(where + ": " + msg); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t as_size(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> dims_from_json(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != n) fail(where, "length " + std::to_string(j.size()) + " does not match " + std::to_string(n) + " vertices");
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < j.size(); ++i) d.push_back(as_size(j[i], where + "[" + std::to_string(i) + "]"));
  return d;
}

// Rows of a dims[tgt] x dims[src] matrix; [] is accepted for any empty shape.
template <class Cell>
void for_each_entry(const json& m, std::size_t rows, std::size_t cols, const std::string& where, Cell&& cell) {
  if (!m.is_array()) fail(where, "expected an array of rows");
  if (rows * cols == 0 && m.empty()) return;
  if (m.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(m.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!m[r].is_array() || m[r].size() != cols)
      fail(rw, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) cell(r, c, m[r][c], rw + "[" + std::to_string(c) + "]");
  }
}

void check_arrow_keys(const Quiver& q, const json& mats, const std::string& where) {
  if (!mats.is_object()) fail(where, "expected an object keyed by arrow name");
  for (auto it = mats.begin(); it != mats.end(); ++it)
    if (!q.find(it.key())) fail(where, "unknown arrow '" + it.key() + "'");
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// Replace a string reference by the file it names (relative to `base`).
json resolve_ref(const json& j, const fs::path& base, const std::string& where) {
  if (j.is_string()) {
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = base / p;
    return read_json_file(p);
  }
  if (!j.is_object()) fail(where, "expected a file reference or an inline object");
  return j;
}

}  // namespace

json read_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(file.string() + ":" + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": invalid JSON");
  }
}

AlgebraSpec algebra_spec_from_json(const json& j, const std::string& where) {
  AlgebraSpec spec;
  const std::size_t n = as_size(need(j, "vertices", where), where + ".vertices");
  const json& arrows = need(j, "arrows", where);
  if (!arrows.is_array()) fail(where + ".arrows", "expected an array");
  std::vector<Arrow> as;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const std::string w = where + ".arrows[" + std::to_string(k) + "]";
    const json& name = need(arrows[k], "name", w);
    if (!name.is_string() || name.get<std::string>().empty()) fail(w + ".name", "expected a nonempty string");
    as.push_back({name.get<std::string>(), as_size(need(arrows[k], "src", w), w + ".src"),
                  as_size(need(arrows[k], "tgt", w), w + ".tgt")});
  }
  try {
    spec.quiver = Quiver(n, std::move(as));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
  if (j.contains("relations")) {
    const json& rels = j["relations"];
    if (!rels.is_array()) fail(where + ".relations", "expected an array");
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const std::string w = where + ".relations[" + std::to_string(r) + "]";
      if (!rels[r].is_array() || rels[r].empty()) fail(w, "expected a nonempty array of terms");
      Relation rel;
      for (std::size_t t = 0; t < rels[r].size(); ++t) {
        const std::string wt = w + "[" + std::to_string(t) + "]";
        const json& coeff = need(rels[r][t], "coeff", wt);
        if (!coeff.is_number_integer()) fail(wt + ".coeff", "expected an integer");
        const json& path = need(rels[r][t], "path", wt);
        if (!path.is_array() || path.empty()) fail(wt + ".path", "expected a nonempty array of arrow names");
        std::vector<ArrowId> ids;
        for (const auto& a : path) {
          if (!a.is_string()) fail(wt + ".path", "expected arrow names");
          auto id = spec.quiver.find(a.get<std::string>());
          if (!id) fail(wt + ".path", "unknown arrow '" + a.get<std::string>() + "'");
          ids.push_back(*id);
        }
        try {
          rel.push_back({coeff.get<std::int64_t>(), Path::from_arrows(spec.quiver, std::move(ids))});
        } catch (const InputError& e) {
          fail(wt + ".path", e.what());
        }
      }
      spec.relations.push_back(std::move(rel));
    }
  }
  spec.trunc = as_size(need(j, "trunc", where), where + ".trunc");
  try {
    spec.validate();
  } catch (const InputError& e) {
    fail(where, e.what());
  }
  return spec;
}

AlgebraSpec load_algebra_spec(const fs::path& file) { return algebra_spec_from_json(read_json_file(file), file.string()); }

json algebra_spec_to_json(const AlgebraSpec& spec) {
  const Quiver& q = spec.quiver;
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}});
  json rels = json::array();
  for (const auto& r : spec.relations) {
    json terms = json::array();
    for (const auto& t : r) {
      json path = json::array();
      for (auto a : t.path.arrows) path.push_back(q.arrow(a).name);
      terms.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    rels.push_back(terms);
  }
  return {{"vertices", q.n_vertices()}, {"arrows", arrows}, {"relations", rels}, {"trunc", spec.trunc}};
}

template <class F>
typename F::value_type scalar_from_json(const F& field, const json& j, const std::string& where) {
  if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
  if (!j.is_string()) fail(where, "expected an integer or a string");
  try {
    Expr<F> e = Expr<F>::parse(j.get<std::string>(), field);
    if (e.depends_on_parameter()) fail(where, "expected a constant, got '" + j.get<std::string>() + "'");
    return e.eval(field, field.zero());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

template <class F>
Rep<F> module_from_json(const Quiver& q, const F& field, const json& j, const std::string& where) {
  Rep<F> M = Rep<F>::zero(q, field, dims_from_json(need(j, "dim_vector", where), q.n_vertices(), where + ".dim_vector"));
  if (!j.contains("matrices")) return M;
  const json& mats = j["matrices"];
  check_arrow_keys(q, mats, where + ".matrices");
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arrow = q.arrow(a);
    auto it = mats.find(arrow.name);
    if (it == mats.end()) continue;
    for_each_entry(*it, M.dims[arrow.tgt], M.dims[arrow.src], where + ".matrices." + arrow.name,
                   [&](std::size_t r, std::size_t c, const json& v, const std::string& w) {
                     M.mats[a](r, c) = scalar_from_json(field, v, w);
                   });
  }
  return M;
}

template <class F>
Rep<F> load_module(const Quiver& q, const F& field, const fs::path& file) {
  return module_from_json(q, field, read_json_file(file), file.string());
}

template <class F>
json module_to_json(const Quiver& q, const Rep<F>& M) {
  json mats = json::object();
  for (ArrowId a = 0; a < q.n_arrows(); ++a) mats[q.arrow(a).name] = matrix_json(M.mats[a]);
  return {{"dim_vector", M.dims}, {"matrices", mats}};
}

template <class F>
ModuleFamily<F> family_from_json(const Quiver& q, const F& field, const json& j, const std::string& where) {
  ModuleFamily<F> fam;
  fam.field = field;
  fam.dims = dims_from_json(need(j, "dim_vector", where), q.n_vertices(), where + ".dim_vector");
  const json mats = j.contains("matrices") ? j["matrices"] : json::object();
  check_arrow_keys(q, mats, where + ".matrices");
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arrow = q.arrow(a);
    const std::size_t rows = fam.dims[arrow.tgt], cols = fam.dims[arrow.src];
    std::vector<Expr<F>> entries(rows * cols, Expr<F>::constant(field.zero(), field));
    auto it = mats.find(arrow.name);
    if (it != mats.end()) {
      for_each_entry(*it, rows, cols, where + ".matrices." + arrow.name,
                     [&](std::size_t r, std::size_t c, const json& v, const std::string& w) {
                       if (v.is_number_integer()) {
                         entries[r * cols + c] = Expr<F>::constant(field.from_int(v.get<std::int64_t>()), field);
                       } else if (v.is_string()) {
                         try {
                           entries[r * cols + c] = Expr<F>::parse(v.get<std::string>(), field);
                         } catch (const InputError& e) {
                           fail(w, e.what());
                         }
                       } else {
                         fail(w, "expected an integer or an expression string");
                       }
                     });
    }
    fam.entries.push_back(std::move(entries));
  }
  if (j.contains("excluded")) {
    const json& ex = j["excluded"];
    if (!ex.is_array()) fail(where + ".excluded", "expected an array");
    for (std::size_t k = 0; k < ex.size(); ++k)
      fam.excluded.push_back(scalar_from_json(field, ex[k], where + ".excluded[" + std::to_string(k) + "]"));
  }
  return fam;
}

template <class F>
std::unique_ptr<Sampler<F>> sampler_from_json(const FDAlgebra<F>& A, const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  if (!j.contains("sampler"))
    return std::make_unique<FamilySampler<F>>(A.quiver(), family_from_json(A.quiver(), A.field(), j, where));
  const json& kind = j["sampler"];
  if (!kind.is_string()) fail(where + ".sampler", "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "hereditary")
      return std::make_unique<HereditarySampler<F>>(
          A, dims_from_json(need(j, "dim_vector", where), A.n_vertices(), where + ".dim_vector"));
    if (k == "jordan") return std::make_unique<JordanSampler<F>>(A, as_size(need(j, "n", where), where + ".n"));
    if (k == "constant")
      return std::make_unique<ConstantSampler<F>>(module_from_json(A.quiver(), A.field(), need(j, "module", where),
                                                                   where + ".module"));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where, msg);
  }
  fail(where + ".sampler", "unknown sampler '" + k + "'");
}

std::optional<fs::path> algebra_ref(const json& j, const fs::path& file) {
  if (!j.is_object() || !j.contains("algebra")) return std::nullopt;
  if (!j["algebra"].is_string()) fail(file.string() + ".algebra", "expected a file path");
  fs::path p = j["algebra"].get<std::string>();
  if (p.is_relative()) p = file.parent_path() / p;
  return p;
}

Scenario load_scenario(const fs::path& file) {
  const json j = read_json_file(file);
  const std::string where = file.string();
  const fs::path base = file.parent_path();
  Scenario s;
  s.file = file;
  const json& alg = need(j, "algebra", where);
  if (alg.is_string()) {
    fs::path p = alg.get<std::string>();
    if (p.is_relative()) p = base / p;
    s.algebra = load_algebra_spec(p);
  } else {
    s.algebra = algebra_spec_from_json(alg, where + ".algebra");
  }
  s.family = resolve_ref(need(j, "family", where), base, where + ".family");
  if (j.contains("second_family")) s.second_family = resolve_ref(j["second_family"], base, where + ".second_family");
  try {
    s.map = InvariantMap::from_json(need(j, "map", where));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where + ".map", msg);
  }
  s.special_lambda = need(j, "special_lambda", where);
  if (j.contains("special_mu")) s.special_mu = j["special_mu"];
  if (j.contains("samples")) s.samples = as_size(j["samples"], where + ".samples");
  if (s.samples < 1) fail(where + ".samples", "must be at least 1");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(where + ".seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("direction")) {
    const json& d = j["direction"];
    if (d == "inverted")
      s.inverted = true;
    else if (d != "expected")
      fail(where + ".direction", "expected \"expected\" or \"inverted\"");
  }
  return s;
}

#define MODVAR_INSTANTIATE_IO(F)                                                                                 \
  template typename F::value_type scalar_from_json<F>(const F&, const json&, const std::string&);               \
  template Rep<F> module_from_json<F>(const Quiver&, const F&, const json&, const std::string&);                \
  template Rep<F> load_module<F>(const Quiver&, const F&, const fs::path&);                                     \
  template json module_to_json<F>(const Quiver&, const Rep<F>&);                                                \
  template ModuleFamily<F> family_from_json<F>(const Quiver&, const F&, const json&, const std::string&);       \
  template std::unique_ptr<Sampler<F>> sampler_from_json<F>(const FDAlgebra<F>&, const json&, const std::string&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_IO)

}  // namespace modvar
