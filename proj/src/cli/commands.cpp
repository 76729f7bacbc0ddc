#include "modvar/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modvar/ar.hpp"
#include "modvar/bar.hpp"
#include "modvar/errors.hpp"
#include "modvar/generic.hpp"
#include "modvar/io.hpp"
#include "modvar/rep.hpp"

namespace modvar {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::optional<std::uint64_t> prime;
  bool rational = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::uint64_t cell_limit = kDefaultCellLimit;
  bool json = false;
  std::string oracle;
  bool both_routes = false;
  std::string dump;
  std::string algebra;

  std::size_t index = 1;
  std::vector<std::string> files;
  bool sweep = false;
  bool inverted = false;
  std::vector<std::size_t> dims;
  std::uint64_t q = 2;
  std::vector<std::string> maps;
  std::uint64_t budget = kDefaultBruteBudget;
};

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

void emit(std::ostream& out, const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.json)
    out << j.dump(2) << "\n";
  else
    out << text << "\n";
}

void write_dump(const RunConfig& cfg, const json& j) {
  if (cfg.dump.empty()) return;
  std::ofstream f(cfg.dump);
  if (!f) throw InputError(cfg.dump + ": cannot write dump file");
  f << j.dump(2) << "\n";
}

// Algebra plus the modules named on the command line.
template <class F>
struct Loaded {
  FDAlgebra<F> A;
  std::vector<Rep<F>> mods;
};

template <class F>
Loaded<F> load_modules(const RunConfig& cfg, const F& field, std::size_t count) {
  if (cfg.files.size() != count)
    throw InputError("expected " + std::to_string(count) + " module file(s), got " + std::to_string(cfg.files.size()));
  std::vector<json> docs;
  for (const auto& f : cfg.files) docs.push_back(read_json_file(f));
  fs::path alg;
  if (!cfg.algebra.empty()) {
    alg = cfg.algebra;
  } else if (auto ref = algebra_ref(docs.front(), cfg.files.front())) {
    alg = *ref;
  } else {
    throw InputError(cfg.files.front() + ": no \"algebra\" reference and no --algebra given");
  }
  Loaded<F> L{build_algebra(load_algebra_spec(alg), field), {}};
  for (std::size_t k = 0; k < count; ++k) {
    Rep<F> M = module_from_json(L.A.quiver(), field, docs[k], cfg.files[k]);
    auto rel = check_relations(L.A, M);
    if (!rel.ok) throw InputError(cfg.files[k] + ": module does not satisfy the relations of " + alg.string());
    L.mods.push_back(std::move(M));
  }
  return L;
}

template <class F>
int cmd_algebra_info(const RunConfig& cfg, const F& field, std::ostream& out, std::ostream& err) {
  if (cfg.files.size() != 1) throw InputError("algebra-info takes one algebra file");
  const auto A = build_algebra(load_algebra_spec(cfg.files[0]), field);
  const std::size_t n = A.n_vertices();
  json basis = json::array();
  for (const auto& p : A.basis()) basis.push_back(to_string(A.quiver(), p));
  std::vector<std::int64_t> pdims(n, 0), idims(n, 0);
  std::vector<std::vector<std::int64_t>> cartan(n, std::vector<std::int64_t>(n, 0));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex v = 0; v < n; ++v) {
      const auto c = static_cast<std::int64_t>(A.paths_between(i, v).size());
      pdims[i] += c;
      idims[v] += c;
      cartan[v][i] = c;  // hom(P(v), P(i)) = dim P(i)_v
    }
  json j = {{"dim", A.dim()}, {"basis", basis}, {"projective_dims", pdims}, {"injective_dims", idims},
            {"hom_projectives", cartan}, {"field", field.name()}};
  if (A.truncation_warning()) {
    j["warning"] = *A.truncation_warning();
    err << "warning: " << *A.truncation_warning() << "\n";
  }
  std::ostringstream t;
  t << "dim " << A.dim() << "\nbasis";
  for (const auto& b : basis) t << " " << b.get<std::string>();
  t << "\nprojective dims " << join(pdims) << "\ninjective dims " << join(idims) << "\nhom(P(i),P(j))";
  for (const auto& row : cartan) t << "\n  " << join(row);
  emit(out, cfg, j, t.str());
  return 0;
}

template <class F>
void check_equal(const std::string& what, std::int64_t a, std::int64_t b) {
  if (a != b)
    throw CheckFailure(what + " routes disagree: " + std::to_string(a) + " vs " + std::to_string(b));
}

template <class F>
int cmd_invariant(const std::string& name, const RunConfig& cfg, const F& field, std::ostream& out) {
  const bool two = name == "hom" || name == "ext" || name == "eta" || name == "einv" || name == "homomega";
  auto L = load_modules(cfg, field, two ? 2 : 1);
  const FDAlgebra<F>& A = L.A;
  const Engine<F> E(A, EngineConfig{cfg.cell_limit});
  const Rep<F>& M = L.mods[0];
  const Rep<F>& N = two ? L.mods[1] : L.mods[0];
  const bool bar = cfg.oracle == "bar";
  const std::size_t idx = cfg.index;
  json j = {{"command", name}};
  json dump = json::object();
  std::string text;

  if (name == "hom" || name == "ext") {
    const std::size_t i = name == "hom" ? 0 : idx;
    const auto v = static_cast<std::int64_t>(i == 0 ? E.hom(M, N) : E.ext(M, N, i));
    j["value"] = v;
    if (name == "ext") j["i"] = i;
    text = std::to_string(v);
    if (bar) {
      const auto b = static_cast<std::int64_t>(ext_dim_bar(A, M, N, i, cfg.cell_limit));
      j["bar"] = b;
      check_equal<F>(name, v, b);
      json slices = json::array();
      for (std::size_t s = 1; s <= i + 1; ++s) slices.push_back(bar_slice_json(bar_slice(A, M, N, s, cfg.cell_limit)));
      dump["bar_slices"] = slices;
    }
    dump["resolution"] = E.resolution_json(M, i + 1);
  } else if (name == "eta") {
    const auto v = E.euler(M, N, idx);
    j["t"] = idx;
    j["value"] = v;
    text = std::to_string(v);
    if (bar) {
      const auto b = euler_bar(A, M, N, idx, cfg.cell_limit);
      j["bar"] = b;
      check_equal<F>("eta", v, b);
    }
    dump["resolution"] = E.resolution_json(M, idx + 1);
  } else if (name == "gvec") {
    const GVector g = g_vector(E, M);
    j["value"] = g;
    text = join(g);
    if (cfg.both_routes) {
      const GVector h = g_vector_via_simples(E, M);
      j["via_simples"] = h;
      text += "\n" + join(h);
      if (g != h) throw CheckFailure("g-vector routes disagree: " + join(g) + " vs " + join(h));
    }
    dump["resolution"] = E.resolution_json(M, 1);
  } else if (name == "einv") {
    const auto v = static_cast<std::int64_t>(e_invariant(E, M, N));
    j["value"] = v;
    text = std::to_string(v);
    if (cfg.both_routes) {
      const auto x = e_invariant_expansion(E, M, N);
      j["expansion"] = x;
      text += " " + std::to_string(x);
      check_equal<F>("E-invariant", v, x);
    }
  } else if (name == "tau") {
    const Rep<F> T = tau(E, M);
    j["value"] = module_to_json(A.quiver(), T);
    text = j["value"].dump();
  } else if (name == "syzygy") {
    const Rep<F> S = E.syzygy(M, idx);
    j["j"] = idx;
    j["value"] = module_to_json(A.quiver(), S);
    j["proj_mult"] = E.proj_mult(M, idx);
    text = j["value"].dump();
    dump["resolution"] = E.resolution_json(M, idx);
  } else if (name == "homomega") {
    const auto v = static_cast<std::int64_t>(E.hom_omega(M, N, idx));
    j["j"] = idx;
    j["value"] = v;
    text = std::to_string(v);
    if (bar) {
      // hom(Ω^j M, N) = p_j + (−1)^j η_j with η_j from the bar route.
      const auto eta = euler_bar(A, M, N, idx, cfg.cell_limit);
      const auto b = E.p_term(M, N, idx) + (idx % 2 ? -eta : eta);
      j["bar"] = b;
      check_equal<F>("hom_omega", v, b);
    }
    dump["resolution"] = E.resolution_json(M, idx);
  }
  write_dump(cfg, dump);
  emit(out, cfg, j, text);
  return 0;
}

template <class F>
int cmd_lab(const RunConfig& cfg, const F& field, std::ostream& out) {
  if (cfg.files.size() != 1) throw InputError("lab takes one scenario file");
  const Scenario sc = load_scenario(cfg.files[0]);
  const std::string where = sc.file.string();
  const FDAlgebra<F> A = build_algebra(sc.algebra, field);
  const Engine<F> E(A, EngineConfig{cfg.cell_limit});
  auto first = sampler_from_json(A, sc.family, where + ".family");
  std::unique_ptr<Sampler<F>> second;
  if (sc.second_family) second = sampler_from_json(A, *sc.second_family, where + ".second_family");
  const auto lambda0 = scalar_from_json(field, sc.special_lambda, where + ".special_lambda");
  std::optional<typename F::value_type> mu0;
  if (sc.special_mu) mu0 = scalar_from_json(field, *sc.special_mu, where + ".special_mu");
  const std::uint64_t seed = cfg.seed.value_or(sc.seed);
  const std::size_t samples = cfg.samples.value_or(sc.samples);
  if (samples < 1) throw InputError("--samples must be at least 1");
  const bool inverted = sc.inverted || cfg.inverted;
  const Rng rng = Rng(seed).split("lab");

  const std::vector<InvariantMap> maps = cfg.sweep ? sweep_maps(A.n_vertices()) : std::vector<InvariantMap>{sc.map};
  std::vector<SemicontReport> reports;
  bool pass = true;
  for (const auto& m : maps) {
    reports.push_back(semicontinuity_check(E, m, *first, second.get(), lambda0, mu0, rng, samples, inverted));
    pass = pass && reports.back().pass;
  }
  json rs = json::array();
  for (const auto& r : reports) rs.push_back(r.to_json());
  const json j = {{"scenario", sc.file.filename().string()},
                  {"seed", seed},
                  {"samples", samples},
                  {"field", field.name()},
                  {"reports", rs},
                  {"verdict", pass ? "pass" : "fail"}};
  emit(out, cfg, j, semicont_table(reports) + (pass ? "verdict: pass" : "verdict: fail"));
  return pass ? 0 : 1;
}

int cmd_brute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.files.size() != 1) throw InputError("brute takes one algebra file");
  const AlgebraSpec spec = load_algebra_spec(cfg.files[0]);
  std::vector<InvariantMap> maps;
  for (const auto& m : cfg.maps) maps.push_back(InvariantMap::from_name(m));
  if (maps.empty()) maps.push_back(InvariantMap{});
  const BruteForceReport rep = brute_force_generic(spec, cfg.dims, cfg.q, maps, cfg.budget);
  std::ostringstream t;
  t << "F_" << rep.q << ": " << rep.points << " points of " << rep.tuples << " tuples\n";
  for (const auto& m : rep.maps) {
    t << m.map << ": min " << m.min << " max " << m.max << " over " << m.evaluations << " evaluations;";
    for (const auto& [v, c] : m.histogram) t << " " << v << ":" << c;
    t << "\n";
  }
  std::string text = t.str();
  text.pop_back();
  emit(out, cfg, rep.to_json(), text);
  return 0;
}

template <class F>
int dispatch(const std::string& cmd, const RunConfig& cfg, const F& field, std::ostream& out, std::ostream& err) {
  if (cmd == "algebra-info") return cmd_algebra_info(cfg, field, out, err);
  if (cmd == "lab") return cmd_lab(cfg, field, out);
  return cmd_invariant(cmd, cfg, field, out);
}

void report_error(const RunConfig& cfg, std::ostream& out, std::ostream& err, const char* kind, const std::string& msg) {
  err << "error: " << msg << "\n";
  if (cfg.json) out << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump(2) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Homological invariants of quiver-algebra modules and semicontinuity checks", "modvar"};
  app.require_subcommand(1);
  app.fallthrough();

  auto* prime = app.add_option("--field-prime", cfg.prime, "Work over F_p (default p = 2147483647)");
  app.add_flag("--rational", cfg.rational, "Work over Q")->excludes(prime);
  app.add_option("--seed", cfg.seed, "Seed of the root random stream");
  app.add_option("--samples", cfg.samples, "Samples per generic-value estimate");
  app.add_option("--cell-limit", cfg.cell_limit, "Largest bar-complex matrix (rows) accepted");
  app.add_flag("--json", cfg.json, "Emit JSON");
  app.add_option("--oracle", cfg.oracle, "Cross-check route")->check(CLI::IsMember({"bar"}));
  app.add_flag("--both-routes", cfg.both_routes, "Compute g-vectors and E-invariants two ways");
  app.add_option("--dump-json", cfg.dump, "Write resolution and bar-slice data to a file");
  app.add_option("--algebra", cfg.algebra, "Algebra file (overrides module references)");

  auto* info = app.add_subcommand("algebra-info", "Basis, projective dimensions, hom between projectives");
  info->add_option("spec", cfg.files, "Algebra file")->required();

  struct Inv {
    const char* name;
    const char* help;
    const char* index;
    std::size_t files;
  };
  const Inv invs[] = {{"hom", "dim Hom(M, N)", nullptr, 2},
                      {"ext", "dim Ext^i(M, N)", "--i", 2},
                      {"eta", "truncated Euler form eta_t(M, N)", "--t", 2},
                      {"gvec", "g-vector of M", nullptr, 1},
                      {"tau", "AR translate of M", nullptr, 1},
                      {"einv", "E(M, N) = hom(N, tau M)", nullptr, 2},
                      {"syzygy", "j-th syzygy of M", "--j", 1},
                      {"homomega", "dim Hom(Omega^j M, N)", "--j", 2}};
  std::vector<CLI::App*> inv_cmds;
  for (const auto& inv : invs) {
    auto* sc = app.add_subcommand(inv.name, inv.help);
    if (inv.index) sc->add_option(inv.index, cfg.index, "Degree")->capture_default_str();
    sc->add_option("modules", cfg.files, inv.files == 2 ? "Module files M N" : "Module file M")
        ->required()
        ->expected(static_cast<int>(inv.files));
    inv_cmds.push_back(sc);
  }

  auto* lab = app.add_subcommand("lab", "Run a semicontinuity scenario");
  lab->add_option("scenario", cfg.files, "Scenario file")->required();
  lab->add_flag("--sweep", cfg.sweep, "Check every invariant map instead of the scenario's map");
  lab->add_flag("--inverted", cfg.inverted, "Expect the opposite direction (self-test)");

  auto* brute = app.add_subcommand("brute", "Exhaustive evaluation over a finite field");
  brute->add_option("spec", cfg.files, "Algebra file")->required();
  brute->add_option("--dims", cfg.dims, "Dimension vector")->required();
  brute->add_option("--q", cfg.q, "Field size (prime)")->capture_default_str();
  brute->add_option("--map", cfg.maps, "Map name, e.g. hom, ext(1), eta(2)/tied");
  brute->add_option("--budget", cfg.budget, "Largest number of matrix tuples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "brute") return cmd_brute(cfg, out);
    if (cfg.rational) return dispatch(cmd, cfg, RationalField{}, out, err);
    const PrimeField field = cfg.prime ? PrimeField(*cfg.prime) : PrimeField();
    return dispatch(cmd, cfg, field, out, err);
  } catch (const SpecializationError& e) {
    report_error(cfg, out, err, "specialization", e.what());
    return 2;
  } catch (const InputError& e) {
    report_error(cfg, out, err, "input", e.what());
    return 2;
  } catch (const ResourceLimit& e) {
    report_error(cfg, out, err, "resource", e.what());
    return 3;
  } catch (const CheckFailure& e) {
    report_error(cfg, out, err, "check", e.what());
    return 1;
  }
}

}  // namespace modvar
