// Acceptance runner. Prints one PASS/FAIL/WARN line per criterion and writes
// a JSON artifact per criterion into --artifacts DIR. Exits 1 if any hard
// criterion fails.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "modvar/ar.hpp"
#include "modvar/bar.hpp"
#include "modvar/cli.hpp"
#include "modvar/errors.hpp"
#include "modvar/generic.hpp"
#include "modvar/homology.hpp"
#include "support.hpp"

using namespace modvar;
using namespace modvar::tst;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using P = PrimeField;

// Collects named sub-checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t total = 0;
  json log = json::array();

  void expect(bool ok, const std::string& what, const json& detail = {}) {
    ++total;
    if (!ok) failures.push_back(what);
    log.push_back({{"check", what}, {"ok", ok}, {"detail", detail}});
  }
  template <class A, class B>
  void eq(const A& got, const B& want, const std::string& what) {
    std::ostringstream d;
    d << "got " << got << ", want " << want;
    expect(got == want, what, d.str());
  }
  bool ok() const { return failures.empty(); }
  std::string summary() const {
    std::ostringstream s;
    s << (total - failures.size()) << "/" << total << " checks";
    if (!failures.empty()) {
      s << "; failing:";
      for (std::size_t k = 0; k < failures.size() && k < 6; ++k) s << (k ? "," : "") << " " << failures[k];
      if (failures.size() > 6) s << ", ...";
    }
    return s.str();
  }
};

InvariantMap indep(MapKind k, std::size_t i = 0) { return {k, i, Pairing::Independent}; }
InvariantMap tied(MapKind k, std::size_t i = 0) { return {k, i, Pairing::Tied}; }

std::unique_ptr<Sampler<P>> fixture_sampler(const FDAlgebra<P>& A, const std::string& name) {
  return sampler_from_json(A, read_json_file(source_path("fixtures/families/" + name + ".json")), name);
}

template <class F>
std::vector<Rep<F>> corpus(const FDAlgebra<F>& A, const std::string& name, std::uint64_t seed) {
  std::vector<Rep<F>> out;
  for (Vertex v = 0; v < A.n_vertices(); ++v) {
    out.push_back(simple_module(A, v));
    out.push_back(projective_module(A, v));
    out.push_back(injective_module(A, v));
  }
  Rng rng(seed);
  if (name == "klein4")
    for (std::int64_t l : {1, 2, -2}) out.push_back(m_lambda(A, l));
  if (name == "wild_kronecker_ext") {
    HereditarySampler<F> s(A, {1, 2, 1});
    for (int k = 0; k < 2; ++k) out.push_back(s.draw(rng).module);
  }
  if (name == "kronecker")
    for (std::int64_t y : {0, 3}) out.push_back(kron11(A, 1, y));
  if (name == "a3") out.push_back(random_rep(A, {1, 1, 1}, rng));
  if (name == "pfeifer2") {
    JordanSampler<F> s(A, 2);
    out.push_back(s.draw(rng).module);
  }
  return out;
}

// ---------------------------------------------------------------------------

Check criterion_local_family() {
  Check c;
  auto A = algebra("klein4");
  Engine<P> E(A);
  auto Z = fixture_sampler(A, "m_lambda");
  const Rng rng(42);
  auto gv = [&](const InvariantMap& m) {
    auto r = generic_value<P>(E, m, *Z, nullptr, rng, 5);
    if (r.disagreement) c.expect(false, m.name() + " sample disagreement");
    return r.value;
  };
  c.eq(gv(tied(MapKind::Hom)), 2, "hom(Z)=2");
  c.eq(gv(indep(MapKind::Hom)), 1, "hom(Z,Z)=1");
  c.eq(gv(tied(MapKind::Ext, 1)), 1, "ext1(Z)=1");
  c.eq(gv(indep(MapKind::Ext, 1)), 0, "ext1(Z,Z)=0");
  c.eq(gv(indep(MapKind::E)), 1, "E(Z,Z)=1");
  c.eq(gv(tied(MapKind::E)), 2, "E(Z)=2");
  for (std::size_t i = 2; i <= 4; ++i) {
    c.eq(gv(tied(MapKind::Ext, i)), i % 2 ? 1 : 0, "ext" + std::to_string(i) + "(Z)=" + (i % 2 ? "1" : "0"));
    c.eq(gv(indep(MapKind::Ext, i)), 0, "ext" + std::to_string(i) + "(Z,Z)=0");
  }

  // Module-level statements on the same five seeded parameters.
  const P& f = A.field();
  bool tau_ok = true, omega_inv = true, omega_neg = true, omega2 = true;
  json lambdas = json::array();
  for (std::size_t k = 0; k < 5; ++k) {
    Rng r = rng.split("sample").split(k).split("first");
    auto s = Z->draw(r);
    const auto lambda = *s.lambda;
    lambdas.push_back(f.to_string(lambda));
    Rng iso = rng.split("iso").split(k);
    tau_ok &= iso_test(A, tau(E, s.module), s.module, 8, iso) == IsoVerdict::Iso;
    auto omega = E.syzygy(s.module, 1);
    omega_inv &= iso_test(A, omega, m_lambda(A, f.neg(f.inv(lambda))), 8, iso) == IsoVerdict::Iso;
    omega_neg &= iso_test(A, omega, m_lambda(A, f.neg(lambda)), 8, iso) == IsoVerdict::Iso;
    omega2 &= iso_test(A, E.syzygy(s.module, 2), s.module, 8, iso) == IsoVerdict::Iso;
  }
  c.expect(tau_ok, "tau(M)=M", lambdas);
  c.expect(omega_inv, "Omega(M_l)=M_{-1/l}", omega_neg ? "observed Omega(M_l)=M_{-l}" : "neither form observed");
  c.expect(omega2, "Omega^2=id");
  return c;
}

Check criterion_wild_hereditary() {
  Check c;
  auto A = algebra("wild_kronecker_ext");
  Engine<P> E(A);
  auto Z = fixture_sampler(A, "wild_kronecker_121");
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const Rng rng(seed);
    const std::string s = "seed " + std::to_string(seed) + ": ";
    auto gv = [&](const InvariantMap& m, std::int64_t want) {
      auto r = generic_value<P>(E, m, *Z, nullptr, rng, 5);
      c.expect(!r.disagreement, s + m.name() + " samples agree");
      c.eq(r.value, want, s + m.name() + "=" + std::to_string(want));
    };
    gv(indep(MapKind::End), 1);
    gv(tied(MapKind::Ext, 1), 1);
    gv(tied(MapKind::E), 1);
    gv(indep(MapKind::Hom), 0);
    gv(indep(MapKind::Ext, 1), 0);
    gv(indep(MapKind::E), 0);
    auto t = theorem_1_5_check<P>(E, *Z, rng, 5);
    c.expect(t.hom_strict && t.ext1_strict && t.e_strict && !t.disagreement, s + "three strict inequalities",
             t.to_json());
    auto b = brick_no_dense_orbit_check<P>(E, *Z, rng, 5);
    c.expect(b.applicable && b.pass && !b.disagreement, s + "brick check", b.to_json());
  }
  return c;
}

Check criterion_locally_free() {
  Check c;
  auto A = algebra("pfeifer2");
  Engine<P> E(A);
  auto Z = fixture_sampler(A, "pfeifer2_locally_free");
  const Rng rng(43);
  auto gv = [&](const InvariantMap& m, std::int64_t want) {
    auto r = generic_value<P>(E, m, *Z, nullptr, rng, 5);
    c.eq(r.value, want, m.name() + "=" + std::to_string(want));
  };
  gv(indep(MapKind::End), 2);
  gv(indep(MapKind::Hom), 0);
  gv(tied(MapKind::Ext, 1), 2);
  gv(tied(MapKind::E), 2);
  return c;
}

Check criterion_bar_oracle() {
  Check c;
  std::size_t pairs = 0;
  for (const char* name : {"klein4", "wild_kronecker_ext", "a3", "kronecker"}) {
    auto A = algebra(name);
    Engine<P> E(A);
    auto mods = corpus(A, name, 11);
    for (std::size_t a = 0; a < mods.size(); ++a)
      for (std::size_t b = 0; b < mods.size(); ++b) {
        ++pairs;
        for (std::size_t i = 0; i <= 3; ++i) {
          const auto res = E.ext(mods[a], mods[b], i);
          const auto bar = ext_dim_bar(A, mods[a], mods[b], i, kDefaultCellLimit);
          if (res != bar)
            c.expect(false, std::string(name) + " pair " + std::to_string(a) + "," + std::to_string(b) + " i=" +
                                std::to_string(i),
                     {{"resolution", res}, {"bar", bar}});
          else
            ++c.total;
        }
      }
  }
  c.expect(pairs >= 20, "at least 20 pairs", pairs);
  return c;
}

Check criterion_routes() {
  Check c;
  for (const char* name : {"klein4", "wild_kronecker_ext", "a3", "kronecker", "pfeifer2"}) {
    auto A = algebra(name);
    Engine<P> E(A);
    auto mods = corpus(A, name, 12);
    for (std::size_t a = 0; a < mods.size(); ++a) {
      c.expect(g_vector(E, mods[a]) == g_vector_via_simples(E, mods[a]), std::string(name) + " g #" + std::to_string(a));
      for (std::size_t b = 0; b < mods.size(); ++b) {
        const auto x = static_cast<std::int64_t>(e_invariant(E, mods[a], mods[b]));
        const auto y = e_invariant_expansion(E, mods[a], mods[b]);
        if (x != y)
          c.expect(false, std::string(name) + " E #" + std::to_string(a) + "," + std::to_string(b), {x, y});
        else
          ++c.total;
      }
    }
  }
  return c;
}

Check criterion_identities() {
  Check c;
  for (const char* name : {"klein4", "wild_kronecker_ext", "a3", "kronecker", "pfeifer2"}) {
    auto A = algebra(name);
    Engine<P> E(A);
    auto mods = corpus(A, name, 13);
    const std::string n = name;
    for (const auto& M : mods) {
      for (std::size_t j = 0; j <= 3; ++j) {
        const auto mult = E.proj_mult(M, j);
        for (Vertex i = 0; i < A.n_vertices(); ++i)
          c.expect(E.ext(M, simple_module(A, i), j) == mult[i], n + " ext^j(M,S) = [P_j:P]");
      }
      for (const auto& N : mods)
        for (std::size_t j = 1; j <= 3; ++j) {
          const auto eta = E.euler(M, N, j);
          c.expect(static_cast<std::int64_t>(E.hom_omega(M, N, j)) == E.p_term(M, N, j) + (j % 2 ? -eta : eta),
                   n + " hom(Omega^j M, N) identity");
        }
    }
    // The bar shortcut needs k_{t+1}; keep it to modules with small bar terms.
    std::vector<Rep<P>> small;
    for (const auto& M : mods)
      if (M.total_dim() <= 3) small.push_back(M);
    for (const auto& M : small)
      for (const auto& N : small)
        for (std::size_t t = 0; t <= 3; ++t) {
          try {
            c.expect(euler_bar(A, M, N, t, kDefaultCellLimit) == E.euler(M, N, t), n + " eta bar shortcut");
          } catch (const ResourceLimit&) {
            // Skipped pairs are not counted.
          }
        }
  }
  return c;
}

Check criterion_parity(const fs::path& artifacts) {
  Check c;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(source_path("scenarios")))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  c.expect(files.size() >= 6, "at least 6 scenarios", files.size());
  auto run = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "modvar");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str() + e.str();
    return code;
  };
  json reports = json::object();
  for (const auto& f : files) {
    std::string out, inv_out;
    const int code = run({"--json", "lab", "--sweep", f.string()}, out);
    c.expect(code == 0, f.stem().string() + " sweep passes");
    reports[f.stem().string()] = json::parse(out, nullptr, false);
    const int inv = run({"--json", "lab", "--sweep", "--inverted", f.string()}, inv_out);
    c.expect(inv == 1, f.stem().string() + " inverted sweep fails");
  }
  std::string out;
  c.expect(run({"lab", source_path("scenarios/selftest/inverted.json")}, out) == 1, "selftest/inverted exits 1");
  std::ofstream(artifacts / "parity_reports.json") << reports.dump(2) << "\n";
  return c;
}

Check criterion_brute() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  auto local = brute_force_generic(spec("klein4"), {2}, 3, {indep(MapKind::Hom)});
  c.eq(local.tuples, 6561u, "6561 tuples over F_3");
  c.eq(local.maps[0].min, 1, "klein4 d=2 F_3 min hom = 1");
  {
    auto A = algebra("klein4");
    Engine<P> E(A);
    auto Z = fixture_sampler(A, "m_lambda");
    c.eq(generic_value<P>(E, indep(MapKind::Hom), *Z, nullptr, Rng(8), 5).value, local.maps[0].min,
         "sampled generic hom matches");
  }
  auto kr = brute_force_generic(spec("kronecker"), {1, 1}, 2, {indep(MapKind::Hom)});
  c.eq(kr.maps[0].min, 0, "kronecker (1,1) F_2 min hom = 0");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 30.0, "runtime < 30 s", secs);
  c.log.push_back({{"klein4", local.to_json()}, {"kronecker", kr.to_json()}});
  return c;
}

Check criterion_euler_form() {
  Check c;
  auto A = algebra("wild_kronecker_ext");
  Engine<P> E(A);
  const Quiver& q = A.quiver();
  using D = std::vector<std::size_t>;
  const std::vector<std::pair<D, D>> dims = {{{1, 2, 1}, {1, 2, 1}}, {{1, 1, 0}, {0, 1, 1}}, {{2, 1, 1}, {1, 1, 2}}};
  Rng rng(77);
  for (const auto& [d, e] : dims) {
    std::int64_t form = 0;
    for (std::size_t i = 0; i < d.size(); ++i) form += static_cast<std::int64_t>(d[i] * e[i]);
    for (const auto& a : q.arrows()) form -= static_cast<std::int64_t>(d[a.src] * e[a.tgt]);
    HereditarySampler<P> sd(A, d), se(A, e);
    std::vector<std::int64_t> values;
    for (int k = 0; k < 5; ++k) {
      auto M = sd.draw(rng).module, N = se.draw(rng).module;
      values.push_back(E.euler(M, N, 1));
    }
    bool constant = std::all_of(values.begin(), values.end(), [&](auto v) { return v == values[0]; });
    c.expect(constant && values[0] == form, "eta_1 constant = <d,e>", {{"values", values}, {"euler_form", form}});
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string dir = "artifacts";
  app.add_option("--artifacts", dir, "directory for per-criterion JSON");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(dir);

  struct Criterion {
    int id;
    std::string title;
    bool hard;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "local algebra family M_lambda", true, criterion_local_family},
      {2, "wild hereditary d=(1,2,1), 5 seeds", true, criterion_wild_hereditary},
      {3, "locally free n=2 constructed sampler", false, criterion_locally_free},
      {4, "ext resolution vs bar oracle, i<=3", true, criterion_bar_oracle},
      {5, "g-vector and E-invariant routes", true, criterion_routes},
      {6, "homological identities, j,t<=3", true, criterion_identities},
      {7, "semicontinuity parity scenarios", true, [&] { return criterion_parity(dir); }},
      {8, "brute-force oracle", true, criterion_brute},
      {9, "hereditary Euler form constancy", true, criterion_euler_form},
  };

  int hard_failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = c.ok() ? "PASS" : (cr.hard ? "FAIL" : "WARN");
    if (!c.ok() && cr.hard) ++hard_failures;
    std::cout << tag << " criterion " << cr.id << " (" << cr.title << "): " << c.summary() << " [" << std::fixed
              << std::setprecision(1) << secs << " s]" << std::endl;
    json art = {{"criterion", cr.id}, {"title", cr.title}, {"hard", cr.hard}, {"pass", c.ok()},
                {"seconds", secs},    {"checks", c.log}};
    std::ofstream(fs::path(dir) / ("criterion_" + std::to_string(cr.id) + ".json")) << art.dump(2) << "\n";
    if (!cr.hard && !c.ok())
      std::ofstream(fs::path(dir) / ("criterion_" + std::to_string(cr.id) + "_WARNING.txt"))
          << "informational criterion did not match expected values: " << c.summary() << "\n";
  }
  std::cout << (hard_failures ? "acceptance: " + std::to_string(hard_failures) + " hard criterion(s) failing"
                              : std::string("acceptance: all hard criteria pass"))
            << std::endl;
  return hard_failures ? 1 : 0;
}
