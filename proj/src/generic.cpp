#include "modvar/generic.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <limits>
#include <sstream>

#include "modvar/ar.hpp"
#include "modvar/errors.hpp"
#include "modvar/instantiate.hpp"
#include "modvar/rep.hpp"

namespace modvar {

std::string to_string(Direction d) { return d == Direction::Usc ? "usc" : "lsc"; }
Direction opposite(Direction d) { return d == Direction::Usc ? Direction::Lsc : Direction::Usc; }

Direction InvariantMap::direction() const {
  return (kind == MapKind::Eta && index % 2 == 1) ? Direction::Lsc : Direction::Usc;
}

namespace {

const char* kind_name(MapKind k) {
  switch (k) {
    case MapKind::Hom: return "hom";
    case MapKind::Ext: return "ext";
    case MapKind::Eta: return "eta";
    case MapKind::G: return "g";
    case MapKind::E: return "E";
    case MapKind::End: return "end";
    case MapKind::HomOmega: return "hom_omega";
  }
  return "?";
}

const char* index_key(MapKind k) {
  switch (k) {
    case MapKind::Ext:
    case MapKind::G: return "i";
    case MapKind::Eta: return "t";
    case MapKind::HomOmega: return "j";
    default: return nullptr;
  }
}

}  // namespace

std::string InvariantMap::name() const {
  std::string s = kind_name(kind);
  if (index_key(kind)) s += "(" + std::to_string(index) + ")";
  if (arity() == 2 && pairing == Pairing::Tied) s += "/tied";
  return s;
}

InvariantMap InvariantMap::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("map must be an object with a string \"kind\"");
  InvariantMap m;
  const std::string k = j["kind"].get<std::string>();
  static const std::map<std::string, MapKind> kinds = {
      {"hom", MapKind::Hom}, {"ext", MapKind::Ext}, {"eta", MapKind::Eta},           {"g", MapKind::G},
      {"E", MapKind::E},     {"e", MapKind::E},     {"end", MapKind::End},           {"hom_omega", MapKind::HomOmega},
      {"homomega", MapKind::HomOmega}};
  auto it = kinds.find(k);
  if (it == kinds.end()) throw InputError("unknown map kind '" + k + "'");
  m.kind = it->second;
  if (const char* key = index_key(m.kind)) {
    if (!j.contains(key) || !(j[key].is_number_integer() && j[key].get<long long>() >= 0))
      throw InputError("map kind '" + k + "' needs a nonnegative integer \"" + key + "\"");
    m.index = j[key].get<std::size_t>();
  }
  if (j.contains("mode")) {
    const std::string mode = j["mode"].get<std::string>();
    if (mode == "tied")
      m.pairing = Pairing::Tied;
    else if (mode == "independent")
      m.pairing = Pairing::Independent;
    else
      throw InputError("map mode must be \"tied\" or \"independent\", got '" + mode + "'");
  }
  return m;
}

InvariantMap InvariantMap::from_name(const std::string& s) {
  std::string rest = s;
  nlohmann::json j = nlohmann::json::object();
  if (auto slash = rest.find('/'); slash != std::string::npos) {
    j["mode"] = rest.substr(slash + 1);
    rest.resize(slash);
  }
  if (auto open = rest.find('('); open != std::string::npos) {
    if (rest.back() != ')') throw InputError("malformed map name '" + s + "'");
    const std::string num = rest.substr(open + 1, rest.size() - open - 2);
    rest.resize(open);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("malformed map index in '" + s + "'");
    MapKind probe = from_json({{"kind", rest}, {"i", 0u}, {"t", 0u}, {"j", 0u}}).kind;
    const char* key = index_key(probe);
    if (!key) throw InputError("map '" + rest + "' takes no index");
    j[key] = std::stoull(num);
  }
  j["kind"] = rest;
  return from_json(j);
}

nlohmann::json InvariantMap::to_json() const {
  nlohmann::json j = {{"kind", kind_name(kind)}};
  if (const char* key = index_key(kind)) j[key] = index;
  if (arity() == 2) j["mode"] = pairing == Pairing::Tied ? "tied" : "independent";
  return j;
}

std::vector<InvariantMap> sweep_maps(std::size_t n_vertices, std::size_t max_index) {
  std::vector<InvariantMap> out;
  auto both = [&](MapKind k, std::size_t idx) {
    out.push_back({k, idx, Pairing::Independent});
    out.push_back({k, idx, Pairing::Tied});
  };
  both(MapKind::Hom, 0);
  out.push_back({MapKind::End, 0, Pairing::Independent});
  both(MapKind::E, 0);
  for (std::size_t i = 1; i <= max_index; ++i) both(MapKind::Ext, i);
  for (std::size_t t = 0; t <= max_index; ++t) both(MapKind::Eta, t);
  for (std::size_t j = 1; j <= max_index; ++j) both(MapKind::HomOmega, j);
  for (std::size_t i = 0; i < n_vertices; ++i) out.push_back({MapKind::G, i, Pairing::Independent});
  return out;
}

template <class F>
std::int64_t evaluate(const Engine<F>& E, const InvariantMap& map, const Rep<F>& M, const Rep<F>& N) {
  auto s = [](std::size_t v) { return static_cast<std::int64_t>(v); };
  switch (map.kind) {
    case MapKind::Hom: return s(E.hom(M, N));
    case MapKind::Ext: return s(E.ext(M, N, map.index));
    case MapKind::Eta: return E.euler(M, N, map.index);
    case MapKind::E: return s(e_invariant(E, M, N));
    case MapKind::End: return s(E.hom(M, M));
    case MapKind::HomOmega: return s(E.hom_omega(M, N, map.index));
    case MapKind::G: {
      if (map.index >= E.algebra().n_vertices()) throw InputError("g index out of range");
      return g_vector(E, M)[map.index];
    }
  }
  return 0;
}

namespace {

template <class F>
struct Drawn {
  Rep<F> M, N;
  std::vector<typename F::value_type> lambdas;
};

template <class F>
Drawn<F> draw_pair(const InvariantMap& map, const Sampler<F>& first, const Sampler<F>& second, const Rng& stream) {
  Rng r1 = stream.split("first");
  Sample<F> a = first.draw(r1);
  Drawn<F> d;
  if (a.lambda) d.lambdas.push_back(*a.lambda);
  if (map.arity() == 2 && map.pairing == Pairing::Independent) {
    Rng r2 = stream.split("second");
    Sample<F> b = second.draw(r2);
    if (b.lambda) d.lambdas.push_back(*b.lambda);
    d.N = std::move(b.module);
  } else {
    d.N = a.module;
  }
  d.M = std::move(a.module);
  return d;
}

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr err;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(modvar_parallel_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

template <class F>
GenericEstimate generic_value(const Engine<F>& E, const InvariantMap& map, const Sampler<F>& first,
                              const Sampler<F>* second, const Rng& rng, std::size_t samples) {
  if (samples < 1) throw InputError("generic_value needs at least one sample");
  const F& f = E.algebra().field();
  const Sampler<F>& other = second ? *second : first;
  const Rng base = rng.split("sample");
  std::vector<std::vector<typename F::value_type>> keys(samples);
  std::vector<SampleRecord> recs(samples);
  parallel_for(samples, [&](std::size_t k) {
    Drawn<F> d = draw_pair(map, first, other, base.split(static_cast<std::uint64_t>(k)));
    recs[k].index = k;
    recs[k].value = evaluate(E, map, d.M, d.N);
    for (const auto& l : d.lambdas) recs[k].lambdas.push_back(f.to_string(l));
    keys[k] = std::move(d.lambdas);
  });
  std::vector<std::size_t> order(samples);
  for (std::size_t k = 0; k < samples; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (keys[x] != keys[y]) return keys[x] < keys[y];
    return x < y;
  });
  GenericEstimate est;
  for (auto k : order) est.samples.push_back(recs[k]);
  const bool usc = map.direction() == Direction::Usc;
  est.value = recs[0].value;
  for (const auto& r : recs) {
    est.value = usc ? std::min(est.value, r.value) : std::max(est.value, r.value);
    if (r.value != recs[0].value) est.disagreement = true;
  }
  return est;
}

nlohmann::json SemicontReport::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& r : samples) s.push_back({{"index", r.index}, {"lambda", r.lambdas}, {"value", r.value}});
  return {{"map", map},
          {"direction", to_string(direction)},
          {"inverted", inverted},
          {"generic_value", generic_value},
          {"special_value", special_value},
          {"special_point", special_point},
          {"disagreement", disagreement},
          {"verdict", pass ? "pass" : "fail"},
          {"samples", s}};
}

template <class F>
SemicontReport semicontinuity_check(const Engine<F>& E, const InvariantMap& map, const Sampler<F>& first,
                                    const Sampler<F>* second, const typename F::value_type& lambda0,
                                    const std::optional<typename F::value_type>& mu0, const Rng& rng,
                                    std::size_t samples, bool invert) {
  const F& f = E.algebra().field();
  const Rep<F> M0 = first.at(lambda0);
  Rep<F> N0 = M0;
  std::string point = "lambda0=" + f.to_string(lambda0);
  if (map.arity() == 2 && map.pairing == Pairing::Independent) {
    const auto mu = mu0 ? *mu0 : lambda0;
    N0 = (second ? *second : first).at(mu);
    point += ", mu0=" + f.to_string(mu);
  }
  const GenericEstimate est = generic_value(E, map, first, second, rng, samples);
  SemicontReport rep;
  rep.map = map.name();
  rep.inverted = invert;
  rep.direction = invert ? opposite(map.direction()) : map.direction();
  rep.generic_value = est.value;
  rep.special_value = evaluate(E, map, M0, N0);
  rep.special_point = point;
  rep.disagreement = est.disagreement;
  rep.samples = est.samples;
  rep.pass = rep.direction == Direction::Usc ? rep.special_value >= rep.generic_value
                                             : rep.special_value <= rep.generic_value;
  return rep;
}

nlohmann::json BruteForceReport::to_json() const {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : maps) {
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [v, c] : m.histogram) h[std::to_string(v)] = c;
    ms.push_back({{"map", m.map}, {"min", m.min}, {"max", m.max}, {"evaluations", m.evaluations}, {"histogram", h}});
  }
  return {{"q", q}, {"dims", dims}, {"tuples", tuples}, {"points", points}, {"maps", ms}};
}

BruteForceReport brute_force_generic(const AlgebraSpec& spec, const std::vector<std::size_t>& dims, std::uint64_t q,
                                     const std::vector<InvariantMap>& maps, std::uint64_t budget) {
  if (!is_prime(q)) throw InputError("brute force field size " + std::to_string(q) + " is not prime");
  const PrimeField fq(q);
  const FDAlgebra<PrimeField> A = build_algebra(spec, fq);
  const Quiver& qv = A.quiver();
  if (dims.size() != qv.n_vertices()) throw InputError("dimension vector length does not match the quiver");
  std::size_t entries = 0;
  for (const auto& a : qv.arrows()) entries += dims[a.tgt] * dims[a.src];
  std::uint64_t tuples = 1;
  for (std::size_t k = 0; k < entries; ++k) {
    if (tuples > budget / q) {
      throw ResourceLimit("brute force over F_" + std::to_string(q) + " needs " + std::to_string(q) + "^" +
                          std::to_string(entries) + " tuples, budget is " + std::to_string(budget));
    }
    tuples *= q;
  }
  BruteForceReport rep;
  rep.q = q;
  rep.dims = dims;
  rep.tuples = tuples;

  std::vector<Rep<PrimeField>> points;
  for (std::uint64_t t = 0; t < tuples; ++t) {
    Rep<PrimeField> M = Rep<PrimeField>::zero(qv, fq, dims);
    std::uint64_t x = t;
    for (auto& m : M.mats)
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
          m(r, c) = x % q;
          x /= q;
        }
    if (check_relations(A, M).ok) points.push_back(std::move(M));
  }
  rep.points = points.size();

  const Engine<PrimeField> E(A);
  for (const auto& map : maps) {
    const bool pairs = map.arity() == 2 && map.pairing == Pairing::Independent;
    const std::size_t n = points.size();
    const std::size_t count = pairs ? n * n : n;
    std::vector<std::int64_t> values(count);
    parallel_for(count, [&](std::size_t k) {
      const auto& M = points[pairs ? k / n : k];
      const auto& N = pairs ? points[k % n] : M;
      values[k] = evaluate(E, map, M, N);
    });
    BruteForceStats st;
    st.map = map.name();
    st.evaluations = count;
    if (!values.empty()) {
      st.min = *std::min_element(values.begin(), values.end());
      st.max = *std::max_element(values.begin(), values.end());
    }
    for (auto v : values) ++st.histogram[v];
    rep.maps.push_back(std::move(st));
  }
  return rep;
}

nlohmann::json Theorem15Report::to_json() const {
  return {{"hom_ZZ", hom_zz},
          {"end_Z", end_z},
          {"ext1_ZZ", ext1_zz},
          {"ext1_Z", ext1_z},
          {"E_ZZ", e_zz},
          {"E_Z", e_z},
          {"hom_strict", hom_strict},
          {"ext1_strict", ext1_strict},
          {"E_strict", e_strict},
          {"consistent", consistent},
          {"no_dense_orbit_expected", no_dense_orbit_expected},
          {"disagreement", disagreement},
          {"verdict", pass ? "pass" : "fail"}};
}

namespace {

// Two independent draws certified non-isomorphic.
template <class F>
bool distinct_orbits(const Engine<F>& E, const Sampler<F>& sampler, const Rng& rng) {
  const Rng base = rng.split("orbit");
  Rng ra = base.split("a"), rb = base.split("b"), rt = base.split("trials");
  const Rep<F> M = sampler.draw(ra).module;
  const Rep<F> N = sampler.draw(rb).module;
  return iso_test(E.algebra(), M, N, kDefaultIsoTrials, rt) == IsoVerdict::NotIso;
}

}  // namespace

template <class F>
Theorem15Report theorem_1_5_check(const Engine<F>& E, const Sampler<F>& sampler, const Rng& rng,
                                  std::size_t samples) {
  Theorem15Report r;
  auto gv = [&](MapKind k, std::size_t idx, Pairing p) {
    auto est = generic_value<F>(E, InvariantMap{k, idx, p}, sampler, nullptr, rng, samples);
    r.disagreement = r.disagreement || est.disagreement;
    return est.value;
  };
  r.hom_zz = gv(MapKind::Hom, 0, Pairing::Independent);
  r.end_z = gv(MapKind::End, 0, Pairing::Independent);
  r.ext1_zz = gv(MapKind::Ext, 1, Pairing::Independent);
  r.ext1_z = gv(MapKind::Ext, 1, Pairing::Tied);
  r.e_zz = gv(MapKind::E, 0, Pairing::Independent);
  r.e_z = gv(MapKind::E, 0, Pairing::Tied);
  r.hom_strict = r.hom_zz < r.end_z;
  r.ext1_strict = r.ext1_zz < r.ext1_z;
  r.e_strict = r.e_zz < r.e_z;
  const int strict = int(r.hom_strict) + int(r.ext1_strict) + int(r.e_strict);
  r.consistent = strict == 0 || strict == 3;
  r.no_dense_orbit_expected = distinct_orbits(E, sampler, rng);
  r.pass = r.consistent && (!r.no_dense_orbit_expected || strict == 3);
  return r;
}

nlohmann::json BrickReport::to_json() const {
  return {{"applicable", applicable},       {"reason", reason}, {"end_Z", end_z}, {"hom_ZZ", hom_zz},
          {"disagreement", disagreement}, {"verdict", pass ? "pass" : "fail"}};
}

template <class F>
BrickReport brick_no_dense_orbit_check(const Engine<F>& E, const Sampler<F>& sampler, const Rng& rng,
                                       std::size_t samples) {
  BrickReport r;
  auto end_est = generic_value<F>(E, InvariantMap{MapKind::End, 0, Pairing::Independent}, sampler, nullptr, rng, samples);
  auto hom_est = generic_value<F>(E, InvariantMap{MapKind::Hom, 0, Pairing::Independent}, sampler, nullptr, rng, samples);
  r.end_z = end_est.value;
  r.hom_zz = hom_est.value;
  r.disagreement = end_est.disagreement || hom_est.disagreement;
  if (r.end_z != 1) {
    r.reason = "not a brick component (end = " + std::to_string(r.end_z) + ")";
  } else if (!distinct_orbits(E, sampler, rng)) {
    r.reason = "dense orbit possible (independent samples not certified non-isomorphic)";
  } else {
    r.applicable = true;
    r.reason = "brick component without a dense orbit";
  }
  r.pass = !r.applicable || r.hom_zz == 0;
  return r;
}

nlohmann::json DecompReport::to_json() const {
  return {{"ext1", ext1},
          {"E", e},
          {"ext1_condition", ext1_condition},
          {"E_condition", e_condition},
          {"implication_holds", implication_holds}};
}

template <class F>
DecompReport decomp_conditions(const Engine<F>& E, const std::vector<Rep<F>>& mods) {
  if (mods.size() < 2) throw InputError("decomposition conditions need at least two modules");
  const std::size_t n = mods.size();
  DecompReport r;
  r.ext1.assign(n, std::vector<std::int64_t>(n, 0));
  r.e.assign(n, std::vector<std::int64_t>(n, 0));
  r.ext1_condition = r.e_condition = r.implication_holds = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r.ext1[i][j] = static_cast<std::int64_t>(E.ext(mods[i], mods[j], 1));
      r.e[i][j] = static_cast<std::int64_t>(e_invariant(E, mods[i], mods[j]));
      if (i == j) continue;
      if (r.ext1[i][j] != 0) r.ext1_condition = false;
      if (r.e[i][j] != 0) r.e_condition = false;
      if (r.e[i][j] == 0 && r.ext1[i][j] != 0) r.implication_holds = false;
    }
  return r;
}

std::string semicont_table(const std::vector<SemicontReport>& reports) {
  std::size_t w = 3;
  for (const auto& r : reports) w = std::max(w, r.map.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "map" << "  dir  generic  special  disagree  verdict\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(static_cast<int>(w)) << r.map << "  " << to_string(r.direction) << "  "
       << std::right << std::setw(7) << r.generic_value << "  " << std::setw(7) << r.special_value << "  "
       << std::left << std::setw(8) << (r.disagreement ? "yes" : "no") << "  " << (r.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

#define MODVAR_INSTANTIATE_GENERIC(F)                                                                             \
  template std::int64_t evaluate<F>(const Engine<F>&, const InvariantMap&, const Rep<F>&, const Rep<F>&);         \
  template GenericEstimate generic_value<F>(const Engine<F>&, const InvariantMap&, const Sampler<F>&,             \
                                            const Sampler<F>*, const Rng&, std::size_t);                          \
  template SemicontReport semicontinuity_check<F>(const Engine<F>&, const InvariantMap&, const Sampler<F>&,       \
                                                  const Sampler<F>*, const typename F::value_type&,               \
                                                  const std::optional<typename F::value_type>&, const Rng&,       \
                                                  std::size_t, bool);                                             \
  template Theorem15Report theorem_1_5_check<F>(const Engine<F>&, const Sampler<F>&, const Rng&, std::size_t);   \
  template BrickReport brick_no_dense_orbit_check<F>(const Engine<F>&, const Sampler<F>&, const Rng&,            \
                                                     std::size_t);                                                \
  template DecompReport decomp_conditions<F>(const Engine<F>&, const std::vector<Rep<F>>&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_GENERIC)

}  // namespace modvar
