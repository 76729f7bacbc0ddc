#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modvar/family.hpp"
#include "modvar/homology.hpp"

namespace modvar {

enum class MapKind { Hom, Ext, Eta, G, E, End, HomOmega };
enum class Pairing { Independent, Tied };
enum class Direction { Usc, Lsc };

std::string to_string(Direction d);
Direction opposite(Direction d);

/// An invariant evaluated on one module or a pair of modules.
struct InvariantMap {
  MapKind kind = MapKind::Hom;
  /// i for ext and g, t for eta, j for hom_omega; unused otherwise.
  std::size_t index = 0;
  /// Two-module maps only: independent parameters or the diagonal M = N.
  Pairing pairing = Pairing::Independent;

  std::size_t arity() const { return (kind == MapKind::G || kind == MapKind::End) ? 1 : 2; }
  /// lsc only for eta with odd t.
  Direction direction() const;
  /// e.g. "ext(1)", "eta(2)/tied", "g(0)".
  std::string name() const;

  /// {"kind": "eta", "t": 2, "mode": "tied"}; index keys "i", "t", "j".
  static InvariantMap from_json(const nlohmann::json& j);
  /// Inverse of name(): "hom", "ext(1)", "eta(2)/tied".
  static InvariantMap from_name(const std::string& s);
  nlohmann::json to_json() const;

  friend bool operator==(const InvariantMap&, const InvariantMap&) = default;
};

/// All maps exercised by a full sweep for an algebra with n vertices:
/// hom, end, E, ext(1..max), eta(0..max), hom_omega(1..max), g(0..n-1);
/// two-module maps in both pairing modes.
std::vector<InvariantMap> sweep_maps(std::size_t n_vertices, std::size_t max_index = 3);

template <class F>
std::int64_t evaluate(const Engine<F>& E, const InvariantMap& map, const Rep<F>& M, const Rep<F>& N);

struct SampleRecord {
  std::size_t index = 0;
  std::vector<std::string> lambdas;  // parameters used (empty for unparametrized samplers)
  std::int64_t value = 0;
};

struct GenericEstimate {
  std::int64_t value = 0;
  bool disagreement = false;
  std::vector<SampleRecord> samples;  // sorted by parameter, then index
};

/// Evaluates `map` on `samples` independent draws and returns the min (usc)
/// or max (lsc). Sample k uses stream rng.split("sample").split(k); the two
/// modules of an independent pair use its "first" and "second" sub-streams,
/// so nested sample counts share a prefix. `second` defaults to `first`.
template <class F>
GenericEstimate generic_value(const Engine<F>& E, const InvariantMap& map, const Sampler<F>& first,
                              const Sampler<F>* second, const Rng& rng, std::size_t samples);

struct SemicontReport {
  std::string map;
  Direction direction = Direction::Usc;
  bool inverted = false;
  std::int64_t generic_value = 0;
  std::int64_t special_value = 0;
  std::string special_point;
  bool disagreement = false;
  bool pass = false;
  std::vector<SampleRecord> samples;

  nlohmann::json to_json() const;
};

/// Special point (first.at(λ0), second.at(μ0)); μ0 defaults to λ0, and tied
/// maps use (first.at(λ0), first.at(λ0)). `invert` flips the expected
/// direction (harness self-test).
template <class F>
SemicontReport semicontinuity_check(const Engine<F>& E, const InvariantMap& map, const Sampler<F>& first,
                                    const Sampler<F>* second, const typename F::value_type& lambda0,
                                    const std::optional<typename F::value_type>& mu0, const Rng& rng,
                                    std::size_t samples, bool invert = false);

inline constexpr std::uint64_t kDefaultBruteBudget = 10000000;

struct BruteForceStats {
  std::string map;
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::uint64_t evaluations = 0;
};

struct BruteForceReport {
  std::uint64_t q = 0;
  std::vector<std::size_t> dims;
  std::uint64_t tuples = 0;  // q^(matrix entries)
  std::uint64_t points = 0;  // tuples satisfying the relations
  std::vector<BruteForceStats> maps;

  nlohmann::json to_json() const;
};

/// Exhaustive evaluation over every point of mod(A, d) over F_q. Independent
/// two-module maps run over all ordered pairs of points. Throws ResourceLimit
/// when q^(entries) exceeds `budget`.
BruteForceReport brute_force_generic(const AlgebraSpec& spec, const std::vector<std::size_t>& dims, std::uint64_t q,
                                     const std::vector<InvariantMap>& maps,
                                     std::uint64_t budget = kDefaultBruteBudget);

struct Theorem15Report {
  std::int64_t hom_zz = 0, end_z = 0;
  std::int64_t ext1_zz = 0, ext1_z = 0;
  std::int64_t e_zz = 0, e_z = 0;
  bool hom_strict = false, ext1_strict = false, e_strict = false;
  bool consistent = false;  // all three strict or none
  bool no_dense_orbit_expected = false;
  bool disagreement = false;
  bool pass = false;

  nlohmann::json to_json() const;
};

template <class F>
Theorem15Report theorem_1_5_check(const Engine<F>& E, const Sampler<F>& sampler, const Rng& rng,
                                  std::size_t samples);

struct BrickReport {
  bool applicable = false;
  std::string reason;
  std::int64_t end_z = 0;
  std::int64_t hom_zz = 0;
  bool disagreement = false;
  bool pass = false;

  nlohmann::json to_json() const;
};

template <class F>
BrickReport brick_no_dense_orbit_check(const Engine<F>& E, const Sampler<F>& sampler, const Rng& rng,
                                       std::size_t samples);

struct DecompReport {
  std::vector<std::vector<std::int64_t>> ext1;  // ext1[i][j] = ext¹(M_i, M_j)
  std::vector<std::vector<std::int64_t>> e;     // e[i][j] = E(M_i, M_j)
  bool ext1_condition = false;
  bool e_condition = false;
  bool implication_holds = false;  // E(M_i,M_j) = 0 ⇒ ext¹(M_i,M_j) = 0, pointwise

  nlohmann::json to_json() const;
};

/// Throws InputError for fewer than two modules.
template <class F>
DecompReport decomp_conditions(const Engine<F>& E, const std::vector<Rep<F>>& mods);

/// Aligned text rendering of a list of reports.
std::string semicont_table(const std::vector<SemicontReport>& reports);

}  // namespace modvar
