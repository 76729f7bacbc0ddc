#pragma once

// JSON file formats. Vertices are 0-based. Every loader reports errors as
// InputError prefixed with the file name and the offending key path.
//
// Algebra:  {"vertices": n, "arrows": [{"name", "src", "tgt"}],
//            "relations": [[{"coeff": int, "path": ["a", "b"]}]], "trunc": L}
// Module:   {"algebra": "<path>"?, "dim_vector": [...], "matrices": {"a": [[...]]}}
//           Omitted arrows are zero. Entries are integers or "n/d" strings.
// Family:   as a module, entries are expression strings in the parameter L,
//           plus optional "excluded": [...]. Alternatively a sampler object:
//           {"sampler": "hereditary", "dim_vector": [...]} or
//           {"sampler": "jordan", "n": 2}.
// Scenario: {"algebra": ref, "family": ref|inline, "second_family": ref|inline,
//            "map": {...}, "special_lambda": v, "special_mu": v,
//            "samples": k, "seed": s, "direction": "inverted"?}

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "modvar/family.hpp"
#include "modvar/generic.hpp"
#include "modvar/quiver.hpp"

namespace modvar {

/// Parses a JSON file; syntax errors carry line and column.
nlohmann::json read_json_file(const std::filesystem::path& file);

AlgebraSpec algebra_spec_from_json(const nlohmann::json& j, const std::string& where = "algebra");
AlgebraSpec load_algebra_spec(const std::filesystem::path& file);
nlohmann::json algebra_spec_to_json(const AlgebraSpec& spec);

/// A field element from a JSON integer or a constant expression string such
/// as "-1/3".
template <class F>
typename F::value_type scalar_from_json(const F& field, const nlohmann::json& j, const std::string& where);

template <class F>
Rep<F> module_from_json(const Quiver& q, const F& field, const nlohmann::json& j, const std::string& where = "module");
template <class F>
Rep<F> load_module(const Quiver& q, const F& field, const std::filesystem::path& file);
template <class F>
nlohmann::json module_to_json(const Quiver& q, const Rep<F>& M);

template <class F>
ModuleFamily<F> family_from_json(const Quiver& q, const F& field, const nlohmann::json& j,
                                 const std::string& where = "family");

/// Builds a sampler from a family object or a sampler object. The algebra
/// must outlive the result.
template <class F>
std::unique_ptr<Sampler<F>> sampler_from_json(const FDAlgebra<F>& A, const nlohmann::json& j,
                                              const std::string& where = "family");

/// The "algebra" reference of a module or family file, resolved against the
/// file's directory.
std::optional<std::filesystem::path> algebra_ref(const nlohmann::json& j, const std::filesystem::path& file);

struct Scenario {
  std::filesystem::path file;
  AlgebraSpec algebra;
  nlohmann::json family;                       // inline object after resolving refs
  std::optional<nlohmann::json> second_family;
  InvariantMap map;
  nlohmann::json special_lambda;
  std::optional<nlohmann::json> special_mu;
  std::size_t samples = 5;
  std::uint64_t seed = 0;
  bool inverted = false;
};

/// Relative references resolve from the scenario file's directory.
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace modvar
