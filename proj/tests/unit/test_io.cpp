#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "modvar/errors.hpp"
#include "support.hpp"

using namespace modvar;
using namespace modvar::tst;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("modvar_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  fs::path path_;
};

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, SyntaxErrorHasLineAndColumn) {
  TempDir d;
  auto p = d.write("broken.json", "{\n  \"vertices\": 1,\n  \"arrows\": [,]\n}\n");
  const auto msg = error_of([&] { read_json_file(p); });
  EXPECT_NE(msg.find("broken.json:3:"), std::string::npos) << msg;
  EXPECT_NE(error_of([&] { read_json_file(d.write("x", "")); }), "");
  EXPECT_NE(error_of([] { read_json_file("/nonexistent/file.json"); }).find("cannot open"), std::string::npos);
}

TEST(Algebra, KeyPathInErrors) {
  const json base = json::parse(R"({"vertices": 2, "arrows": [{"name": "x", "src": 1, "tgt": 0}], "trunc": 2})");
  EXPECT_NO_THROW(algebra_spec_from_json(base));

  json bad = base;
  bad["arrows"][0]["src"] = -1;
  EXPECT_NE(error_of([&] { algebra_spec_from_json(bad, "q.json"); }).find("q.json.arrows[0].src"), std::string::npos);

  bad = base;
  bad["arrows"][0]["tgt"] = 5;
  EXPECT_NE(error_of([&] { algebra_spec_from_json(bad, "q.json"); }), "");

  bad = base;
  bad["relations"] = json::parse(R"([[{"coeff": 1, "path": ["z"]}]])");
  EXPECT_NE(error_of([&] { algebra_spec_from_json(bad, "q.json"); }).find("q.json.relations[0][0].path"),
            std::string::npos);

  bad = base;
  bad.erase("trunc");
  EXPECT_NE(error_of([&] { algebra_spec_from_json(bad, "q.json"); }).find("trunc"), std::string::npos);
}

TEST(Algebra, NonAdmissibleRelationRejected) {
  const auto msg = error_of([] { spec("bad_relation"); });
  EXPECT_NE(msg.find("bad_relation.json"), std::string::npos) << msg;
}

TEST(Algebra, RoundTrip) {
  for (const char* name : {"klein4", "a3", "pfeifer2", "wild_kronecker_ext"}) {
    const auto s = spec(name);
    const auto again = algebra_spec_from_json(algebra_spec_to_json(s));
    EXPECT_EQ(algebra_spec_to_json(again), algebra_spec_to_json(s)) << name;
    EXPECT_EQ(build_algebra(again, PrimeField{}).dim(), build_algebra(s, PrimeField{}).dim()) << name;
  }
}

TEST(Scalar, IntegersAndFractions) {
  const PrimeField f(7);
  EXPECT_EQ(scalar_from_json(f, json(10), "x"), 3u);
  EXPECT_EQ(scalar_from_json(f, json("1/2"), "x"), 4u);
  EXPECT_EQ(scalar_from_json(f, json("-3"), "x"), 4u);
  EXPECT_THROW(scalar_from_json(f, json("L"), "x"), InputError);
  EXPECT_THROW(scalar_from_json(f, json(1.5), "x"), InputError);
  EXPECT_THROW(scalar_from_json(f, json("1/0"), "x"), InputError);
  const RationalField q;
  EXPECT_EQ(q.to_string(scalar_from_json(q, json("-6/4"), "x")), "-3/2");
}

TEST(Module, LoadsFixtures) {
  auto A = algebra("klein4");
  EXPECT_TRUE(module(A, "M_l2") == m_lambda(A, 2));
  EXPECT_TRUE(module(A, "M_lhalf") == m_lambda(A, A.field().inv(2)));
  auto B = algebra("a3");
  EXPECT_TRUE(module(B, "a3_S1") == simple_module(B, 1));
  EXPECT_TRUE(module(B, "a3_P2") == projective_module(B, 2));
}

TEST(Module, RoundTripPrimeAndRational) {
  auto A = algebra("wild_kronecker_ext");
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    auto M = random_rep(A, {1, 2, 2}, rng);
    EXPECT_TRUE(module_from_json(A.quiver(), A.field(), module_to_json(A.quiver(), M)) == M);
  }
  auto Q = algebra("klein4", RationalField{});
  auto M = m_lambda(Q, RationalField{}.parse("-7/3"));
  EXPECT_TRUE(module_from_json(Q.quiver(), Q.field(), module_to_json(Q.quiver(), M)) == M);
}

TEST(Module, ShapeErrors) {
  auto A = algebra("kronecker");
  const auto& q = A.quiver();
  const auto& f = A.field();
  EXPECT_NO_THROW(module_from_json(q, f, json::parse(R"({"dim_vector": [0, 1], "matrices": {"x": [], "y": []}})")));
  auto m1 = error_of([&] { module_from_json(q, f, json::parse(R"({"dim_vector": [1, 1], "matrices": {"x": [[1, 2]]}})"), "m"); });
  EXPECT_NE(m1.find("m.matrices.x"), std::string::npos) << m1;
  auto m2 = error_of([&] { module_from_json(q, f, json::parse(R"({"dim_vector": [1, 1], "matrices": {"w": [[1]]}})"), "m"); });
  EXPECT_NE(m2.find("w"), std::string::npos) << m2;
  EXPECT_THROW(module_from_json(q, f, json::parse(R"({"dim_vector": [1]})")), InputError);
  EXPECT_THROW(module_from_json(q, f, json::parse(R"({"dim_vector": [1, 1], "matrices": {"x": [["L"]]}})")), InputError);
}

TEST(Module, AlgebraReferenceIsRelative) {
  const fs::path file = source_path("fixtures/modules/a3_S1.json");
  auto ref = algebra_ref(read_json_file(file), file);
  ASSERT_TRUE(ref);
  EXPECT_TRUE(fs::equivalent(*ref, source_path("fixtures/algebras/a3.json")));
  EXPECT_FALSE(algebra_ref(json::parse(R"({"dim_vector": [1]})"), file));
}

TEST(Family, ExcludedAndBadExpression) {
  auto A = algebra("klein4");
  auto fam = family_from_json(A.quiver(), A.field(), read_json_file(source_path("fixtures/families/m_lambda.json")));
  EXPECT_EQ(fam.excluded.size(), 1u);
  auto msg = error_of([&] {
    family_from_json(A.quiver(), A.field(), json::parse(R"({"dim_vector": [2], "matrices": {"a": [[0, 0], ["L+", 0]]}})"),
                     "fam");
  });
  EXPECT_NE(msg.find("fam.matrices.a"), std::string::npos) << msg;
}

TEST(Sampler, KindsFromJson) {
  auto W = algebra("wild_kronecker_ext");
  auto h = sampler_from_json(W, read_json_file(source_path("fixtures/families/wild_kronecker_121.json")));
  Rng rng(1);
  EXPECT_EQ(h->draw(rng).module.dims, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_FALSE(h->parametrized());

  auto P = algebra("pfeifer2");
  auto jd = sampler_from_json(P, read_json_file(source_path("fixtures/families/pfeifer2_locally_free.json")));
  EXPECT_EQ(jd->draw(rng).module.dims, (std::vector<std::size_t>{2, 2}));

  auto K = algebra("kronecker");
  auto c = sampler_from_json(K, json::parse(R"({"sampler": "constant", "module": {"dim_vector": [1, 1], "matrices": {"x": [[1]]}}})"));
  EXPECT_TRUE(c->draw(rng).module == kron11(K, 1, 0));

  auto fam = sampler_from_json(K, read_json_file(source_path("fixtures/families/kronecker_1_L.json")));
  EXPECT_TRUE(fam->parametrized());
  EXPECT_TRUE(fam->at(3) == kron11(K, 1, 3));

  EXPECT_THROW(sampler_from_json(K, json::parse(R"({"sampler": "nope"})")), InputError);
  EXPECT_THROW(sampler_from_json(K, json::parse(R"({"sampler": "jordan", "n": 2})")), InputError);
  EXPECT_THROW(sampler_from_json(K, json::parse(R"({"sampler": "hereditary", "dim_vector": [1]})")), InputError);
}

TEST(Scenario, LoadsShippedScenarios) {
  std::size_t count = 0;
  for (const auto& e : fs::directory_iterator(source_path("scenarios"))) {
    if (e.path().extension() != ".json") continue;
    auto s = load_scenario(e.path());
    EXPECT_FALSE(s.inverted) << e.path();
    EXPECT_GE(s.samples, 1u);
    auto A = build_algebra(s.algebra, PrimeField{});
    EXPECT_NO_THROW(sampler_from_json(A, s.family)) << e.path();
    ++count;
  }
  EXPECT_GE(count, 6u);
  auto s = load_scenario(source_path("scenarios/kronecker_degeneration.json"));
  EXPECT_EQ(s.seed, 101u);
  EXPECT_TRUE(s.second_family);
  EXPECT_EQ(s.map, (InvariantMap{MapKind::Hom, 0, Pairing::Independent}));
  EXPECT_TRUE(load_scenario(source_path("scenarios/selftest/inverted.json")).inverted);
}

TEST(Scenario, InlineAndErrors) {
  TempDir d;
  d.write("alg.json", R"({"vertices": 2, "arrows": [{"name": "x", "src": 1, "tgt": 0}], "trunc": 2})");
  auto ok = d.write("s.json", R"({"algebra": "alg.json",
    "family": {"dim_vector": [1, 1], "matrices": {"x": [["L"]]}},
    "map": {"kind": "ext", "i": 1, "mode": "tied"}, "special_lambda": 0, "seed": 4})");
  auto s = load_scenario(ok);
  EXPECT_EQ(s.map.pairing, Pairing::Tied);
  EXPECT_EQ(s.samples, 5u);
  EXPECT_EQ(s.family["dim_vector"], json({1, 1}));

  auto bad_map = d.write("m.json", R"({"algebra": "alg.json", "family": {"dim_vector": [1, 1]},
    "map": {"kind": "ext"}, "special_lambda": 0})");
  EXPECT_NE(error_of([&] { load_scenario(bad_map); }).find("m.json.map"), std::string::npos);

  auto bad_dir = d.write("d.json", R"({"algebra": "alg.json", "family": {"dim_vector": [1, 1]},
    "map": {"kind": "hom"}, "special_lambda": 0, "direction": "sideways"})");
  EXPECT_NE(error_of([&] { load_scenario(bad_dir); }).find("direction"), std::string::npos);

  auto missing = d.write("f.json", R"({"algebra": "alg.json", "family": "nowhere.json",
    "map": {"kind": "hom"}, "special_lambda": 0})");
  EXPECT_NE(error_of([&] { load_scenario(missing); }).find("nowhere.json"), std::string::npos);
}
