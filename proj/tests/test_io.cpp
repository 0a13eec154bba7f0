#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "dtregge/io.hpp"
#include "test_support.hpp"

using namespace dtregge;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("dtregge_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Json, CatalogRoundTripIsBitIdentical) {
  for (const CatalogKey& k : {CatalogKey{0, 3, {2, 2, 2}}, CatalogKey{0, 4, {3, 3, 3, 3}}, CatalogKey{1, 1, {6}},
                              CatalogKey{1, 2, {5, 7}}, CatalogKey{0, 5, {2, 3, 4, 4, 5}}}) {
    const std::string text = dump(to_json(enumerate_triangulations(k)));
    const std::string again = dump(to_json(catalog_from_json(json::parse(text))));
    EXPECT_EQ(text, again);
  }
}

TEST(Json, TriangulationAndGraphRoundTrip) {
  for (const auto& t : {examples::tetrahedron(), examples::double_triangle(), examples::two_triangle_torus()}) {
    EXPECT_EQ(triangulation_from_json(to_json(t)), t);
    auto g = dualize(t);
    EXPECT_EQ(ribbon_graph_from_json(to_json(g)), g);
  }
}

TEST(Json, MalformedInputIsAnInputError) {
  EXPECT_THROW(triangulation_from_json(json::parse(R"({"faces": [[1,2]], "gluing": [], "vertex_count": 2})")), InputError);
  EXPECT_THROW(triangulation_from_json(json::parse(R"({"faces": "x"})")), InputError);
  EXPECT_THROW(ribbon_graph_from_json(json::parse(R"({"darts": 6, "sigma": [[0,1,2]], "alpha": [], "boundary_labels": {}})")),
               InputError);
  EXPECT_THROW(catalog_from_json(json::parse(R"({"schema": "other"})")), InputError);
}

TEST(Json, TamperedCatalogsAreRejected) {
  const json good = to_json(enumerate_triangulations({0, 4, {3, 3, 3, 3}}));
  EXPECT_NO_THROW(catalog_from_json(good));
  json bad = good;
  bad["entries"][0]["aut_boundary"] = 2;
  EXPECT_THROW(catalog_from_json(bad), InputError);
  bad = good;
  bad["cardinality"] = 3;
  EXPECT_THROW(catalog_from_json(bad), InputError);
  bad = good;
  bad["entries"][1] = bad["entries"][0];
  bad["cardinality"] = 2;
  EXPECT_THROW(catalog_from_json(bad), InputError);
  bad = good;
  bad["convention"] = "unlabelled";
  EXPECT_THROW(catalog_from_json(bad), InputError);
  bad = good;
  std::swap(bad["entries"][0], bad["entries"][1]);
  EXPECT_THROW(catalog_from_json(bad), InputError);
  bad = good;
  bad["key"]["q"] = {3, 3, 3, 4};
  EXPECT_THROW(catalog_from_json(bad), InputError);
}

TEST(Json, Reports) {
  auto p = duality_pairing(CatalogKey{0, 4, {3, 3, 3, 3}});
  auto back = pairing_report_from_json(to_json(p));
  EXPECT_EQ(back.lhs, p.lhs);
  EXPECT_EQ(back.rhs, p.rhs);
  EXPECT_EQ(back.breakdown.size(), p.breakdown.size());
  EXPECT_EQ(to_json(back), to_json(p));

  RunReport r{"tau", {{"genus", 1}}, {{"value", "1/24"}}, std::nullopt};
  EXPECT_FALSE(to_json(r).contains("timings"));
  r.seconds = 0.5;
  auto rr = run_report_from_json(to_json(r));
  EXPECT_EQ(rr.command, "tau");
  EXPECT_EQ(rr.seconds, 0.5);
  EXPECT_THROW(run_report_from_json(json{{"schema", "x"}}), InputError);
}

TEST(Json, LargeIntegersBecomeStrings) {
  EXPECT_EQ(integer_json(Integer(42)), json(42));
  EXPECT_EQ(integer_json(pow2(80)), json(pow2(80).str()));
}

TEST(Files, AtomicWriteLeavesNoTemporaries) {
  auto dir = fresh_dir("atomic");
  write_file_atomic(dir / "sub" / "a.json", "{}\n");
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) ++n;
  EXPECT_EQ(n, 1u);
  EXPECT_EQ(read_json_file(dir / "sub" / "a.json"), json::object());
  EXPECT_THROW(read_json_file(dir / "missing.json"), InputError);
  fs::remove_all(dir);
}

TEST(Cache, StoreLoadAndRelabel) {
  auto dir = fresh_dir("cache");
  CatalogCache cache(dir);
  const CatalogKey sorted{0, 4, {2, 3, 3, 4}};
  const CatalogKey permuted{0, 4, {4, 3, 2, 3}};
  EXPECT_FALSE(cache.load(sorted).has_value());
  auto direct = enumerate_triangulations(permuted);
  auto first = cached_catalog(permuted, {}, cache);
  EXPECT_EQ(dump(to_json(first)), dump(to_json(direct)));
  EXPECT_TRUE(fs::exists(cache.path_for(sorted)));
  EXPECT_EQ(cache.path_for(sorted), cache.path_for(permuted));
  auto loaded = cache.load(permuted);
  ASSERT_TRUE(loaded.has_value());
  EXPECT_EQ(dump(to_json(*loaded)), dump(to_json(direct)));
  auto loaded_sorted = cache.load(sorted);
  ASSERT_TRUE(loaded_sorted.has_value());
  EXPECT_EQ(dump(to_json(*loaded_sorted)), dump(to_json(enumerate_triangulations(sorted))));
  auto listing = cache.list(true);
  ASSERT_EQ(listing.size(), 1u);
  EXPECT_TRUE(listing[0].valid);
  fs::remove_all(dir);
}

TEST(Cache, CorruptFilesAreIgnoredAndReported) {
  auto dir = fresh_dir("corrupt");
  CatalogCache cache(dir);
  const CatalogKey key{0, 3, {2, 2, 2}};
  std::ofstream(cache.path_for(key)) << "{ not json";
  EXPECT_FALSE(cache.load(key).has_value());
  auto c = cached_catalog(key, {}, cache);
  EXPECT_EQ(c.cardinality(), 1u);
  EXPECT_TRUE(cache.load(key).has_value());
  std::ofstream(dir / "junk.json") << "[]";
  auto listing = cache.list(true);
  ASSERT_EQ(listing.size(), 2u);
  int valid = 0;
  for (const auto& l : listing) valid += l.valid;
  EXPECT_EQ(valid, 1);
  fs::remove_all(dir);
}
