#include "doctest.h"
#include "dtnsim/map_gen.hpp"
#include "dtnsim/map_graph.hpp"
#include "test_helpers.hpp"

using namespace dtnsim;

TEST_CASE("default maps parse back as single components") {
  const GeneratedMaps maps = generate_synthetic_map(SyntheticMapConfig{});
  const MapGraph roads = parse_wkt(maps.roads_wkt);
  const MapGraph ped = parse_wkt(maps.pedestrian_wkt);
  const MapGraph shops = parse_wkt(maps.shops_wkt);

  CHECK(roads.component_count() == 1);
  CHECK(ped.component_count() == 1);
  CHECK(shops.component_count() == 1);

  // unions across files stay connected through shared points
  CHECK(merge_graphs({&ped, &shops}).component_count() == 1);
  CHECK(merge_graphs({&ped, &roads}).component_count() == 1);
  CHECK(merge_graphs({&shops, &roads}).component_count() == 1);

  // everything inside the world
  SyntheticMapConfig cfg;
  for (const MapGraph* g : {&roads, &ped, &shops}) {
    for (const auto& v : g->vertices()) {
      CHECK(v.x >= 0);
      CHECK(v.x <= cfg.world_w);
      CHECK(v.y >= 0);
      CHECK(v.y <= cfg.world_h);
    }
  }
}

TEST_CASE("fixed seed gives byte-identical files") {
  SyntheticMapConfig cfg;
  cfg.seed = 42;
  const GeneratedMaps a = generate_synthetic_map(cfg);
  const GeneratedMaps b = generate_synthetic_map(cfg);
  CHECK(a.roads_wkt == b.roads_wkt);
  CHECK(a.pedestrian_wkt == b.pedestrian_wkt);
  CHECK(a.shops_wkt == b.shops_wkt);

  cfg.seed = 43;
  CHECK(generate_synthetic_map(cfg).roads_wkt != a.roads_wkt);
}

TEST_CASE("zone validation") {
  SyntheticMapConfig cfg;
  SUBCASE("zero area") {
    cfg.ped_zone.w = 0;
    CHECK_THROWS_AS(generate_synthetic_map(cfg), MapGenError);
  }
  SUBCASE("outside the world") {
    cfg.shops_zone.x = cfg.world_w - 10;
    CHECK_THROWS_AS(generate_synthetic_map(cfg), MapGenError);
  }
  SUBCASE("degenerate world") {
    cfg.world_w = 0;
    CHECK_THROWS_AS(generate_synthetic_map(cfg), MapGenError);
  }
}

TEST_CASE("write_synthetic_map produces loadable files") {
  const auto dir = testutil::fresh_dir("mapgen");
  SyntheticMapConfig cfg;
  cfg.seed = 11;
  write_synthetic_map(cfg, dir.string());
  for (const char* name : {"roads.wkt", "pedestrian_paths.wkt", "shops.wkt"})
    CHECK(load_wkt_file((dir / name).string()).component_count() == 1);
}

TEST_CASE("bundled maps match the generator at the recorded seed") {
  SyntheticMapConfig cfg;
  cfg.seed = 11;
  const GeneratedMaps maps = generate_synthetic_map(cfg);
  CHECK(maps.roads_wkt == testutil::read_file(testutil::repo_dir() + "/maps/roads.wkt"));
  CHECK(maps.pedestrian_wkt ==
        testutil::read_file(testutil::repo_dir() + "/maps/pedestrian_paths.wkt"));
  CHECK(maps.shops_wkt == testutil::read_file(testutil::repo_dir() + "/maps/shops.wkt"));
}
