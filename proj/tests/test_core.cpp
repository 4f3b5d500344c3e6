#include <doctest.h>

#include <cmath>
#include <set>

#include "sos/core.hpp"

using namespace sos;

TEST_CASE("new_scenario places nodes and honors the selfish count") {
  ScenarioConfig cfg;
  cfg.n_nodes = 50;
  cfg.selfish_fraction = 0.25;
  cfg.seed = 7;
  const World w = new_scenario(cfg);

  CHECK(w.nodes.size() == 50);
  long selfish = 0;
  for (const NodeProfile& p : w.nodes) {
    CHECK(p.energy_now == 90.0);
    CHECK(p.energy_max == 90.0);
    CHECK(p.reputation == 0.0);
    CHECK(p.position.x >= 0.0);
    CHECK(p.position.x <= cfg.area_width);
    CHECK(p.position.y >= 0.0);
    CHECK(p.position.y <= cfg.area_height);
    if (p.behavior.selfish()) ++selfish;
  }
  CHECK(selfish == 12);  // floor(0.25 * 50)
}

TEST_CASE("zero selfish fraction leaves everyone cooperative") {
  ScenarioConfig cfg;
  cfg.n_nodes = 10;
  cfg.selfish_fraction = 0.0;
  for (const NodeProfile& p : new_scenario(cfg).nodes) {
    CHECK(p.behavior.kind == BehaviorPolicy::Kind::Cooperative);
  }
}

TEST_CASE("same seed reproduces the world field by field") {
  ScenarioConfig cfg;
  cfg.n_nodes = 20;
  cfg.selfish_fraction = 0.5;
  cfg.seed = 42;
  const World a = new_scenario(cfg);
  const World b = new_scenario(cfg);
  REQUIRE(a.nodes.size() == b.nodes.size());
  CHECK(a.weight_coeffs == b.weight_coeffs);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].position.x == b.nodes[i].position.x);
    CHECK(a.nodes[i].position.y == b.nodes[i].position.y);
    CHECK(a.nodes[i].behavior.kind == b.nodes[i].behavior.kind);
    CHECK(a.nodes[i].behavior.friends == b.nodes[i].behavior.friends);
  }

  ScenarioConfig other = cfg;
  other.seed = 43;
  const World c = new_scenario(other);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].position.x != c.nodes[i].position.x) any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("scenario coefficients sum to one when drawn from the seed") {
  ScenarioConfig cfg;
  cfg.n_nodes = 5;
  const World w = new_scenario(cfg);
  double sum = 0;
  for (double c : w.weight_coeffs) {
    CHECK(c >= 0.0);
    sum += c;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("config validation names the offending field") {
  ScenarioConfig cfg;
  cfg.n_nodes = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(), "n_nodes: must be positive", ConfigError);

  ScenarioConfig coeffs;
  coeffs.weight_coeffs = {{0.5, 0.5, 0.5, 0.0, 0.0}};
  CHECK_THROWS_AS(coeffs.validate(), ConfigError);

  ScenarioConfig frac;
  frac.selfish_fraction = 1.5;
  CHECK_THROWS_AS(frac.validate(), ConfigError);
}

TEST_CASE("socially selfish nodes get nonempty friend sets excluding self") {
  ScenarioConfig cfg;
  cfg.n_nodes = 30;
  cfg.selfish_fraction = 0.5;
  cfg.social_selfish_share = 1.0;
  cfg.seed = 3;
  for (const NodeProfile& p : new_scenario(cfg).nodes) {
    if (p.behavior.kind != BehaviorPolicy::Kind::SociallySelfish) continue;
    CHECK(!p.behavior.friends.empty());
    for (NodeId f : p.behavior.friends) CHECK(f != p.id);
  }
}

TEST_CASE("bundle digest is deterministic and keyed to identity fields") {
  Bundle b;
  b.bundle_id = make_bundle_id(4, 17);
  b.source = 4;
  b.destination = 9;
  b.size = 1000;
  const std::uint64_t d = bundle_digest(b);
  CHECK(bundle_digest(b) == d);

  Bundle other_dst = b;
  other_dst.destination = 10;
  CHECK(bundle_digest(other_dst) != d);

  // a tampered size no longer matches the recorded digest
  Bundle tampered = b;
  tampered.digest = d;
  tampered.size = 999;
  CHECK(bundle_digest(tampered) != tampered.digest);
}
