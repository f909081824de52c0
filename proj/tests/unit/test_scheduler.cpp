#include <doctest.h>

#include <atomic>
#include <thread>

#include "dashsnap/lifecycle/scheduler.hpp"
#include "dashsnap/lifecycle/update.hpp"
#include "support/fixtures.hpp"

using namespace dashsnap;
using namespace dashsnap::lifecycle;
using namespace dashsnap::testing;

namespace {

struct World {
  DataSourceRegistry registry;
  SnapshotStore store;
  World() {
    registry.add_table("superstore", tiny_sales_table());
    auto s = demo_snapshot();
    store.create(s, s.created_at);
  }
};

}  // namespace

TEST_CASE("next due instant") {
  World w;
  auto due = next_due(w.store.latest("march-sales"));
  REQUIRE(due);
  CHECK(due->iso() == "2022-04-02T09:00:00");
}

TEST_CASE("a due snapshot updates once per instant") {
  World w;
  FixedClock before(Timestamp::from_iso("2022-04-02T08:59"));
  CHECK(scheduler_tick(w.store, w.registry, before).empty());

  FixedClock clock(Timestamp::from_iso("2022-04-02T09:30"));
  auto out = scheduler_tick(w.store, w.registry, clock);
  REQUIRE(out.size() == 1);
  CHECK(out[0].snapshot_id == "march-sales");
  CHECK(out[0].version == 2);
  CHECK(!out[0].error);
  REQUIRE(out[0].render);
  CHECK(out[0].render->version == 2);
  CHECK(out[0].spec->components[0].time_frame.start == Date(2022, 4, 2));
  CHECK(out[0].spec->created_at.iso() == "2022-04-02T09:00:00");

  CHECK(scheduler_tick(w.store, w.registry, clock).empty());
  clock.advance_seconds(3600 * 5);
  CHECK(scheduler_tick(w.store, w.registry, clock).empty());

  auto history = w.store.history("march-sales");
  REQUIRE(history.size() == 2);
  CHECK(history[0].superseded);
  CHECK(!history[1].superseded);
  CHECK(history[1].published_at.iso() == "2022-04-02T09:00:00");
  CHECK(next_due(history[1])->iso() == "2022-05-02T09:00:00");
}

TEST_CASE("a late tick publishes one version, then catches up tick by tick") {
  World w;
  FixedClock clock(Timestamp::from_iso("2022-06-15T00:00"));
  CHECK(scheduler_tick(w.store, w.registry, clock).size() == 1);
  CHECK(scheduler_tick(w.store, w.registry, clock).size() == 1);
  CHECK(scheduler_tick(w.store, w.registry, clock).size() == 1);
  CHECK(scheduler_tick(w.store, w.registry, clock).empty());
  CHECK(w.store.latest("march-sales").spec.version == 4);
  CHECK(w.store.latest("march-sales").spec.components[0].time_frame.start == Date(2022, 6, 2));
}

TEST_CASE("the horizon stops the schedule") {
  World w;
  auto s = w.store.latest("march-sales").spec;
  FixedClock clock(Timestamp::from_iso("2023-06-01T00:00"));
  int published = 0;
  while (!scheduler_tick(w.store, w.registry, clock).empty()) ++published;
  CHECK(published == 9);  // 2022-04-02 .. 2022-12-02
  CHECK(!next_due(w.store.latest("march-sales")));
}

TEST_CASE("one broken snapshot does not stop the others") {
  World w;
  auto broken = demo_snapshot();
  broken.id = "broken";
  broken.components[1].data_source = "gone";
  w.store.create(broken, broken.created_at);
  FixedClock clock(Timestamp::from_iso("2022-04-02T09:30"));
  auto out = scheduler_tick(w.store, w.registry, clock);
  REQUIRE(out.size() == 2);
  int rendered = 0;
  int failed = 0;
  for (const auto& o : out) {
    if (o.render) ++rendered;
    if (o.error) {
      ++failed;
      CHECK(o.snapshot_id == "broken");
      CHECK(o.error->find("ratio") != std::string::npos);
    }
  }
  CHECK(rendered == 1);
  CHECK(failed == 1);
  CHECK(w.store.latest("broken").spec.version == 1);  // retried next tick
}

TEST_CASE("manual snapshots are never scheduled") {
  World w;
  auto manual = demo_snapshot();
  manual.id = "manual";
  manual.update_policy = ManualAuthorPolicy{};
  w.store.create(manual, manual.created_at);
  FixedClock clock(Timestamp::from_iso("2022-04-02T09:30"));
  auto out = scheduler_tick(w.store, w.registry, clock);
  REQUIRE(out.size() == 1);
  CHECK(out[0].snapshot_id == "march-sales");
}

TEST_CASE("concurrent ticks at one instant publish once") {
  World w;
  FixedClock clock(Timestamp::from_iso("2022-04-02T09:30"));
  std::vector<std::thread> threads;
  std::atomic<int> published{0};
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&] { published += static_cast<int>(scheduler_tick(w.store, w.registry, clock).size()); });
  }
  for (auto& t : threads) t.join();
  CHECK(published == 1);
  CHECK(w.store.history("march-sales").size() == 2);
}

TEST_CASE("store rules") {
  World w;
  auto s = demo_snapshot();
  CHECK(thrown_code([&] { w.store.create(s, s.created_at); }) == Code::InvalidValue);
  s.version = 3;
  CHECK(thrown_code([&] { w.store.append(s, s.created_at); }) == Code::InvalidValue);
  CHECK(thrown_code([&] { w.store.latest("nope"); }) == Code::UnknownSnapshot);
  CHECK(thrown_code([&] { w.store.version("march-sales", 9); }) == Code::NotFound);
  auto all = w.store.all_versions();
  SnapshotStore copy;
  copy.restore(all);
  CHECK(copy.all_versions() == all);
}
