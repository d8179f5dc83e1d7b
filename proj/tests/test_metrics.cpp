#include <cmath>
#include <random>

#include "doctest.h"
#include "ilsolve/metrics.hpp"
#include "ilsolve/rng.hpp"

using namespace ilsolve;

TEST_CASE("primal gap, hand values") {
  CHECK(primal_gap(0.0, 0.0) == 0.0);
  CHECK(primal_gap(3.0, -2.0) == 1.0);
  CHECK(primal_gap(10.0, 12.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(primal_gap(0.0, 5.0) == 1.0);  // |0-5| / max(0,5)
  CHECK(primal_gap(-4.0, -4.0) == 0.0);
}

TEST_CASE("primal gap is symmetric and bounded") {
  Rng rng(17);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int it = 0; it < 20000; ++it) {
    double a = dist(rng), b = dist(rng);
    double g = primal_gap(a, b);
    REQUIRE(g >= 0.0);
    REQUIRE(g <= 1.0);
    REQUIRE(g == primal_gap(b, a));
  }
}

TEST_CASE("gap over time is a right-open step function") {
  SUBCASE("eventless trace is all ones") {
    PrimalTrace tr;
    tr.t_max = 10.0;
    CHECK(primal_gap_function(tr, 0.0) == 1.0);
    CHECK(primal_gap_function(tr, 10.0) == 1.0);
  }
  SUBCASE("single event reaching the reference") {
    PrimalTrace tr{{{2.0, 10.0}}, 10.0, 10.0};
    CHECK(primal_gap_function(tr, 1.9) == 1.0);
    CHECK(primal_gap_function(tr, 2.0) == 0.0);
    CHECK(primal_gap_function(tr, 3.0) == 0.0);
  }
  SUBCASE("holds the previous value between events") {
    // Gaps: 0.5 after t=1 (obj 20 vs 10), 0.2 after t=4 (obj 12.5).
    PrimalTrace tr{{{1.0, 20.0}, {4.0, 12.5}}, 10.0, 10.0};
    CHECK(primal_gap_function(tr, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(primal_gap_function(tr, 4.0) == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("events without a reference are an error") {
    PrimalTrace tr{{{2.0, 10.0}}, 10.0, std::nullopt};
    CHECK_THROWS_AS(primal_gap_function(tr, 3.0), std::logic_error);
    CHECK(primal_gap_function(tr, 1.0) == 1.0);  // before any event: no gap needed
  }
}

TEST_CASE("primal integral, hand values") {
  SUBCASE("no events integrates to the horizon") {
    PrimalTrace tr;
    tr.t_max = 10.0;
    CHECK(primal_integral(tr) == doctest::Approx(10.0).epsilon(1e-12));
  }
  SUBCASE("single drop to the reference") {
    PrimalTrace tr{{{2.0, 10.0}}, 10.0, 10.0};
    CHECK(primal_integral(tr) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("two-step staircase") {
    // 1.0 * 1 + 0.5 * 3 + 0.0 * 6 = 2.5.
    PrimalTrace tr{{{1.0, 20.0}, {4.0, 10.0}}, 10.0, 10.0};
    CHECK(std::fabs(primal_integral(tr) - 2.5) <= 1e-9);
  }
}

TEST_CASE("integral equals piecewise quadrature of the gap function") {
  Rng rng(29);
  std::uniform_real_distribution<double> udist(0.0, 1.0);
  for (int it = 0; it < 500; ++it) {
    PrimalTrace tr;
    tr.t_max = 5.0 + 20.0 * udist(rng);
    tr.reference = 1.0;
    double t = 0.0;
    double obj = 40.0;
    int n = (int)rand_below(rng, 6);
    for (int k = 0; k < n; ++k) {
      t += 0.1 + udist(rng) * (tr.t_max - t) / (n + 1);
      obj = 1.0 + (obj - 1.0) * (0.2 + 0.6 * udist(rng));
      if (t >= tr.t_max) break;
      tr.events.push_back({t, obj});
    }

    // The gap function is constant between event times, so midpoint
    // evaluation per segment integrates it exactly.
    std::vector<double> knots{0.0};
    for (const TraceEvent& e : tr.events) knots.push_back(e.t);
    knots.push_back(tr.t_max);
    double quad = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      double mid = 0.5 * (knots[k] + knots[k + 1]);
      quad += primal_gap_function(tr, mid) * (knots[k + 1] - knots[k]);
    }
    REQUIRE(std::fabs(primal_integral(tr) - quad) <= 1e-9);
    REQUIRE(primal_integral(tr) >= 0.0);
    REQUIRE(primal_integral(tr) <= tr.t_max + 1e-12);
  }
}

TEST_CASE("an extra improving event never hurts the integral") {
  Rng rng(31);
  std::uniform_real_distribution<double> udist(0.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    PrimalTrace tr;
    tr.t_max = 10.0;
    tr.reference = 0.0;
    tr.events = {{2.0, 8.0}, {6.0, 4.0}};
    double before = primal_integral(tr);

    // Splice a strictly better objective between the second event and the end.
    double t = 6.0 + 3.9 * udist(rng) + 0.05;
    double obj = 4.0 * udist(rng);
    PrimalTrace tr2 = tr;
    tr2.events.push_back({t, obj});
    REQUIRE(primal_integral(tr2) <= before + 1e-12);
  }
}

namespace {

RunRecord rec(const std::string& ins, const std::string& cfg,
              std::vector<TraceEvent> events, double t_max,
              bool error = false) {
  RunRecord r;
  r.instance = ins;
  r.config = cfg;
  r.trace.events = std::move(events);
  r.trace.t_max = t_max;
  r.error = error;
  return r;
}

}  // namespace

TEST_CASE("aggregation over a two-config matrix") {
  std::vector<RunRecord> runs;
  runs.push_back(rec("i1", "A", {{2.0, 5.0}}, 10.0));
  runs.push_back(rec("i1", "B", {{1.0, 5.0000005}}, 10.0));
  runs.push_back(rec("i2", "A", {}, 10.0));  // found nothing
  runs.push_back(rec("i2", "B", {{1.0, 3.0}}, 10.0));

  Report rep = aggregate(runs);
  REQUIRE(rep.summary.size() == 2);
  const ConfigSummary& a = rep.summary[0];
  const ConfigSummary& b = rep.summary[1];
  REQUIRE(a.config == "A");
  REQUIRE(b.config == "B");

  SUBCASE("feasibility counts instances with any event") {
    CHECK(a.feasible_count == 1);
    CHECK(b.feasible_count == 2);
  }
  SUBCASE("near-equal objectives tie and both win; failures win nothing") {
    CHECK(a.win_count == 1);
    CHECK(b.win_count == 2);
  }
  SUBCASE("eventless runs integrate at gap one") {
    // A on i2: no events, P = t_max. A on i1: 1.0*2 + 0*(8) = 2.
    CHECK(a.mean_primal_integral == doctest::Approx((2.0 + 10.0) / 2.0));
  }
  SUBCASE("rows sorted by instance then config, with matrix references") {
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[0].instance == "i1");
    CHECK(rep.rows[0].config == "A");
    CHECK(rep.rows[0].reference_source == "matrix");
    CHECK(rep.rows[0].reference == doctest::Approx(5.0));
    CHECK(rep.rows[3].instance == "i2");
    CHECK(rep.rows[3].config == "B");
    CHECK(rep.rows[3].reference == doctest::Approx(3.0));
  }
}

TEST_CASE("given references outrank matrix-best") {
  std::vector<RunRecord> runs;
  runs.push_back(rec("i1", "A", {{2.0, 5.0}}, 10.0));
  Report rep = aggregate(runs, {{"i1", 4.0}});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].reference_source == "given");
  // gap(4, 5) = 0.2 after t=2: P = 1*2 + 0.2*8 = 3.6.
  CHECK(rep.rows[0].primal_integral == doctest::Approx(3.6).epsilon(1e-12));
  // The sole feasible config still wins against itself.
  CHECK(rep.summary[0].win_count == 1);
}

TEST_CASE("an instance where every config fails awards no win") {
  std::vector<RunRecord> runs;
  runs.push_back(rec("i1", "A", {}, 10.0));
  runs.push_back(rec("i1", "B", {}, 10.0, /*error=*/true));
  Report rep = aggregate(runs);
  CHECK(rep.summary[0].win_count == 0);
  CHECK(rep.summary[1].win_count == 0);
  CHECK(rep.rows[0].reference_source == "none");
  CHECK(rep.rows[0].primal_integral == doctest::Approx(10.0));
  CHECK(rep.rows[1].primal_integral == doctest::Approx(10.0));
}

TEST_CASE("incomplete or duplicated matrices are rejected") {
  std::vector<RunRecord> runs;
  runs.push_back(rec("i1", "A", {}, 10.0));
  runs.push_back(rec("i2", "A", {}, 10.0));
  runs.push_back(rec("i1", "B", {}, 10.0));
  CHECK_THROWS_AS(aggregate(runs), MissingRunError);  // i2/B absent

  runs.push_back(rec("i2", "B", {}, 10.0));
  CHECK_NOTHROW(aggregate(runs));

  runs.push_back(rec("i1", "A", {}, 10.0));
  CHECK_THROWS_AS(aggregate(runs), MissingRunError);  // i1/A twice
}

TEST_CASE("summary line format") {
  std::vector<RunRecord> runs;
  runs.push_back(rec("i1", "A", {{2.0, 5.0}}, 10.0));
  Report rep = aggregate(runs, {{"i1", 5.0}});
  CHECK(report_csv(rep) ==
        "config,feasible,wins,mean_primal_integral\nA,1,1,2.000000\n");
}
