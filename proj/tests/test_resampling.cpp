#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tsselect/embedding.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/resampling.hpp"
#include "tsselect/rng.hpp"

using namespace tsselect;

namespace {

using Indices = std::vector<std::size_t>;

Indices range(std::size_t begin, std::size_t end) {
  Indices out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(i);
  return out;
}

ResamplerSpec spec_for(Method method, std::size_t k, std::size_t p = 1, std::uint64_t seed = 0) {
  return ResamplerSpec::defaults_for(method, k, p, seed);
}

// Checks every structural invariant a plan must satisfy.
void check_plan_invariants(const SplitPlan& plan, std::size_t rows) {
  const bool ordered = plan.method == Method::holdout || plan.method == Method::repeated_holdout ||
                       plan.method == Method::preq_blocks ||
                       plan.method == Method::preq_sliding_blocks ||
                       plan.method == Method::preq_blocks_trim ||
                       plan.method == Method::preq_blocks_gap;

  REQUIRE(!plan.iterations.empty());
  for (const auto& it : plan.iterations) {
    REQUIRE(!it.train.empty());
    REQUIRE(!it.test.empty());
    CHECK(std::is_sorted(it.train.begin(), it.train.end()));
    CHECK(std::is_sorted(it.test.begin(), it.test.end()));
    CHECK(it.train.back() < rows);
    CHECK(it.test.back() < rows);

    std::set<std::size_t> train_set(it.train.begin(), it.train.end());
    CHECK(train_set.size() == it.train.size());
    for (const std::size_t t : it.test) CHECK(train_set.count(t) == 0);

    if (ordered) CHECK(it.train.back() < it.test.front());
  }

  // CV and CV-Bl test sets partition the row range exactly.
  if (plan.method == Method::cv || plan.method == Method::cv_blocked) {
    Indices all_tests;
    for (const auto& it : plan.iterations) {
      all_tests.insert(all_tests.end(), it.test.begin(), it.test.end());
    }
    std::sort(all_tests.begin(), all_tests.end());
    CHECK(all_tests == range(0, rows));
  }

  // purge distance respected
  if (plan.method == Method::cv_modified || plan.method == Method::cv_hv_blocked) {
    const std::size_t p = plan.params.lag_order;
    for (const auto& it : plan.iterations) {
      for (const std::size_t a : it.train) {
        for (const std::size_t b : it.test) {
          const std::size_t gap = a > b ? a - b : b - a;
          CHECK(gap > p);
        }
      }
    }
  }

  const std::size_t k = plan.params.fold_count;
  switch (plan.method) {
    case Method::cv:
    case Method::cv_blocked:
    case Method::cv_modified:
    case Method::cv_hv_blocked:
    case Method::repeated_holdout: CHECK(plan.iterations.size() == k); break;
    case Method::holdout: CHECK(plan.iterations.size() == 1); break;
    case Method::preq_blocks:
    case Method::preq_sliding_blocks: CHECK(plan.iterations.size() == k - 1); break;
    case Method::preq_blocks_trim: CHECK(plan.iterations.size() == ceil_frac(0.6, k - 1)); break;
    case Method::preq_blocks_gap: CHECK(plan.iterations.size() == k - 2); break;
  }
}

}  // namespace

TEST_SUITE("resampling") {

TEST_CASE("method ids round-trip") {
  const std::vector<std::string_view> ids = {"CV",      "CV-Bl",        "CV-Mod",
                                             "CV-hvBl", "Holdout",      "Rep-Holdout",
                                             "Preq-Bls", "Preq-Sld-Bls", "Preq-Bls-Trim",
                                             "Preq-Bls-Gap"};
  for (std::size_t i = 0; i < kAllMethods.size(); ++i) {
    CHECK(method_id(kAllMethods[i]) == ids[i]);
    CHECK(parse_method(ids[i]) == kAllMethods[i]);
  }
  CHECK_THROWS_AS(parse_method("KFold"), ConfigError);
}

TEST_CASE("fold sizes distribute the remainder to the front") {
  CHECK(fold_sizes(10, 5) == std::vector<std::size_t>{2, 2, 2, 2, 2});
  CHECK(fold_sizes(11, 5) == std::vector<std::size_t>{3, 2, 2, 2, 2});
  CHECK(fold_sizes(13, 5) == std::vector<std::size_t>{3, 3, 3, 2, 2});
}

TEST_CASE("cv: shuffled folds partition the rows") {
  const auto plan = cv_shuffled(10, spec_for(Method::cv, 5, 1, 42));
  REQUIRE(plan.iterations.size() == 5);
  for (const auto& it : plan.iterations) {
    CHECK(it.test.size() == 2);
    CHECK(it.train.size() == 8);
  }
  check_plan_invariants(plan, 10);
}

TEST_CASE("cv: same seed gives identical plans") {
  const auto a = cv_shuffled(40, spec_for(Method::cv, 5, 1, 7));
  const auto b = cv_shuffled(40, spec_for(Method::cv, 5, 1, 7));
  const auto c = cv_shuffled(40, spec_for(Method::cv, 5, 1, 8));
  CHECK(a.iterations == b.iterations);
  CHECK(a.iterations != c.iterations);
}

TEST_CASE("cv: K=N/2 keeps every test fold at two rows") {
  const auto plan = cv_shuffled(20, spec_for(Method::cv, 10, 1, 3));
  for (const auto& it : plan.iterations) CHECK(it.test.size() == 2);
  check_plan_invariants(plan, 20);
}

TEST_CASE("cv: rejects N < 2K") {
  CHECK_THROWS_AS(cv_shuffled(9, spec_for(Method::cv, 5)), PlanError);
}

TEST_CASE("cv-bl: contiguous blocks") {
  const auto plan = cv_blocked(10, spec_for(Method::cv_blocked, 5));
  REQUIRE(plan.iterations.size() == 5);
  CHECK(plan.iterations[0].test == Indices{0, 1});
  CHECK(plan.iterations[1].test == Indices{2, 3});
  CHECK(plan.iterations[2].test == Indices{4, 5});
  CHECK(plan.iterations[3].test == Indices{6, 7});
  CHECK(plan.iterations[4].test == Indices{8, 9});
  // iteration testing block {2,3} trains on everything else
  CHECK(plan.iterations[1].train == Indices{0, 1, 4, 5, 6, 7, 8, 9});
  check_plan_invariants(plan, 10);
}

TEST_CASE("cv-bl: remainder goes to the first fold") {
  const auto plan = cv_blocked(11, spec_for(Method::cv_blocked, 5));
  CHECK(plan.iterations[0].test.size() == 3);
  for (std::size_t k = 1; k < 5; ++k) CHECK(plan.iterations[k].test.size() == 2);
}

TEST_CASE("cv-bl: two folds split in halves") {
  const auto plan = cv_blocked(10, spec_for(Method::cv_blocked, 2));
  REQUIRE(plan.iterations.size() == 2);
  CHECK(plan.iterations[0].test == range(0, 5));
  CHECK(plan.iterations[0].train == range(5, 10));
  CHECK(plan.iterations[1].test == range(5, 10));
  CHECK(plan.iterations[1].train == range(0, 5));
}

TEST_CASE("purge rule removes rows near test points") {
  // universe 0..9 minus test {3,7}; p=1 knocks out {2,3,4,6,7,8}
  const Indices train = {0, 1, 2, 4, 5, 6, 8, 9};
  const Indices test = {3, 7};
  CHECK(purge_within(train, test, 1) == Indices{0, 1, 5, 9});
  CHECK(purge_within(train, test, 0) == train);
  CHECK(purge_within(train, test, 4) == Indices{});
}

TEST_CASE("cv-mod: rejects lag order zero") {
  CHECK_THROWS_AS(cv_modified(40, spec_for(Method::cv_modified, 5, 0)), PlanError);
}

TEST_CASE("cv-mod: purged plans satisfy the distance property") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto plan = cv_modified(200, spec_for(Method::cv_modified, 10, 5, seed));
    check_plan_invariants(plan, 200);
  }
}

TEST_CASE("cv-mod: golden digest stays stable") {
  // Brute-force checked by check_plan_invariants; the digest pins the exact
  // shuffle so an accidental RNG change cannot slip through.
  const auto plan = cv_modified(200, spec_for(Method::cv_modified, 10, 5, 42));
  std::uint64_t digest = 0xcbf29ce484222325ull;
  const auto fold = [&digest](std::size_t v) {
    digest ^= v + 0x9e3779b97f4a7c15ull + (digest << 6) + (digest >> 2);
  };
  for (const auto& it : plan.iterations) {
    fold(it.train.size());
    for (const std::size_t i : it.train) fold(i);
    fold(it.test.size());
    for (const std::size_t i : it.test) fold(i);
  }
  CHECK(digest == 6999201090111971345ull);
}

TEST_CASE("cv-mod: error names the iteration when purging empties training") {
  // tiny N with a large purge distance: every train row is near a test row
  bool threw = false;
  try {
    cv_modified(20, spec_for(Method::cv_modified, 10, 9, 1));
  } catch (const PlanError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("iteration") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("cv-hvbl: gap around the test block") {
  SUBCASE("N=12 K=3 p=1") {
    const auto plan = cv_hv_blocked(12, spec_for(Method::cv_hv_blocked, 3, 1));
    REQUIRE(plan.iterations.size() == 3);
    // middle block {4..7}: rows 3 and 8 are purged
    CHECK(plan.iterations[1].test == range(4, 8));
    CHECK(plan.iterations[1].train == Indices{0, 1, 2, 9, 10, 11});
    // first block tested: only the trailing gap exists
    CHECK(plan.iterations[0].test == range(0, 4));
    CHECK(plan.iterations[0].train == range(5, 12));
  }
  SUBCASE("N=10 K=5 p=2") {
    const auto plan = cv_hv_blocked(10, spec_for(Method::cv_hv_blocked, 5, 2));
    CHECK(plan.iterations[2].test == Indices{4, 5});
    CHECK(plan.iterations[2].train == Indices{0, 1, 8, 9});
  }
}

TEST_CASE("holdout: single ordered split") {
  const auto plan = holdout(10, spec_for(Method::holdout, 5));
  REQUIRE(plan.iterations.size() == 1);  // K is irrelevant
  CHECK(plan.iterations[0].train == range(0, 7));
  CHECK(plan.iterations[0].test == range(7, 10));

  const auto big = holdout(100, spec_for(Method::holdout, 10));
  CHECK(big.iterations[0].train.size() == 70);
  CHECK(big.iterations[0].test.size() == 30);

  CHECK_THROWS_AS(holdout(9, spec_for(Method::holdout, 10)), PlanError);
}

TEST_CASE("rep-holdout: anchored 60/10 windows") {
  const auto spec = spec_for(Method::repeated_holdout, 10, 1, 99);
  const auto plan = repeated_holdout(100, spec);
  REQUIRE(plan.iterations.size() == 10);
  for (const auto& it : plan.iterations) {
    CHECK(it.train.size() == 60);
    CHECK(it.test.size() == 10);
    const std::size_t anchor = it.test.front();
    CHECK(anchor >= 60);
    CHECK(anchor <= 90);
    CHECK(it.train.front() == anchor - 60);
    CHECK(it.train.back() == anchor - 1);
    CHECK(it.test.back() == anchor + 9);
  }
  check_plan_invariants(plan, 100);

  const auto again = repeated_holdout(100, spec);
  CHECK(plan.iterations == again.iterations);  // determinism
}

TEST_CASE("rep-holdout: lowest anchor trains on the full prefix") {
  // anchor 60 means train {0..59}, test {60..69}; force it via a handmade
  // check over many seeds rather than relying on one draw
  bool saw_any = false;
  for (std::uint64_t seed = 0; seed < 50 && !saw_any; ++seed) {
    const auto plan = repeated_holdout(100, spec_for(Method::repeated_holdout, 10, 1, seed));
    for (const auto& it : plan.iterations) {
      if (it.test.front() == 60) {
        CHECK(it.train == range(0, 60));
        CHECK(it.test == range(60, 70));
        saw_any = true;
      }
    }
  }
  CHECK(saw_any);
}

TEST_CASE("rep-holdout: infeasible window") {
  ResamplerSpec spec = spec_for(Method::repeated_holdout, 10);
  CHECK_THROWS_AS(repeated_holdout(9, spec), PlanError);  // floor(0.1*9) = 0
}

TEST_CASE("preq-bls: growing window") {
  const auto plan = preq_blocks(10, spec_for(Method::preq_blocks, 5));
  REQUIRE(plan.iterations.size() == 4);
  CHECK(plan.iterations[0].train == range(0, 2));
  CHECK(plan.iterations[0].test == range(2, 4));
  CHECK(plan.iterations[1].train == range(0, 4));
  CHECK(plan.iterations[1].test == range(4, 6));
  CHECK(plan.iterations[2].train == range(0, 6));
  CHECK(plan.iterations[2].test == range(6, 8));
  CHECK(plan.iterations[3].train == range(0, 8));
  CHECK(plan.iterations[3].test == range(8, 10));

  // nested training sets
  for (std::size_t i = 1; i < plan.iterations.size(); ++i) {
    const auto& prev = plan.iterations[i - 1].train;
    const auto& cur = plan.iterations[i].train;
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
  }
}

TEST_CASE("preq-sld-bls: sliding window") {
  const auto plan = preq_sliding_blocks(10, spec_for(Method::preq_sliding_blocks, 5));
  REQUIRE(plan.iterations.size() == 4);
  CHECK(plan.iterations[0].train == range(0, 2));
  CHECK(plan.iterations[0].test == range(2, 4));
  CHECK(plan.iterations[1].train == range(2, 4));
  CHECK(plan.iterations[1].test == range(4, 6));
  CHECK(plan.iterations[2].train == range(4, 6));
  CHECK(plan.iterations[2].test == range(6, 8));
  CHECK(plan.iterations[3].train == range(6, 8));
  CHECK(plan.iterations[3].test == range(8, 10));
  for (const auto& it : plan.iterations) {
    CHECK(it.train.size() == 2);
    CHECK(it.test.front() == it.train.back() + 1);  // adjacent blocks
  }
}

TEST_CASE("preq-bls-trim: keeps the tail of the growing window") {
  SUBCASE("K=10 keeps 6 of 9 iterations") {
    const auto full = preq_blocks(40, spec_for(Method::preq_blocks, 10));
    const auto trimmed = preq_blocks_trim(40, spec_for(Method::preq_blocks_trim, 10));
    REQUIRE(full.iterations.size() == 9);
    REQUIRE(trimmed.iterations.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(trimmed.iterations[i] == full.iterations[i + 3]);
    }
  }
  SUBCASE("K=5 N=10 keeps ceil(2.4)=3 of 4") {
    const auto full = preq_blocks(10, spec_for(Method::preq_blocks, 5));
    const auto trimmed = preq_blocks_trim(10, spec_for(Method::preq_blocks_trim, 5));
    REQUIRE(trimmed.iterations.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(trimmed.iterations[i] == full.iterations[i + 1]);
    }
  }
}

TEST_CASE("preq-bls-gap: a block separates train and test") {
  const auto plan = preq_blocks_gap(15, spec_for(Method::preq_blocks_gap, 5));
  REQUIRE(plan.iterations.size() == 3);
  CHECK(plan.iterations[0].train == range(0, 3));
  CHECK(plan.iterations[0].test == range(6, 9));
  CHECK(plan.iterations[1].train == range(0, 6));
  CHECK(plan.iterations[1].test == range(9, 12));
  CHECK(plan.iterations[2].train == range(0, 9));
  CHECK(plan.iterations[2].test == range(12, 15));
  // the gap block belongs to neither side
  for (const auto& it : plan.iterations) {
    for (std::size_t g = it.train.back() + 1; g < it.test.front(); ++g) {
      CHECK(std::find(it.train.begin(), it.train.end(), g) == it.train.end());
      CHECK(std::find(it.test.begin(), it.test.end(), g) == it.test.end());
    }
    CHECK(it.test.front() - (it.train.back() + 1) == 3);  // one full block
  }

  CHECK_THROWS_AS(preq_blocks_gap(14, spec_for(Method::preq_blocks_gap, 5)), PlanError);
}

TEST_CASE("property: randomized plans satisfy every invariant") {
  Rng rng(20240601);
  std::size_t validated = 0;
  for (int round = 0; round < 60; ++round) {
    const std::size_t k = 2 + rng.below(9);                                   // 2..10
    const std::size_t n = std::max<std::size_t>(20, 3 * k) + rng.below(480);  // up to ~500
    const std::size_t p = 1 + rng.below(4);                                   // 1..4
    const std::uint64_t seed = rng.next();
    for (const Method method : kAllMethods) {
      SplitPlan plan;
      try {
        plan = make_plan(n, ResamplerSpec::defaults_for(method, k, p, seed));
      } catch (const PlanError&) {
        continue;  // infeasible combination; the error is the contract
      }
      check_plan_invariants(plan, n);
      ++validated;
    }
  }
  CHECK(validated > 500);
}

TEST_CASE("make_plan dispatches on the method field") {
  for (const Method method : kAllMethods) {
    const auto plan = make_plan(60, ResamplerSpec::defaults_for(method, 5, 2, 11));
    CHECK(plan.method == method);
    CHECK(plan.params.method == method);
  }
}

}  // TEST_SUITE
