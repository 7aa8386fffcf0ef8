#include "ctd/kernels.hpp"

#include <random>

#include <gtest/gtest.h>

namespace ctd::kernels {
namespace {

struct Fixture {
  RequirementTable reqs;
  TestMatrix tests;
  std::vector<std::uint32_t> domains;
};

Fixture random_fixture(std::mt19937_64& rng, std::size_t n_reqs, std::size_t n_tests) {
  Fixture f;
  const std::size_t width = 6;
  f.tests = TestMatrix(width);
  for (std::size_t a = 0; a < width; ++a) f.domains.push_back(2 + static_cast<std::uint32_t>(rng() % 3));
  for (std::size_t i = 0; i < n_reqs; ++i) {
    std::vector<Binding> req;
    for (std::uint32_t a = 0; a < width; ++a) {
      if (rng() % 3 == 0) req.push_back({a, static_cast<std::uint32_t>(rng() % f.domains[a])});
    }
    if (req.empty()) req.push_back({0, 0});
    f.reqs.push_back(req);
  }
  for (std::size_t i = 0; i < n_tests; ++i) {
    std::vector<std::uint32_t> row;
    for (std::size_t a = 0; a < width; ++a) row.push_back(static_cast<std::uint32_t>(rng() % f.domains[a]));
    f.tests.push_back(row);
  }
  return f;
}

bool matches(std::span<const Binding> req, std::span<const std::uint32_t> row) {
  for (const Binding& b : req) {
    if (row[b.attribute] != b.value) return false;
  }
  return true;
}

TEST(Kernels, TableLayout) {
  RequirementTable t;
  const Binding a[] = {{0, 1}, {2, 0}};
  const Binding b[] = {{1, 1}};
  t.push_back(a);
  t.push_back(b);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at(1).size(), 1u);
  EXPECT_EQ(t.at(0)[1], (Binding{2, 0}));
  TestMatrix m(3);
  const std::uint32_t row[] = {1, 2, 3};
  m.push_back(row);
  EXPECT_EQ(m.rows(), 1u);
  EXPECT_EQ(m.row(0)[2], 3u);
}

TEST(Kernels, MarkCoveredSerialMatchesDefinitionAndParallel) {
  std::mt19937_64 rng(41);
  for (std::size_t n : {10u, 3000u, 20000u}) {
    const Fixture f = random_fixture(rng, n, 40);
    std::vector<std::uint8_t> expected(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < f.tests.rows(); ++r) {
        if (matches(f.reqs.at(i), f.tests.row(r))) expected[i] = 1;
      }
    }
    std::vector<std::uint8_t> serial(n, 0), parallel(n, 0);
    mark_covered(f.reqs, f.tests, serial, Exec::Serial);
    mark_covered(f.reqs, f.tests, parallel, Exec::Parallel);
    EXPECT_EQ(serial, expected);
    EXPECT_EQ(parallel, expected);
  }
}

TEST(Kernels, MarkCoveredKeepsExistingMarks) {
  RequirementTable reqs;
  const Binding a[] = {{0, 1}};
  reqs.push_back(a);
  TestMatrix empty(1);
  std::vector<std::uint8_t> covered{1};
  mark_covered(reqs, empty, covered, Exec::Serial);
  EXPECT_EQ(covered[0], 1);
}

TEST(Kernels, CountCompletedSerialMatchesDefinitionAndParallel) {
  std::mt19937_64 rng(43);
  for (std::size_t n : {10u, 5000u, 30000u}) {
    const Fixture f = random_fixture(rng, n, 0);
    std::vector<std::uint8_t> active(n);
    for (auto& x : active) x = rng() % 4 != 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::int64_t> partial(f.domains.size(), kUnbound);
      for (std::size_t a = 0; a < partial.size(); ++a) {
        if (rng() % 2) partial[a] = static_cast<std::int64_t>(rng() % f.domains[a]);
      }
      const std::uint32_t attr = static_cast<std::uint32_t>(rng() % f.domains.size());
      const Binding cand{attr, static_cast<std::uint32_t>(rng() % f.domains[attr])};
      partial[attr] = kUnbound;

      std::size_t expected = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        bool binds = false, complete = true;
        for (const Binding& b : f.reqs.at(i)) {
          if (b == cand) {
            binds = true;
          } else if (b.attribute == cand.attribute ||
                     partial[b.attribute] != static_cast<std::int64_t>(b.value)) {
            complete = false;
          }
        }
        expected += binds && complete;
      }
      EXPECT_EQ(count_completed(f.reqs, active, partial, cand, Exec::Serial), expected);
      EXPECT_EQ(count_completed(f.reqs, active, partial, cand, Exec::Parallel), expected);
    }
  }
}

TEST(Kernels, ThreadCountIsPositive) { EXPECT_GE(parallel_threads(), 1); }

}  // namespace
}  // namespace ctd::kernels
