#include "ctd/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctd::kernels {

namespace {

// Below this many requirements the thread fan-out costs more than it saves.
constexpr std::int64_t kParallelThreshold = 2048;

bool row_matches(std::span<const Binding> req, std::span<const std::uint32_t> row) {
  for (const Binding& b : req) {
    if (row[b.attribute] != b.value) return false;
  }
  return true;
}

bool covered_by_any(std::span<const Binding> req, const TestMatrix& tests) {
  for (std::size_t r = 0; r < tests.rows(); ++r) {
    if (row_matches(req, tests.row(r))) return true;
  }
  return false;
}

bool completes(std::span<const Binding> req, std::span<const std::int64_t> partial,
               Binding candidate) {
  bool binds_candidate = false;
  for (const Binding& b : req) {
    if (b.attribute == candidate.attribute) {
      if (b.value != candidate.value) return false;
      binds_candidate = true;
    } else if (partial[b.attribute] != static_cast<std::int64_t>(b.value)) {
      return false;
    }
  }
  return binds_candidate;
}

}  // namespace

void mark_covered(const RequirementTable& reqs, const TestMatrix& tests,
                  std::span<std::uint8_t> covered, Exec exec) {
  const auto n = static_cast<std::int64_t>(reqs.size());
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      if (!covered[i] && covered_by_any(reqs.at(i), tests)) covered[i] = 1;
    }
    return;
  }
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    if (!covered[i] && covered_by_any(reqs.at(i), tests)) covered[i] = 1;
  }
}

std::size_t count_completed(const RequirementTable& reqs, std::span<const std::uint8_t> active,
                            std::span<const std::int64_t> partial, Binding candidate, Exec exec) {
  const auto n = static_cast<std::int64_t>(reqs.size());
  std::int64_t total = 0;
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      if (active[i] && completes(reqs.at(i), partial, candidate)) ++total;
    }
    return static_cast<std::size_t>(total);
  }
#pragma omp parallel for schedule(static) reduction(+ : total) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    if (active[i] && completes(reqs.at(i), partial, candidate)) ++total;
  }
  return static_cast<std::size_t>(total);
}

int parallel_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ctd::kernels
