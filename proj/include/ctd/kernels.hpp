/// @file  kernels.hpp
/// @brief Data-parallel coverage kernels over flat requirement/test tables.
///
/// Each kernel has a serial reference and an OpenMP version with identical
/// results; the serial one is kept for testing and benchmarking.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctd/model.hpp"

namespace ctd::kernels {

enum class Exec { Serial, Parallel };

/// Requirements in CSR layout: bindings of requirement i live in
/// [offsets[i], offsets[i+1]).
struct RequirementTable {
  std::vector<std::uint32_t> offsets{0};
  std::vector<Binding> bindings;

  [[nodiscard]] std::size_t size() const noexcept { return offsets.size() - 1; }
  [[nodiscard]] std::span<const Binding> at(std::size_t i) const {
    return std::span<const Binding>(bindings).subspan(offsets[i], offsets[i + 1] - offsets[i]);
  }
  void push_back(std::span<const Binding> req) {
    bindings.insert(bindings.end(), req.begin(), req.end());
    offsets.push_back(static_cast<std::uint32_t>(bindings.size()));
  }
};

/// Row-major matrix of value indices, one row per test.
struct TestMatrix {
  std::size_t width = 0;
  std::vector<std::uint32_t> cells;

  TestMatrix() = default;
  explicit TestMatrix(std::size_t w) : width(w) {}

  [[nodiscard]] std::size_t rows() const noexcept { return width ? cells.size() / width : 0; }
  [[nodiscard]] std::span<const std::uint32_t> row(std::size_t i) const {
    return std::span<const std::uint32_t>(cells).subspan(i * width, width);
  }
  void push_back(std::span<const std::uint32_t> test) {
    cells.insert(cells.end(), test.begin(), test.end());
  }
};

/// Value meaning "attribute not fixed yet" in a partial row.
inline constexpr std::int64_t kUnbound = -1;

/// Sets covered[i] = 1 for every requirement matched by at least one row.
/// Entries already set stay set.
void mark_covered(const RequirementTable& reqs, const TestMatrix& tests,
                  std::span<std::uint8_t> covered, Exec exec = Exec::Parallel);

/// Number of requirements with active[i] != 0 that bind `candidate` and whose
/// other bindings are all fixed in `partial` to the bound values.
[[nodiscard]] std::size_t count_completed(const RequirementTable& reqs,
                                          std::span<const std::uint8_t> active,
                                          std::span<const std::int64_t> partial, Binding candidate,
                                          Exec exec = Exec::Parallel);

/// Number of OpenMP threads the parallel kernels use (1 without OpenMP).
[[nodiscard]] int parallel_threads() noexcept;

}  // namespace ctd::kernels
