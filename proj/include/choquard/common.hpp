#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace choquard {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
// Surface measure of the unit 3-sphere.
inline constexpr double kS3Area = 2.0 * kPi * kPi;

// Error taxonomy used across the library. Every failure carries a message
// naming the offending quantity and, where it exists, the location.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : Error {
  using Error::Error;
};
struct ContractError : Error {
  using Error::Error;
};
struct QuadratureError : Error {
  using Error::Error;
};
struct NormError : Error {
  using Error::Error;
};
struct RefinementError : Error {
  using Error::Error;
};
struct DegenerateError : Error {
  using Error::Error;
};
struct ExtrapolationError : Error {
  using Error::Error;
};

// Deterministic pairwise reduction. Result does not depend on thread count:
// callers fill a vector in index order and reduce sequentially here.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Static-chunk parallel loop. Chunks are fixed by index, so writes into
// per-index slots stay deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned max_threads = 0) {
  unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
  if (hw < 2 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = std::max<std::size_t>(1, n / (8 * nt));
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

inline std::uint64_t next_field_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace choquard
