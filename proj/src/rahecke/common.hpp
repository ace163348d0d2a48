#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace rahecke {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

// Error categories map one-to-one onto the CLI exit codes and the C API
// status values: validation = 1, resource guard = 2, failed verification = 3.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResourceLimits {
  std::size_t max_ball_elements = 2'000'000;
  std::uint64_t max_quadruples = 10'000'000;
  std::size_t max_class_size = 1'000'000;
};

/// Process-wide limits. Tests and the CLI may tighten or relax them.
ResourceLimits& limits();

/// Worker cap for the parallel sections (ball-independent loops only).
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() workers.
/// Callers write results into per-index slots so reductions stay ordered.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Rounds to 12 significant digits; every reported number passes through here.
double sig12(double value);
std::string format12(double value);

/// Seeded generator whose output is identical on every platform: mt19937_64
/// for the bits, explicit conversions for uniform and normal variates.
class StableRng {
 public:
  explicit StableRng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();           // [0, 1)
  double normal();            // Box-Muller, caches the second variate
  Complex complex_normal();   // E|z|^2 = 1
  std::size_t below(std::size_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rahecke
