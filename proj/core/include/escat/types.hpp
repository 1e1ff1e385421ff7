#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace escat {

using Real = double;
using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

inline constexpr Complex kImag{0.0, 1.0};

/// What went wrong, mirrored onto CLI exit codes (config -> 2, numerical -> 3).
enum class ErrorKind {
  Parameter,    // invalid scalar/vector input or violated type invariant
  Domain,       // evaluation point outside the operation's domain
  Dimension,    // grid too small for a stencil or sampling request
  Geometry,     // degenerate polygon/cone input
  Singularity,  // evaluation at a singular point (x == y)
  Overflow,     // exponent guard tripped
  Divergence,   // integral does not converge under the given decay condition
  Solver,       // linear solve failed or is near-resonant
  Io,           // file read/write failure
  Config,       // configuration file invalid
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

/// Counter-clockwise 90 degree rotation.
inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// Scalar 2D cross product a.x*b.y - a.y*b.x.
inline Real cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Complex bilinear dot (no conjugation), as used throughout the CGO algebra.
inline Complex bdot(const CVec2& a, const CVec2& b) { return a.x() * b.x() + a.y() * b.y(); }

inline Complex bdot(const CVec2& a, const Vec2& b) { return a.x() * b.x() + a.y() * b.y(); }

/// Deterministic 64-bit generator (xoshiro256**), independent of libstdc++
/// distribution internals so seeded runs are reproducible byte-for-byte.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the state
    std::uint64_t x = seed;
    for (auto& s : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  Real uniform() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  Vec2 in_disk(const Vec2& center, Real radius) {
    // rejection-free polar sampling, area-uniform
    const Real r = radius * std::sqrt(uniform());
    const Real t = uniform(0.0, 2.0 * M_PI);
    return center + r * Vec2(std::cos(t), std::sin(t));
  }

private:
  std::uint64_t state_[4];
};

}  // namespace escat
