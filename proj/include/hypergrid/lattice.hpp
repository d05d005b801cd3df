#pragma once

// Points and signed unit directions of the integer lattice Z^d, d <= 6.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hg {

inline constexpr int kMaxDim = 6;

/// Signed unit vector +e_axis or -e_axis.
struct Dir {
  std::int8_t axis = 0;
  std::int8_t sign = 1;

  constexpr Dir operator-() const { return Dir{axis, static_cast<std::int8_t>(-sign)}; }
  friend constexpr bool operator==(const Dir&, const Dir&) = default;

  /// Dense index in 0..2d-1: +e_i -> i, -e_i -> d + i.
  constexpr int index(int d) const { return sign > 0 ? axis : d + axis; }
  static constexpr Dir from_index(int k, int d) {
    return k < d ? Dir{static_cast<std::int8_t>(k), 1} : Dir{static_cast<std::int8_t>(k - d), -1};
  }

  std::string str() const { return (sign > 0 ? "+" : "-") + std::to_string(axis + 1); }
};

/// A point of Z^d.
class ZVec {
 public:
  ZVec() = default;
  explicit ZVec(int dim) : dim_(dim) { check_dim(dim); }
  ZVec(std::initializer_list<int> values) : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    int i = 0;
    for (int x : values) v_[i++] = x;
  }
  static ZVec from(const std::vector<int>& values) {
    ZVec z(static_cast<int>(values.size()));
    for (int i = 0; i < z.dim_; ++i) z.v_[i] = values[i];
    return z;
  }

  int dim() const { return dim_; }
  int operator[](int i) const { return v_[i]; }
  int& operator[](int i) { return v_[i]; }

  std::vector<int> to_vector() const { return {v_.begin(), v_.begin() + dim_}; }

  ZVec operator+(const ZVec& o) const {
    ZVec r(*this);
    for (int i = 0; i < dim_; ++i) r.v_[i] += o.v_[i];
    return r;
  }
  ZVec operator-(const ZVec& o) const {
    ZVec r(*this);
    for (int i = 0; i < dim_; ++i) r.v_[i] -= o.v_[i];
    return r;
  }
  ZVec operator*(int k) const {
    ZVec r(*this);
    for (int i = 0; i < dim_; ++i) r.v_[i] *= k;
    return r;
  }
  ZVec operator+(Dir d) const {
    ZVec r(*this);
    r.v_[d.axis] += d.sign;
    return r;
  }
  ZVec operator-(Dir d) const { return *this + (-d); }

  int l1() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += std::abs(v_[i]);
    return s;
  }
  int linf() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s = std::max(s, std::abs(v_[i]));
    return s;
  }

  friend bool operator==(const ZVec& a, const ZVec& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }
  friend bool operator<(const ZVec& a, const ZVec& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    for (int i = 0; i < a.dim_; ++i)
      if (a.v_[i] != b.v_[i]) return a.v_[i] < b.v_[i];
    return false;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) s += (i ? "," : "") + std::to_string(v_[i]);
    return s + ")";
  }

 private:
  static void check_dim(int d) {
    if (d < 0 || d > kMaxDim) throw std::invalid_argument("ZVec: dimension out of range");
  }
  std::array<int, kMaxDim> v_{};
  int dim_ = 0;
};

/// coord + dir
inline ZVec step(const ZVec& coord, Dir dir) { return coord + dir; }

inline int l1_distance(const ZVec& a, const ZVec& b) { return (a - b).l1(); }

struct ZVecHash {
  std::size_t operator()(const ZVec& z) const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(z.dim());
    for (int i = 0; i < z.dim(); ++i) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(z[i]));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace hg
