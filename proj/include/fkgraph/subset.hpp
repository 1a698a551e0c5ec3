#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace fkgraph {

/// Subset of {0, ..., 63} stored as a 64-bit mask. `Tag` keeps vertex sets
/// and point sets from being mixed up.
template <class Tag>
class Subset {
 public:
  static constexpr std::size_t kMaxSize = 64;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Subset single(std::size_t i) { return Subset(std::uint64_t{1} << i); }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  constexpr void insert(std::size_t i) { mask_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { mask_ &= ~(std::uint64_t{1} << i); }
  constexpr bool subset_of(Subset o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool intersects(Subset o) const { return (mask_ & o.mask_) != 0; }

  constexpr Subset operator|(Subset o) const { return Subset(mask_ | o.mask_); }
  constexpr Subset operator&(Subset o) const { return Subset(mask_ & o.mask_); }
  constexpr Subset operator-(Subset o) const { return Subset(mask_ & ~o.mask_); }
  constexpr Subset& operator|=(Subset o) { mask_ |= o.mask_; return *this; }
  constexpr Subset& operator&=(Subset o) { mask_ &= o.mask_; return *this; }

  /// Complement relative to {0, ..., n-1}.
  constexpr Subset complement(std::size_t n) const { return full(n) - *this; }

  constexpr auto operator<=>(const Subset&) const = default;

  /// Members in increasing order.
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  /// Calls `f(sub)` for every subset of *this, including the empty set.
  template <class F>
  void for_each_subset(F&& f) const {
    std::uint64_t sub = 0;
    do {
      f(Subset(sub));
      sub = (sub - mask_) & mask_;
    } while (sub != 0);
  }

 private:
  std::uint64_t mask_ = 0;
};

struct VertexTag {};
struct PointTag {};

using VertexSet = Subset<VertexTag>;
using PointSet = Subset<PointTag>;

}  // namespace fkgraph

template <class Tag>
struct std::hash<fkgraph::Subset<Tag>> {
  std::size_t operator()(const fkgraph::Subset<Tag>& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};
