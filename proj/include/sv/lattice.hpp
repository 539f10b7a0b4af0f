#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace sv {

// A site of Z^2 x Z_w: planar coordinates (x, y) and layer z in [0, w).
struct Site {
  int32_t x = 0;
  int32_t y = 0;
  int32_t z = 0;

  friend bool operator==(const Site&, const Site&) = default;
};

enum class VerticalBc { Periodic, Reflecting };

// Canonical direction codes used for ordered neighbor pairs.  Neighbor lists
// are always emitted in this order, which is what makes seeded runs
// reproducible: 0:+x 1:-x 2:+y 3:-y 4:up(+z) 5:down(-z).
enum Dir : uint8_t { DirXP = 0, DirXN = 1, DirYP = 2, DirYN = 3, DirUp = 4, DirDown = 5 };

struct NeighborList {
  std::array<Site, 6> site;
  std::array<uint8_t, 6> dir;
  int count = 0;
};

// Geometry of the stacked lattice: layer count w, vertical boundary
// condition and an optional L x L torus window on the planar coordinates
// (absent = unbounded plane, sparse storage).
//
// For w = 2 the two vertical moves land on the same site; the merged
// neighbor appears once, so every cell has 5 distinct neighbors and a
// dividing cell picks it with probability 1/5.  This is exactly what makes
// the same-layer replacement probability equal 4/5 for w = 2.
struct LatticeGeometry {
  int w = 1;
  VerticalBc bc = VerticalBc::Periodic;
  std::optional<int32_t> window;  // torus side L, reduces x and y mod L

  LatticeGeometry() = default;
  LatticeGeometry(int w_, VerticalBc bc_, std::optional<int32_t> window_ = std::nullopt)
      : w(w_), bc(bc_), window(window_) {
    if (w < 1) throw std::domain_error("LatticeGeometry: w must be >= 1");
    if (window && *window < 1) throw std::domain_error("LatticeGeometry: window side must be >= 1");
  }

  bool bounded() const { return window.has_value(); }
  int64_t site_count() const {
    if (!window) throw std::logic_error("site_count: unbounded geometry");
    return static_cast<int64_t>(*window) * *window * w;
  }

  void validate(const Site& s) const {
    if (s.z < 0 || s.z >= w) throw std::domain_error("Site: layer index out of [0, w)");
  }

  // reduce planar coordinates into [0, L) when a torus window is active
  Site canonical(Site s) const {
    validate(s);
    if (window) {
      const int32_t L = *window;
      s.x = static_cast<int32_t>(((s.x % L) + L) % L);
      s.y = static_cast<int32_t>(((s.y % L) + L) % L);
    }
    return s;
  }

  // signed displacement representative of a torus coordinate, in (-L/2, L/2]
  int32_t centered(int32_t c) const {
    if (!window) return c;
    const int32_t L = *window;
    c = ((c % L) + L) % L;
    return (2 * c > L) ? c - L : c;
  }

  int degree(const Site& s) const {
    if (w == 1) return 4;
    if (w == 2) return 5;
    if (bc == VerticalBc::Periodic) return 6;
    return (s.z == 0 || s.z == w - 1) ? 5 : 6;
  }

  bool dir_valid(const Site& s, uint8_t d) const {
    switch (d) {
      case DirXP: case DirXN: case DirYP: case DirYN:
        return true;
      case DirUp:
        if (w == 1) return false;
        if (w == 2) return true;  // single merged vertical neighbor, either BC
        if (bc == VerticalBc::Reflecting && s.z == w - 1) return false;
        return true;
      case DirDown:
        if (w <= 2) return false;  // w=2: the single vertical neighbor is DirUp
        if (bc == VerticalBc::Reflecting && s.z == 0) return false;
        return true;
      default:
        return false;
    }
  }

  // pre: dir_valid(s, d)
  Site neighbor(const Site& s, uint8_t d) const {
    Site t = s;
    switch (d) {
      case DirXP: t.x += 1; break;
      case DirXN: t.x -= 1; break;
      case DirYP: t.y += 1; break;
      case DirYN: t.y -= 1; break;
      case DirUp: t.z = (s.z + 1 == w) ? 0 : s.z + 1; break;
      case DirDown: t.z = (s.z == 0) ? w - 1 : s.z - 1; break;
    }
    if (window) {
      const int32_t L = *window;
      if (t.x == L) t.x = 0; else if (t.x == -1) t.x = L - 1;
      if (t.y == L) t.y = 0; else if (t.y == -1) t.y = L - 1;
    }
    return t;
  }

  // direction d' such that neighbor(neighbor(s, d), d') == s
  uint8_t reverse_dir(uint8_t d) const {
    switch (d) {
      case DirXP: return DirXN;
      case DirXN: return DirXP;
      case DirYP: return DirYN;
      case DirYN: return DirYP;
      case DirUp: return (w == 2) ? DirUp : DirDown;
      case DirDown: return DirUp;
      default: throw std::domain_error("reverse_dir: bad direction");
    }
  }

  NeighborList neighbors(const Site& s) const {
    validate(s);
    NeighborList out;
    for (uint8_t d = 0; d < 6; ++d) {
      if (!dir_valid(s, d)) continue;
      out.site[out.count] = neighbor(s, d);
      out.dir[out.count] = d;
      ++out.count;
    }
    return out;
  }
};

// Site <-> 64-bit key packing for hash containers: 24 bits per planar
// coordinate (|x|,|y| <= 2^23), 13 bits for the layer (w <= 8191).  The top
// 3 bits stay clear so a direction code can ride along in pair keys
// (pack_site(s) * 8 + dir) without overflow.
constexpr int32_t kPackBias = 1 << 23;

inline uint64_t pack_site(const Site& s) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(s.x + kPackBias) & 0xFFFFFFull) << 37) |
         (static_cast<uint64_t>(static_cast<uint32_t>(s.y + kPackBias) & 0xFFFFFFull) << 13) |
         static_cast<uint64_t>(static_cast<uint32_t>(s.z) & 0x1FFFull);
}

inline Site unpack_site(uint64_t k) {
  Site s;
  s.x = static_cast<int32_t>((k >> 37) & 0xFFFFFFull) - kPackBias;
  s.y = static_cast<int32_t>((k >> 13) & 0xFFFFFFull) - kPackBias;
  s.z = static_cast<int32_t>(k & 0x1FFFull);
  return s;
}

// exact rational, used for the structural lattice constants
struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// probability that a dividing cell replaces a cell on its own layer
inline Rational p_same_layer(int w) {
  if (w < 1) throw std::domain_error("p_same_layer: w must be >= 1");
  if (w == 1) return {1, 1};
  if (w == 2) return {4, 5};
  return {2, 3};
}

// probability that the walk on Z^d x Z_w steps in the Z^d direction
inline Rational p_wd(int d, int w) {
  if (d < 1) throw std::domain_error("p_wd: d must be >= 1");
  if (w < 2) throw std::domain_error("p_wd: w must be >= 2");
  if (w == 2) return {2 * d, 2 * d + 1};
  return {d, d + 1};
}

// mu_w = p_w * pi * w; defined for w >= 2.  The w = 1 value p_1 * pi * w = pi
// has no anchor in the return-time asymptotics and is gated behind allow_w1.
double mu_w(int w, bool allow_w1 = false);

struct SiteHash {
  size_t operator()(uint64_t k) const {
    k = (k ^ (k >> 30)) * 0xBF58476D1CE4E5B9ull;
    k = (k ^ (k >> 27)) * 0x94D049BB133111EBull;
    return static_cast<size_t>(k ^ (k >> 31));
  }
};

}  // namespace sv
