#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "laxbench/scalar.hpp"

namespace laxbench {

enum class ProfileKind { beauville, bullet, bv, uniform };

/// Per-entry degree bounds of an r x r polynomial matrix. Indices are 0-based.
///   beauville(d): d everywhere
///   bullet(d):    d+1 everywhere (the enlarged space with one extra coefficient)
///   bv(d):        d at (1,1), d+1 on the rest of row 1, d-1 on the rest of
///                 column 1, d elsewhere
///   uniform(b):   b everywhere (intermediate products)
struct DegreeProfile {
  ProfileKind kind = ProfileKind::beauville;
  int r = 2;
  int d = 1;

  static DegreeProfile beauville(int r, int d) { return make(ProfileKind::beauville, r, d); }
  static DegreeProfile bullet(int r, int d) { return make(ProfileKind::bullet, r, d); }
  static DegreeProfile bv(int r, int d) {
    if (d < 1) throw InputError("bv profile requires d >= 1");
    return make(ProfileKind::bv, r, d);
  }
  static DegreeProfile uniform(int r, int b) { return make(ProfileKind::uniform, r, b); }

  int bound(int i, int j) const {
    switch (kind) {
      case ProfileKind::beauville:
      case ProfileKind::uniform:
        return d;
      case ProfileKind::bullet:
        return d + 1;
      case ProfileKind::bv:
        if (i == 0 && j == 0) return d;
        if (i == 0) return d + 1;
        if (j == 0) return d - 1;
        return d;
    }
    return d;
  }

  int max_bound() const {
    int b = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) b = std::max(b, bound(i, j));
    return b;
  }

  /// Degree bound of the i-th characteristic coefficient s_i.
  int spectral_bound(int i) const {
    return kind == ProfileKind::bullet ? (d + 1) * i : d * i;
  }

  std::string kind_name() const {
    switch (kind) {
      case ProfileKind::beauville: return "beauville";
      case ProfileKind::bullet: return "bullet";
      case ProfileKind::bv: return "bv";
      case ProfileKind::uniform: return "uniform";
    }
    return "?";
  }

  friend bool operator==(const DegreeProfile& a, const DegreeProfile& b) {
    return a.kind == b.kind && a.r == b.r && a.d == b.d;
  }

 private:
  static DegreeProfile make(ProfileKind k, int r, int d) {
    if (r < 1) throw InputError("matrix size must be positive");
    if (d < 0) throw InputError("degree must be nonnegative");
    DegreeProfile p;
    p.kind = k;
    p.r = r;
    p.d = d;
    return p;
  }
};

ProfileKind parse_profile_kind(const std::string& name);

inline std::ostream& operator<<(std::ostream& os, const DegreeProfile& p) {
  return os << p.kind_name() << "(r=" << p.r << ",d=" << p.d << ")";
}

/// Names the coordinate function "coefficient of x^k in entry (i,j)", 0-based.
struct CoordIndex {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const CoordIndex&, const CoordIndex&) = default;
  friend auto operator<=>(const CoordIndex&, const CoordIndex&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CoordIndex& c) {
  return os << "A" << c.i + 1 << c.j + 1 << ";" << c.k;
}

/// All coordinates of a profile, enumerated lexicographically in (i, j, k).
class CoordSet {
 public:
  explicit CoordSet(const DegreeProfile& p) : profile_(p), offset_(p.r * p.r + 1, 0) {
    for (int i = 0; i < p.r; ++i)
      for (int j = 0; j < p.r; ++j) {
        offset_[i * p.r + j] = static_cast<int>(coords_.size());
        for (int k = 0; k <= p.bound(i, j); ++k) coords_.push_back({i, j, k});
      }
    offset_[p.r * p.r] = static_cast<int>(coords_.size());
  }

  const DegreeProfile& profile() const { return profile_; }
  int size() const { return static_cast<int>(coords_.size()); }
  const CoordIndex& operator[](int n) const { return coords_[static_cast<std::size_t>(n)]; }
  const std::vector<CoordIndex>& coords() const { return coords_; }

  /// Position of A_{ij;k}, or -1 when the coordinate is not in the set.
  int index(int i, int j, int k) const {
    if (i < 0 || j < 0 || i >= profile_.r || j >= profile_.r) return -1;
    if (k < 0 || k > profile_.bound(i, j)) return -1;
    return offset_[i * profile_.r + j] + k;
  }
  int index(const CoordIndex& c) const { return index(c.i, c.j, c.k); }
  bool contains(const CoordIndex& c) const { return index(c) >= 0; }

 private:
  DegreeProfile profile_;
  std::vector<CoordIndex> coords_;
  std::vector<int> offset_;
};

}  // namespace laxbench
