#pragma once

// Precomputed multiplication data and ideal masks for a small finite ring.

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "bcinv/lab/lab.hpp"

namespace bcinv::lab {

using Mask = std::uint64_t;
using Id = std::uint32_t;
inline constexpr int kNone = -1;

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(Id x) { return Mask{1} << x; }

class Table {
 public:
  explicit Table(const FiniteRing& r);

  const FiniteRing& ring() const { return r_; }
  Id size() const { return n_; }
  Id zero() const { return zero_; }
  Id one() const { return one_; }
  Id mul(Id x, Id y) const { return mul_[x * n_ + y]; }
  Id mul(Id x, Id y, Id z) const { return mul(mul(x, y), z); }
  Id add(Id x, Id y) const { return add_[x * n_ + y]; }
  Id sub(Id x, Id y) const { return add(x, neg_[y]); }
  Id comp(Id p) const { return sub(one_, p); }
  std::string label(Id x) const { return r_.to_string(Element{x}); }

  Mask right_image(Id x) const { return ri_[x]; }   ///< xR
  Mask left_image(Id x) const { return li_[x]; }    ///< Rx
  Mask right_kernel(Id x) const { return rk_[x]; }  ///< {y : xy = 0}
  Mask left_kernel(Id x) const { return lk_[x]; }   ///< {y : yx = 0}
  Mask inner(Id b) const { return inner_[b]; }      ///< b{1}
  bool regular(Id b) const { return inner_[b] != 0; }
  bool idempotent(Id x) const { return mul(x, x) == x; }
  int inverse(Id x) const { return unit_inv_[x]; }
  bool unit(Id x) const { return unit_inv_[x] != kNone; }

  /// y with y ∈ bRy ∩ yRc, y·a·b = b, c·a·y = c, found by direct search.
  int bc(Id a, Id b, Id c) const { return bc_[(a * n_ + b) * n_ + c]; }
  /// Number of y meeting the definition (uniqueness says at most one).
  int bc_count(Id a, Id b, Id c) const { return bc_count_[(a * n_ + b) * n_ + c]; }

  /// {x·s·y : s ∈ R}.
  Mask sandwich(Id x, Id y) const;
  /// {s + t : s ∈ A, t ∈ B}.
  Mask sumset(Mask a, Mask b) const;
  /// Units of the corner ring e·R·e, with their corner inverses.
  std::vector<std::pair<Id, Id>> corner_units(Id e) const;

 private:
  const FiniteRing& r_;
  Id n_;
  Id zero_, one_;
  std::vector<Id> mul_, add_, neg_;
  std::vector<Mask> ri_, li_, rk_, lk_, inner_;
  std::vector<int> unit_inv_, bc_, bc_count_;
};

/// A regular b (or c) paired with one idempotent b·g (or h·c), and how many
/// inner inverses produce that idempotent. Results depending on g only
/// through b·g are evaluated once per class and weighted by `choices`.
struct FrameClass {
  Id elem;
  Id idem;
  std::uint64_t choices;
};

std::vector<FrameClass> left_classes(const Table& t);   ///< (b, b·g)
std::vector<FrameClass> right_classes(const Table& t);  ///< (c, h·c)

/// Per-partition accumulator; merged in partition order so reports do not
/// depend on scheduling.
struct Accum {
  std::uint64_t examined = 0;
  std::uint64_t admissible = 0;
  std::map<std::string, Tally> statements;
  std::map<std::string, std::uint64_t> counts;
  std::vector<Counterexample> cex;
  std::uint64_t cex_total = 0;
  std::size_t keep = 20;

  void check(const std::string& name, bool held, std::uint64_t weight = 1) {
    auto& t = statements[name];
    t.evaluated += weight;
    if (held) t.held += weight;
  }
  void refute(const Table& t, std::vector<std::pair<std::string, Id>> slots, std::string statement);
  void merge(Accum&& other);
};

/// Runs body(i, acc) for i in [0, count) on worker threads and merges.
Accum sweep(std::size_t count, unsigned threads, std::size_t keep,
            const std::function<void(std::size_t, Accum&)>& body);

LabReport finish(const Table& t, std::string suite, std::vector<std::string> theorems, std::uint64_t space,
                 Accum&& acc, std::size_t keep);

void check_budget(const Table& t, std::uint64_t estimate, const LabConfig& cfg, const std::string& suite);

}  // namespace bcinv::lab
