#pragma once
// Dynamic-programming enumeration of walks confined to a region, over
// pluggable cell arithmetic: exact big integers, residues mod a word prime
// (8 summands accumulated in a 128-bit word, one reduction per cell), or
// normalized doubles for asymptotic fits.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <tuple>
#include <vector>

#include "walks/model.hpp"
#include "walks/series.hpp"

namespace walks {

struct enumerate_error : model_error {
  using model_error::model_error;
};
struct bad_prime : enumerate_error {
  using enumerate_error::enumerate_error;
};
struct insufficient_modulus : enumerate_error {
  using enumerate_error::enumerate_error;
};
struct endpoint_outside_region : enumerate_error {
  using enumerate_error::enumerate_error;
};

enum class RegionKind { Quadrant, ThreeQuadrant, UpperHalfPlane, FullPlane };

inline bool region_contains(RegionKind r, int i, int j) {
  switch (r) {
    case RegionKind::Quadrant: return i >= 0 && j >= 0;
    case RegionKind::ThreeQuadrant: return i >= 0 || j >= 0;
    case RegionKind::UpperHalfPlane: return j >= 0;
    case RegionKind::FullPlane: return true;
  }
  return false;
}

// Weighted starting points with a common integer scale: the table holds
// scale * (true weighted counts), keeping the DP integral.
struct StartDistribution {
  std::vector<std::tuple<int, int, long>> entries;  // (i, j, scaled weight)
  long scale = 1;

  static StartDistribution origin() { return {{{0, 0, 1}}, 1}; }
  static StartDistribution point(int i, int j) { return {{{i, j, 1}}, 1}; }
};

// The start distribution whose table realizes (2d-1) * A(x,y): weight 2d-2 at
// the origin and -sign(h) at each other non-extremal affine orbit point of the
// origin.  For king: weights (2,1,1)/3 at (0,0), (-2,0), (0,-2).
StartDistribution a_weighted_start(const StepSet& s);

template <class Cell>
struct WalkTable {
  RegionKind region = RegionKind::ThreeQuadrant;
  EdgeRule edge_rule = EdgeRule::ForbidDiagonalJumps;
  int W = 0;  // window: |i|,|j| <= W
  int n = 0;  // step count
  int radius = 0;  // all cells with max(|i|,|j|) > radius are zero
  std::vector<Cell> cells;  // row-major, index (i+W)*(2W+1) + (j+W)

  WalkTable() = default;
  WalkTable(RegionKind r, EdgeRule e, int window)
      : region(r), edge_rule(e), W(window), cells((size_t)(2 * window + 1) * (2 * window + 1), Cell(0)) {}

  int side() const { return 2 * W + 1; }
  Cell& at(int i, int j) { return cells[(size_t)(i + W) * side() + (j + W)]; }
  const Cell& at(int i, int j) const { return cells[(size_t)(i + W) * side() + (j + W)]; }
  bool inside(int i, int j) const { return i >= -W && i <= W && j >= -W && j <= W; }
};

template <class Cell, class Ops>
WalkTable<Cell> initial_table(RegionKind r, EdgeRule e, int window, const StartDistribution& start,
                              const Ops& ops) {
  WalkTable<Cell> t(r, e, window);
  for (auto& [i, j, w] : start.entries) {
    if (!region_contains(r, i, j)) throw enumerate_error("start point outside region");
    if (!t.inside(i, j)) throw enumerate_error("start point outside window");
    t.at(i, j) = ops.from_long(w);
    t.radius = std::max({t.radius, std::abs(i), std::abs(j)});
  }
  return t;
}

// one DP step: next(i,j) = sum over steps s of cur(i-s.dx, j-s.dy), cells
// outside the region forced to zero; under ForbidDiagonalJumps in the
// three-quadrant cone the two transitions (-1,0)<->(0,-1) are removed.
template <class Cell, class Ops>
void evolve_into(const WalkTable<Cell>& cur, WalkTable<Cell>& next, const StepSet& s, const Ops& ops) {
  const int W = cur.W, side = cur.side();
  next.region = cur.region;
  next.edge_rule = cur.edge_rule;
  next.W = W;
  next.n = cur.n + 1;
  if ((int)next.cells.size() != side * side) next.cells.assign((size_t)side * side, ops.zero());
  // Targets stay one ring away from the window edge so that every source index
  // is in range (the ring is permanently zero); wrappers allocate enough slack.
  int box = std::min(W - 1, cur.radius + 1);
  next.radius = box;
  std::vector<long> offsets;
  for (auto st : s.steps) offsets.push_back(-(long)st.dx * side - st.dy);
  for (int i = -box; i <= box; ++i) {
    long base = (long)(i + W) * side + W;
    int jlo = -box, jhi = box;
    if (cur.region == RegionKind::Quadrant && i < 0) continue;
    if (cur.region == RegionKind::Quadrant) jlo = 0;
    if (cur.region == RegionKind::UpperHalfPlane) jlo = 0;
    if (cur.region == RegionKind::ThreeQuadrant && i < 0) jlo = 0;
    for (int j = jlo; j <= jhi; ++j) {
      typename Ops::Acc acc = ops.acc_zero();
      for (long off : offsets) ops.acc_add(acc, cur.cells[base + j + off]);
      next.cells[base + j] = ops.acc_done(acc);
    }
  }
  // remove the two diagonal transitions that cross outside the cone
  if (cur.region == RegionKind::ThreeQuadrant && cur.edge_rule == EdgeRule::ForbidDiagonalJumps) {
    if (s.has(1, -1) && cur.inside(-1, 0))
      next.at(0, -1) = ops.sub(next.at(0, -1), cur.at(-1, 0));
    if (s.has(-1, 1) && cur.inside(0, -1))
      next.at(-1, 0) = ops.sub(next.at(-1, 0), cur.at(0, -1));
  }
}

struct ExactOps {
  using Cell = Int;
  using Acc = Int;
  Cell zero() const { return Int(0); }
  Cell from_long(long v) const { return Int(v); }
  Acc acc_zero() const { return Int(0); }
  void acc_add(Acc& a, const Cell& c) const { a += c; }
  Cell acc_done(Acc& a) const { return std::move(a); }
  Cell sub(const Cell& a, const Cell& b) const { return a - b; }
};

struct ModOps {
  uint64_t p;
  using Cell = uint64_t;
  using Acc = unsigned __int128;
  Cell zero() const { return 0; }
  Cell from_long(long v) const { return v >= 0 ? (uint64_t)v % p : p - (uint64_t)(-v) % p; }
  Acc acc_zero() const { return 0; }
  void acc_add(Acc& a, Cell c) const { a += c; }
  Cell acc_done(Acc& a) const { return (Cell)(a % p); }
  Cell sub(Cell a, Cell b) const { return sub_mod(a, b, p); }
};

// doubles normalized by divisor^n (divisor = growth rate, e.g. |steps|).
// sub receives a previous-generation cell as subtrahend, so it rescales it.
struct RealOps {
  double divisor;
  using Cell = double;
  using Acc = double;
  Cell zero() const { return 0.0; }
  Cell from_long(long v) const { return (double)v; }
  Acc acc_zero() const { return 0.0; }
  void acc_add(Acc& a, Cell c) const { a += c; }
  Cell acc_done(Acc& a) const { return a / divisor; }
  Cell sub(Cell a, Cell b) const { return a - b / divisor; }
};

// convenience: all tables for n = 0..N (exact arithmetic, small N)
std::vector<WalkTable<Int>> exact_tables(const StepSet& s, RegionKind r, const StartDistribution& start,
                                         int N, int window = -1);

struct Endpoint {
  bool total = false;
  int i = 0, j = 0;
  static Endpoint at(int i, int j) { return {false, i, j}; }
  static Endpoint total_sum() { return {true, 0, 0}; }
};

// exact scaled counts for n=0..N
std::vector<Int> count_sequence(const StepSet& s, RegionKind r, const StartDistribution& start,
                                Endpoint end, int N);

// modular run; calls visit after each step (n = 1..N) with the current table
void run_modular(const StepSet& s, RegionKind r, const StartDistribution& start, int N, uint64_t p,
                 const std::function<void(const WalkTable<uint64_t>&)>& visit);

// per-prime residues of one endpoint slice for n=0..N
std::vector<std::vector<uint64_t>> count_modular(const StepSet& s, RegionKind r,
                                                 const StartDistribution& start, Endpoint end, int N,
                                                 const std::vector<uint64_t>& primes);

enum class SignMode { NonNegative, Balanced };
Int crt_reconstruct(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& primes,
                    SignMode mode, const Int& declared_bound = Int(0));

// number of schedule primes needed to reconstruct values up to bound (x2 in
// balanced mode)
int primes_needed(const Int& bound, SignMode mode);

// ---- series slices -----------------------------------------------------------

SQ slice_point(const std::vector<WalkTable<Int>>& tables, long scale, int i, int j);
SQ slice_total(const std::vector<WalkTable<Int>>& tables, long scale);
SQ slice_eval(const std::vector<WalkTable<Int>>& tables, long scale, const Rat& x0, const Rat& y0);
// sum_{i<0} c_{i,0} x^i and sum_{j<0} c_{0,j} y^j
SLX slice_axis_neg_x(const std::vector<WalkTable<Int>>& tables, long scale);
SLX slice_axis_neg_y(const std::vector<WalkTable<Int>>& tables, long scale);

struct SeriesL2 {
  int order = 0;
  std::vector<Laurent2> c;
};
// quadrant / left (i<0,j>=0) / bottom (i>=0,j<0) parts as bivariate series
SeriesL2 slice_part(const std::vector<WalkTable<Int>>& tables, long scale,
                    const std::function<bool(int, int)>& keep);

// ---- binary checkpoints ------------------------------------------------------

void write_checkpoint(std::ostream& out, const WalkTable<uint64_t>& t, uint64_t prime);
WalkTable<uint64_t> read_checkpoint(std::istream& in, uint64_t& prime);

}  // namespace walks
