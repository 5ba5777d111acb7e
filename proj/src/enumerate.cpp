#include "walks/enumerate.hpp"

#include <istream>
#include <ostream>

#include "walks/primes.hpp"

namespace walks {

StartDistribution a_weighted_start(const StepSet& s) {
  Group g = build_group(s);
  if (g.kind != GroupKind::Finite) throw enumerate_error("a_weighted_start: group not finite");
  int d = g.d();
  StartDistribution start;
  start.scale = 2 * d - 1;
  start.entries.push_back({0, 0, 2 * d - 2});
  for (auto& e : g.elements) {
    if (e.identity() || e.length == d) continue;
    auto [a, b] = e.affine(0, 0);
    if (!region_contains(RegionKind::ThreeQuadrant, a, b))
      throw enumerate_error("a_weighted_start: orbit point outside cone");
    start.entries.push_back({a, b, -e.sign});
  }
  return start;
}

namespace {
int start_radius(const StartDistribution& start) {
  int r = 0;
  for (auto& [i, j, w] : start.entries) r = std::max({r, std::abs(i), std::abs(j)});
  return r;
}
}  // namespace

std::vector<WalkTable<Int>> exact_tables(const StepSet& s, RegionKind r, const StartDistribution& start,
                                         int N, int window) {
  int W = window > 0 ? window : N + 2 + start_radius(start);
  ExactOps ops;
  std::vector<WalkTable<Int>> out;
  out.reserve(N + 1);
  out.push_back(initial_table<Int>(r, s.edge_rule, W, start, ops));
  for (int n = 0; n < N; ++n) {
    WalkTable<Int> next(r, s.edge_rule, W);
    evolve_into(out.back(), next, s, ops);
    out.push_back(std::move(next));
  }
  return out;
}

namespace {
template <class Cell>
Cell endpoint_value(const WalkTable<Cell>& t, Endpoint end) {
  if (end.total) {
    Cell sum(0);
    for (auto& c : t.cells) sum += c;
    return sum;
  }
  if (!region_contains(t.region, end.i, end.j))
    throw endpoint_outside_region("endpoint outside region");
  return t.inside(end.i, end.j) ? t.at(end.i, end.j) : Cell(0);
}
}  // namespace

std::vector<Int> count_sequence(const StepSet& s, RegionKind r, const StartDistribution& start,
                                Endpoint end, int N) {
  if (!end.total && !region_contains(r, end.i, end.j))
    throw endpoint_outside_region("endpoint outside region");
  ExactOps ops;
  int W = N + 2 + start_radius(start);
  WalkTable<Int> cur = initial_table<Int>(r, s.edge_rule, W, start, ops);
  WalkTable<Int> nxt(r, s.edge_rule, W);
  std::vector<Int> out;
  out.push_back(endpoint_value(cur, end));
  for (int n = 0; n < N; ++n) {
    evolve_into(cur, nxt, s, ops);
    std::swap(cur, nxt);
    out.push_back(endpoint_value(cur, end));
  }
  return out;
}

void run_modular(const StepSet& s, RegionKind r, const StartDistribution& start, int N, uint64_t p,
                 const std::function<void(const WalkTable<uint64_t>&)>& visit) {
  if (p >= (1ull << 62) || !is_prime_u64(p)) throw bad_prime("prime must be a prime below 2^62");
  if ((uint64_t)start.scale % p == 0) throw bad_prime("prime divides start scale");
  ModOps ops{p};
  int W = N + 2 + start_radius(start);
  WalkTable<uint64_t> cur = initial_table<uint64_t>(r, s.edge_rule, W, start, ops);
  WalkTable<uint64_t> nxt(r, s.edge_rule, W);
  visit(cur);
  for (int n = 0; n < N; ++n) {
    evolve_into(cur, nxt, s, ops);
    std::swap(cur, nxt);
    visit(cur);
  }
}

std::vector<std::vector<uint64_t>> count_modular(const StepSet& s, RegionKind r,
                                                 const StartDistribution& start, Endpoint end, int N,
                                                 const std::vector<uint64_t>& primes) {
  for (size_t a = 0; a < primes.size(); ++a)
    for (size_t b = a + 1; b < primes.size(); ++b)
      if (primes[a] == primes[b]) throw bad_prime("duplicate prime");
  std::vector<std::vector<uint64_t>> out;
  for (uint64_t p : primes) {
    std::vector<uint64_t> seq;
    run_modular(s, r, start, N, p, [&](const WalkTable<uint64_t>& t) {
      if (end.total) {
        unsigned __int128 sum = 0;
        for (auto c : t.cells) {
          sum += c;
          if (sum >> 120) sum %= p;
        }
        seq.push_back((uint64_t)(sum % p));
      } else {
        seq.push_back(region_contains(t.region, end.i, end.j) && t.inside(end.i, end.j)
                          ? t.at(end.i, end.j)
                          : 0);
      }
    });
    out.push_back(std::move(seq));
  }
  return out;
}

Int crt_reconstruct(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& primes,
                    SignMode mode, const Int& declared_bound) {
  if (residues.size() != primes.size() || primes.empty())
    throw enumerate_error("crt_reconstruct: size mismatch");
  Int m(1), x(0);
  for (size_t k = 0; k < primes.size(); ++k) {
    Int p = Int(std::to_string(primes[k]));
    Int r = Int(std::to_string(residues[k]));
    if (k == 0) {
      x = r;
      m = p;
      continue;
    }
    // x' = x + m * ((r - x) / m mod p)
    Int mi;
    if (!mpz_invert(mi.get_mpz_t(), Int(m % p).get_mpz_t(), p.get_mpz_t()))
      throw bad_prime("crt_reconstruct: non-coprime moduli");
    Int delta = ((r - x % p) % p + p) % p;
    x += m * (delta * mi % p);
    m *= p;
  }
  if (declared_bound > 0) {
    Int need = mode == SignMode::Balanced ? Int(2 * declared_bound + 1) : Int(declared_bound + 1);
    if (m < need) throw insufficient_modulus("crt_reconstruct: product of primes below bound");
  }
  if (mode == SignMode::Balanced && x > m / 2) x -= m;
  return x;
}

int primes_needed(const Int& bound, SignMode mode) {
  Int need = mode == SignMode::Balanced ? Int(2 * bound + 1) : Int(bound + 1);
  Int m(1);
  int k = 0;
  // schedule primes all exceed 2^61 (they sit just below 2^62)
  Int p = Int(1) << 61;
  while (m < need) {
    m *= p;
    ++k;
  }
  return std::max(k, 1);
}

SQ slice_point(const std::vector<WalkTable<Int>>& tables, long scale, int i, int j) {
  SQ s((int)tables.size() - 1);
  for (size_t n = 0; n < tables.size(); ++n) {
    if (!region_contains(tables[n].region, i, j))
      throw endpoint_outside_region("slice_point: endpoint outside region");
    Rat v(tables[n].inside(i, j) ? tables[n].at(i, j) : Int(0));
    s.c[n] = v / scale;
  }
  return s;
}

SQ slice_total(const std::vector<WalkTable<Int>>& tables, long scale) {
  SQ s((int)tables.size() - 1);
  for (size_t n = 0; n < tables.size(); ++n) {
    Int sum(0);
    for (auto& c : tables[n].cells) sum += c;
    s.c[n] = Rat(sum) / scale;
  }
  return s;
}

SQ slice_eval(const std::vector<WalkTable<Int>>& tables, long scale, const Rat& x0, const Rat& y0) {
  SQ s((int)tables.size() - 1);
  Rat xi = inv(x0), yi = inv(y0);
  for (size_t n = 0; n < tables.size(); ++n) {
    const auto& t = tables[n];
    Rat sum(0);
    int box = std::min(t.W, t.radius);
    for (int i = -box; i <= box; ++i) {
      Rat xpow(1);
      Rat xs = i >= 0 ? x0 : xi;
      for (int k = 0; k < std::abs(i); ++k) xpow *= xs;
      Rat row(0), ypow(1);
      for (int j = 0; j <= box; ++j) {
        if (sgn(t.at(i, j)) != 0) row += Rat(t.at(i, j)) * ypow;
        ypow *= y0;
      }
      ypow = yi;
      for (int j = -1; j >= -box; --j) {
        if (sgn(t.at(i, j)) != 0) row += Rat(t.at(i, j)) * ypow;
        ypow *= yi;
      }
      sum += row * xpow;
    }
    s.c[n] = sum / scale;
  }
  return s;
}

SLX slice_axis_neg_x(const std::vector<WalkTable<Int>>& tables, long scale) {
  SLX s((int)tables.size() - 1);
  for (size_t n = 0; n < tables.size(); ++n) {
    const auto& t = tables[n];
    for (int i = -std::min(t.W, t.radius); i < 0; ++i)
      if (sgn(t.at(i, 0)) != 0) s.c[n].add_term(Rat(t.at(i, 0)) / scale, i);
  }
  return s;
}

SLX slice_axis_neg_y(const std::vector<WalkTable<Int>>& tables, long scale) {
  SLX s((int)tables.size() - 1);
  for (size_t n = 0; n < tables.size(); ++n) {
    const auto& t = tables[n];
    for (int j = -std::min(t.W, t.radius); j < 0; ++j)
      if (sgn(t.at(0, j)) != 0) s.c[n].add_term(Rat(t.at(0, j)) / scale, j);
  }
  return s;
}

SeriesL2 slice_part(const std::vector<WalkTable<Int>>& tables, long scale,
                    const std::function<bool(int, int)>& keep) {
  SeriesL2 s;
  s.order = (int)tables.size() - 1;
  s.c.resize(tables.size());
  for (size_t n = 0; n < tables.size(); ++n) {
    const auto& t = tables[n];
    int box = std::min(t.W, t.radius);
    for (int i = -box; i <= box; ++i)
      for (int j = -box; j <= box; ++j)
        if (sgn(t.at(i, j)) != 0 && keep(i, j)) s.c[n].add_term(Rat(t.at(i, j)) / scale, i, j);
  }
  return s;
}

namespace {
constexpr uint64_t kCheckpointMagic = 0x57414c4b54424c31ull;  // "WALKTBL1"

void put_u64(std::ostream& out, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  out.write((const char*)b, 8);
}
uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read((char*)b, 8);
  if (!in) throw enumerate_error("checkpoint: truncated");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= (uint64_t)b[i] << (8 * i);
  return v;
}
}  // namespace

void write_checkpoint(std::ostream& out, const WalkTable<uint64_t>& t, uint64_t prime) {
  put_u64(out, kCheckpointMagic);
  put_u64(out, (uint64_t)t.n);
  put_u64(out, (uint64_t)t.W);
  put_u64(out, prime);
  put_u64(out, (uint64_t)t.region);
  put_u64(out, (uint64_t)t.edge_rule);
  for (auto c : t.cells) put_u64(out, c);
}

WalkTable<uint64_t> read_checkpoint(std::istream& in, uint64_t& prime) {
  if (get_u64(in) != kCheckpointMagic) throw enumerate_error("checkpoint: bad magic");
  uint64_t n = get_u64(in), W = get_u64(in);
  prime = get_u64(in);
  RegionKind r = (RegionKind)get_u64(in);
  EdgeRule e = (EdgeRule)get_u64(in);
  WalkTable<uint64_t> t(r, e, (int)W);
  t.n = (int)n;
  t.radius = (int)W - 1;  // conservative: format does not store the support
  for (auto& c : t.cells) c = get_u64(in);
  return t;
}

}  // namespace walks
