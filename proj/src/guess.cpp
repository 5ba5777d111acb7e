#include "walks/guess.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <utility>

namespace walks {

namespace {

// ---- incremental prefix-minimal nullspace ----------------------------------
// Columns are fed one at a time.  Pivot columns are kept forward-reduced
// (echelon, normalized to 1 at their pivot row) together with their expansion
// over the original columns, so that the first dependent column immediately
// yields a nullspace vector supported on the prefix fed so far.
template <class E>
struct Eliminator {
  int rows;
  std::vector<std::vector<E>> piv;
  std::vector<int> piv_row;
  std::vector<std::vector<E>> combo;  // piv[k] = sum_j combo[k][j] * original_j

  explicit Eliminator(int r) : rows(r) {}

  // index = original index of this column.  Returns the nullspace vector
  // (coefficient 1 at `index`) when dependent, nullopt when it became a pivot.
  std::optional<std::vector<E>> feed(std::vector<E> col, int index) {
    std::vector<E> lam(piv.size(), E(0));
    for (size_t k = 0; k < piv.size(); ++k) {
      E l = col[piv_row[k]];
      if (is_zero(l)) continue;
      lam[k] = l;
      const std::vector<E>& pc = piv[k];
      for (int r = 0; r < rows; ++r) col[r] -= l * pc[r];
    }
    int lead = -1;
    for (int r = 0; r < rows; ++r)
      if (!is_zero(col[r])) {
        lead = r;
        break;
      }
    if (lead < 0) {
      std::vector<E> v(index + 1, E(0));
      v[index] = E(1);
      for (size_t k = 0; k < piv.size(); ++k) {
        if (is_zero(lam[k])) continue;
        const std::vector<E>& ck = combo[k];
        for (size_t j = 0; j < ck.size(); ++j)
          if (!is_zero(ck[j])) v[j] -= lam[k] * ck[j];
      }
      return v;
    }
    E s = inv(col[lead]);
    for (int r = lead; r < rows; ++r) col[r] = col[r] * s;
    std::vector<E> cb(index + 1, E(0));
    cb[index] = s;
    for (size_t k = 0; k < piv.size(); ++k) {
      if (is_zero(lam[k])) continue;
      E m = s * lam[k];
      const std::vector<E>& ck = combo[k];
      for (size_t j = 0; j < ck.size(); ++j)
        if (!is_zero(ck[j])) cb[j] -= m * ck[j];
    }
    piv.push_back(std::move(col));
    piv_row.push_back(lead);
    combo.push_back(std::move(cb));
    return std::nullopt;
  }
};

template <class E>
struct CoreResult {
  std::vector<std::pair<int, int>> support;  // (a, b), sorted by (b, a)
  std::vector<E> coeffs;                     // lex-largest term has coefficient 1
};

// Scans columns t^a F^b in (b, a) order; returns the first dependency that
// also annihilates the margin rows.  F here is the base series of the ansatz
// (the sequence itself, or its square for the even-power ansatz).
template <class E>
std::optional<CoreResult<E>> guess_core(const std::vector<E>& base, const E& one, int dF,
                                        int dt, int use, int margin) {
  int L = use + margin;
  std::vector<std::vector<E>> pw(dF + 1, std::vector<E>(L, E(0)));
  pw[0][0] = one;  // an attached unit so that pivot inversion works mod p
  for (int b = 1; b <= dF; ++b)
    for (int i = 0; i < L; ++i) {
      if (is_zero(pw[b - 1][i])) continue;
      for (int j = 0; i + j < L; ++j) pw[b][i + j] += pw[b - 1][i] * base[j];
    }

  Eliminator<E> el(use);
  int cols = (dF + 1) * (dt + 1);
  for (int m = 0; m < cols; ++m) {
    int b = m / (dt + 1), a = m % (dt + 1);
    std::vector<E> col(use, E(0));
    for (int r = a; r < use; ++r) col[r] = pw[b][r - a];
    std::optional<std::vector<E>> v = el.feed(std::move(col), m);
    if (!v) continue;
    CoreResult<E> res;
    for (int j = 0; j <= m; ++j)
      if (!is_zero((*v)[j])) {
        res.support.emplace_back(j % (dt + 1), j / (dt + 1));
        res.coeffs.push_back((*v)[j]);
      }
    bool ok = true;
    for (int r = use; r < L && ok; ++r) {
      E s(0);
      for (size_t k = 0; k < res.support.size(); ++k) {
        auto [aa, bb] = res.support[k];
        if (r >= aa) s += res.coeffs[k] * pw[bb][r - aa];
      }
      ok = is_zero(s);
    }
    if (ok) return res;
    // dependent on the fit window only: a fluke; keep scanning without it
  }
  return std::nullopt;
}

uint64_t reduce_mod(const Int& c, uint64_t p) {
  return mpz_fdiv_ui(c.get_mpz_t(), p);
}

struct SpecSizes {
  int dF_internal, use, margin;
};

SpecSizes resolve_sizes(const GuessSpec& spec, long len) {
  if (spec.dF < 1 || spec.dt < 0) throw guess_error("guess: degrees must be positive");
  if (spec.square_ansatz && spec.dF % 2 != 0)
    throw guess_error("guess: even-power ansatz needs an even dF");
  SpecSizes z;
  z.dF_internal = spec.square_ansatz ? spec.dF / 2 : spec.dF;
  long cols = (long)(z.dF_internal + 1) * (spec.dt + 1);
  z.use = spec.use_terms;
  z.margin = spec.margin_terms;
  if (z.use == 0) {
    long m0 = z.margin ? z.margin : 10;
    z.use = (int)std::max(cols, std::min(len * 5 / 6, len - m0));
  }
  if (z.margin == 0) z.margin = (int)(len - z.use);
  if (z.use < cols) throw guess_error("guess: use_terms below the column count");
  if (z.margin < std::max(10, (z.use + 4) / 5))
    throw guess_error("guess: margin_terms below 20% of use_terms (min 10)");
  if ((long)z.use + z.margin > len) throw guess_error("guess: sequence too short");
  return z;
}

void finish_degrees(CandidateEquation& c) {
  c.dF = c.dt = 0;
  for (const GuessTerm& t : c.terms) {
    c.dF = std::max(c.dF, t.b);
    c.dt = std::max(c.dt, t.a);
  }
}

// scale the rational solution to a primitive integer vector; the lex-largest
// coefficient arrives as 1, so it stays positive
std::vector<Int> primitive_ints(const std::vector<Rat>& v) {
  Int den(1);
  for (const Rat& x : v) den = lcm(den, Int(x.get_den()));
  std::vector<Int> w;
  w.reserve(v.size());
  for (const Rat& x : v) {
    Rat y = x * Rat(den);
    w.push_back(Int(y.get_num()));
  }
  Int content(0);
  for (const Int& x : w) content = gcd(content, x);
  for (Int& x : w) x /= content;
  return w;
}

}  // namespace

Int CandidateEquation::coeff(int a, int b) const {
  for (const GuessTerm& t : terms)
    if (t.a == a && t.b == b) return t.c;
  return Int(0);
}

CandidateEquation guess_algebraic(const GuessSpec& spec) {
  bool modp = spec.prime != 0;
  if (modp && spec.residues.empty())
    throw guess_error("guess: prime set but no residues supplied");
  if (!modp && spec.sequence.empty()) throw guess_error("guess: empty sequence");
  if (modp && !spec.sequence.empty())
    throw guess_error("guess: supply exact or mod-p coefficients, not both");

  CandidateEquation c;
  c.prime = spec.prime;
  c.from_square_ansatz = spec.square_ansatz;

  if (modp) {
    SpecSizes z = resolve_sizes(spec, (long)spec.residues.size());
    c.fit_terms = z.use;
    c.margin_terms = z.margin;
    int L = z.use + z.margin;
    std::vector<Mod> base(L);
    for (int i = 0; i < L; ++i) base[i] = Mod(spec.residues[i], spec.prime);
    if (spec.square_ansatz) {
      std::vector<Mod> sq(L, Mod(0, spec.prime));
      for (int i = 0; i < L; ++i)
        for (int j = 0; i + j < L; ++j) sq[i + j] += base[i] * base[j];
      base = std::move(sq);
    }
    auto res = guess_core<Mod>(base, Mod(1, spec.prime), z.dF_internal, spec.dt, z.use,
                               z.margin);
    if (!res) throw no_candidate("guess: no verified relation in the ansatz");
    for (size_t k = 0; k < res->support.size(); ++k) {
      auto [a, b] = res->support[k];
      c.terms.push_back({a, spec.square_ansatz ? 2 * b : b,
                         Int((unsigned long)res->coeffs[k].attach(spec.prime))});
    }
  } else {
    SpecSizes z = resolve_sizes(spec, (long)spec.sequence.size());
    c.fit_terms = z.use;
    c.margin_terms = z.margin;
    int L = z.use + z.margin;
    std::vector<Rat> base(spec.sequence.begin(), spec.sequence.begin() + L);
    if (spec.square_ansatz) {
      std::vector<Rat> sq(L, Rat(0));
      for (int i = 0; i < L; ++i)
        for (int j = 0; i + j < L; ++j) sq[i + j] += base[i] * base[j];
      base = std::move(sq);
    }
    auto res = guess_core<Rat>(base, Rat(1), z.dF_internal, spec.dt, z.use, z.margin);
    if (!res) throw no_candidate("guess: no verified relation in the ansatz");
    std::vector<Int> ints = primitive_ints(res->coeffs);
    for (size_t k = 0; k < res->support.size(); ++k) {
      auto [a, b] = res->support[k];
      c.terms.push_back({a, spec.square_ansatz ? 2 * b : b, ints[k]});
    }
  }
  finish_degrees(c);
  return c;
}

SQ candidate_residual(const CandidateEquation& c, const std::vector<Rat>& seq) {
  if (seq.empty()) throw guess_error("candidate_residual: empty sequence");
  int ord = (int)seq.size() - 1;
  SQ F(ord);
  for (int n = 0; n <= ord; ++n) F.c[n] = seq[n];
  SQ r(ord);
  for (int b = c.dF; b >= 0; --b) {
    SQ tb(ord);
    for (const GuessTerm& t : c.terms)
      if (t.b == b && t.a <= ord) tb.c[t.a] += Rat(t.c);
    r = r * F + tb;
  }
  return r;
}

bool verify_candidate(const CandidateEquation& c, const std::vector<Rat>& seq) {
  return candidate_residual(c, seq).zero_to_order();
}

bool verify_candidate_mod(const CandidateEquation& c, const std::vector<uint64_t>& seq,
                          uint64_t p) {
  if (seq.empty()) throw guess_error("verify_candidate_mod: empty sequence");
  int ord = (int)seq.size() - 1;
  Series<Mod> F(ord);
  for (int n = 0; n <= ord; ++n) F.c[n] = Mod(seq[n], p);
  Series<Mod> r(ord);
  for (int b = c.dF; b >= 0; --b) {
    Series<Mod> tb(ord);
    for (const GuessTerm& t : c.terms)
      if (t.b == b && t.a <= ord) tb.c[t.a] += Mod(reduce_mod(t.c, p), p);
    r = r * F + tb;
  }
  return r.zero_to_order();
}

CandidateEquation reconstruct_rational(const std::vector<CandidateEquation>& per_prime) {
  if (per_prime.empty()) throw guess_error("reconstruct: no candidates");
  const CandidateEquation& first = per_prime.front();
  for (const CandidateEquation& c : per_prime) {
    if (c.prime == 0) throw guess_error("reconstruct: candidate is not mod-p");
    if (c.terms.size() != first.terms.size() || c.from_square_ansatz != first.from_square_ansatz)
      throw guess_error("reconstruct: supports differ");
    for (size_t k = 0; k < c.terms.size(); ++k)
      if (c.terms[k].a != first.terms[k].a || c.terms[k].b != first.terms[k].b)
        throw guess_error("reconstruct: supports differ");
  }
  for (size_t i = 0; i < per_prime.size(); ++i)
    for (size_t j = i + 1; j < per_prime.size(); ++j)
      if (per_prime[i].prime == per_prime[j].prime)
        throw guess_error("reconstruct: primes must be distinct");

  size_t nterms = first.terms.size();
  std::vector<Int> residue(nterms, Int(0));
  Int modulus(1);
  for (const CandidateEquation& c : per_prime) {
    Int p((unsigned long)c.prime);
    if (modulus == 1) {
      for (size_t k = 0; k < nterms; ++k) residue[k] = c.terms[k].c;
    } else {
      Int minv;
      if (!mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t()))
        throw guess_error("reconstruct: moduli not coprime");
      for (size_t k = 0; k < nterms; ++k) {
        Int d = ((c.terms[k].c - residue[k]) * minv) % p;
        if (sgn(d) < 0) d += p;
        residue[k] += modulus * d;
      }
    }
    modulus *= p;
  }

  // rational reconstruction (Wang): num/den with num^2, den^2 <= modulus/2
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(modulus / 2).get_mpz_t());
  std::vector<Rat> vals(nterms);
  for (size_t k = 0; k < nterms; ++k) {
    Int r0 = modulus, r1 = residue[k] % modulus;
    if (sgn(r1) < 0) r1 += modulus;
    Int s0(0), s1(1);
    while (r1 > bound) {
      Int q = r0 / r1;
      Int r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      Int s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
    }
    Int num = r1, den = s1;
    if (sgn(den) < 0) {
      den = -den;
      num = -num;
    }
    if (sgn(den) == 0 || den > bound || gcd(num, den) != 1)
      throw guess_error("reconstruct: rational reconstruction failed");
    Rat q(num, den);
    q.canonicalize();
    vals[k] = q;
  }
  std::vector<Int> ints = primitive_ints(vals);
  // sign convention: lex-largest (b, a) coefficient positive
  if (sgn(ints.back()) < 0)
    for (Int& x : ints) x = -x;

  CandidateEquation out;
  out.prime = 0;
  out.fit_terms = first.fit_terms;
  out.margin_terms = first.margin_terms;
  out.from_square_ansatz = first.from_square_ansatz;
  for (size_t k = 0; k < nterms; ++k)
    out.terms.push_back({first.terms[k].a, first.terms[k].b, ints[k]});
  finish_degrees(out);
  return out;
}

namespace {
template <class TryRung>
CandidateEquation ladder(long len, TryRung&& attempt) {
  for (int dF : {2, 4, 8, 12, 24})
    for (int dt : {dF, 3 * dF / 2, 2 * dF}) {
      long cols = (long)(dF + 1) * (dt + 1);
      int use = (int)cols;
      int margin = std::max(10, (use + 4) / 5);
      if (cols + margin > len) continue;
      try {
        return attempt(dF, dt, use, margin);
      } catch (const no_candidate&) {
      }
    }
  throw no_candidate("guess: degree ladder exhausted");
}
}  // namespace

CandidateEquation guess_with_ladder(const std::vector<Rat>& seq) {
  return ladder((long)seq.size(), [&](int dF, int dt, int use, int margin) {
    GuessSpec s;
    s.sequence = seq;
    s.dF = dF;
    s.dt = dt;
    s.use_terms = use;
    s.margin_terms = margin;
    return guess_algebraic(s);
  });
}

CandidateEquation guess_with_ladder_mod(const std::vector<uint64_t>& seq, uint64_t p) {
  return ladder((long)seq.size(), [&](int dF, int dt, int use, int margin) {
    GuessSpec s;
    s.residues = seq;
    s.prime = p;
    s.dF = dF;
    s.dt = dt;
    s.use_terms = use;
    s.margin_terms = margin;
    return guess_algebraic(s);
  });
}

std::vector<uint64_t> residues_mod(const std::vector<Rat>& seq, uint64_t p) {
  std::vector<uint64_t> r;
  r.reserve(seq.size());
  for (const Rat& x : seq) {
    uint64_t num = mpz_fdiv_ui(x.get_num().get_mpz_t(), p);
    uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), p);
    r.push_back((Mod(num, p) * inv(Mod(den, p))).v);
  }
  return r;
}

std::string to_json(const CandidateEquation& c) {
  nlohmann::json j;
  j["dF"] = c.dF;
  j["dt"] = c.dt;
  j["prime"] = std::to_string(c.prime);
  j["fit_terms"] = c.fit_terms;
  j["margin_terms"] = c.margin_terms;
  j["square_ansatz"] = c.from_square_ansatz;
  nlohmann::json terms = nlohmann::json::array();
  for (const GuessTerm& t : c.terms)
    terms.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c.get_str()}});
  j["terms"] = std::move(terms);
  return j.dump();
}

}  // namespace walks
