#pragma once
// Fits algebraic equations P(t, F) = 0 to coefficient sequences by exact
// nullspace computation over Q or over a prime field, with a verification
// margin beyond the fitting window.  Candidates found modulo several primes
// can be combined by CRT and rational reconstruction into an exact equation.

#include <cstdint>
#include <string>
#include <vector>

#include "walks/series.hpp"

namespace walks {

struct guess_error : ring_error {
  using ring_error::ring_error;
};
// empty nullspace, or the fitted relation fails on the margin terms
struct no_candidate : guess_error {
  using guess_error::guess_error;
};

// One monomial c * t^a * F^b of the candidate polynomial.
struct GuessTerm {
  int a = 0, b = 0;
  Int c;
};

struct CandidateEquation {
  int dF = 0, dt = 0;           // max degrees over the actual support
  uint64_t prime = 0;           // 0: exact rational coefficients
  std::vector<GuessTerm> terms; // sorted by (b, a); see normalization below
  int fit_terms = 0, margin_terms = 0;
  bool from_square_ansatz = false;  // fitted as a polynomial in F^2

  // Normalization: mod-p candidates are monic at the lex-largest (b, a)
  // term; rational candidates are primitive integer vectors with positive
  // coefficient at the lex-largest (b, a) term.
  Int coeff(int a, int b) const;
};

// P(t, F) evaluated on the truncated series F built from seq.
SQ candidate_residual(const CandidateEquation& c, const std::vector<Rat>& seq);

struct GuessSpec {
  // coefficients of F from t^0: exactly one of the two representations
  std::vector<Rat> sequence;       // exact path
  std::vector<uint64_t> residues;  // mod-p path ...
  uint64_t prime = 0;              // ... selected by a nonzero prime
  int dF = 2, dt = 2;
  int use_terms = 0;     // 0: derive from the available terms (see below)
  int margin_terms = 0;  // 0: max(10, ceil(0.2 * use_terms))
  bool square_ansatz = false;  // restrict to even powers of F
};

// Columns are truncations of t^a F^b (a <= dt, b <= dF), scanned in (b, a)
// lexicographic order; the first column that is linearly dependent on its
// predecessors yields the candidate of lowest (dF, dt) degree, which is then
// required to annihilate the margin terms.  Throws no_candidate.
// When use_terms is 0 it is set to floor(len / 1.2) (at least (dF+1)(dt+1))
// and the margin to the rest, so that margin ~ 20% of the fit window.
CandidateEquation guess_algebraic(const GuessSpec& spec);

// True iff P(t, F) = 0 holds on all supplied terms (which should extend the
// fitting data).  The mod-p form reduces the candidate's coefficients mod p.
bool verify_candidate(const CandidateEquation& c, const std::vector<Rat>& seq);
bool verify_candidate_mod(const CandidateEquation& c, const std::vector<uint64_t>& seq,
                          uint64_t p);

// Combines candidates for the same equation guessed modulo distinct primes:
// CRT on each coefficient, rational reconstruction, clear denominators,
// normalize primitive.  All inputs must share the same support.
CandidateEquation reconstruct_rational(const std::vector<CandidateEquation>& per_prime);

// Degree-ladder search when (dF, dt) are unknown: dF in {2, 4, 8, 12, 24},
// dt in {dF, 3dF/2, 2dF}, first verified candidate wins; rungs that need
// more terms than supplied are skipped.
CandidateEquation guess_with_ladder(const std::vector<Rat>& seq);
CandidateEquation guess_with_ladder_mod(const std::vector<uint64_t>& seq, uint64_t p);

// residues of exact rationals mod p (throws if a denominator vanishes mod p)
std::vector<uint64_t> residues_mod(const std::vector<Rat>& seq, uint64_t p);

std::string to_json(const CandidateEquation& c);

}  // namespace walks
