#pragma once

#include <cstdint>
#include <vector>

namespace nds {

/// A finite continued fraction [a0; a1, ..., an] together with the reduced
/// rational numerator/denominator it represents. Expansions produced by
/// expand() are canonical (an >= 2 when n >= 1); to_parity_form() may return
/// the other expansion of the same rational, which ends in 1.
struct ContinuedFraction {
  std::int64_t a0 = 0;
  std::vector<std::int64_t> partials;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  std::size_t length() const { return partials.size(); }
  bool is_canonical() const { return partials.empty() || partials.back() >= 2; }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

struct Fraction {
  std::int64_t numerator;
  std::int64_t denominator;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct IntMatrix2 {
  std::int64_t a, b, c, d;

  std::int64_t det() const { return a * d - b * c; }
  IntMatrix2 operator*(const IntMatrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/// Canonical expansion of a/c by the Euclidean algorithm (a0 = floor(a/c)).
/// Throws AdmissibilityError if c < 1 or gcd(a, c) != 1.
ContinuedFraction expand(std::int64_t a, std::int64_t c);

/// Value of the terms, recomputed from the partial quotients alone.
Fraction evaluate(const ContinuedFraction& cf);

/// The equivalent expansion whose number of partials n has the requested
/// parity, via [.., ak, 1] = [.., ak + 1].
ContinuedFraction to_parity_form(const ContinuedFraction& cf, bool want_odd_n);

/// D(a, c): largest partial quotient a1..an of the canonical expansion of
/// (a mod c)/c. Requires c >= 2 and gcd(a, c) = 1.
std::int64_t max_partial_quotient(std::int64_t a, std::int64_t c);

/// Product (a0 1; 1 0)(a1 1; 1 0)...(an 1; 1 0) for any term count.
IntMatrix2 continuant_matrix(const ContinuedFraction& cf);

/// continuant_matrix() restricted to odd n, where it lies in SL2(Z) with
/// first column (numerator, denominator). Throws for even n.
IntMatrix2 matrix_factorization(const ContinuedFraction& cf);

/// For 0 < a < c coprime: takes the odd-n expansion [0; a1, ..., an] of a/c
/// and returns [0; an, ..., a1], which equals d/c with a d = 1 (mod c),
/// 0 < d < c. The identity is re-checked against a direct expansion of d/c.
ContinuedFraction reverse_denominator_expansion(std::int64_t a, std::int64_t c);

/// D(a mod c, c) - D(d, c) with d the inverse of a modulo c; always in {-1, 0, 1}.
int digit_symmetry_delta(std::int64_t a, std::int64_t c);

struct HensleyCounts {
  std::int64_t phi = 0;    // D(a, c) <= alpha log C
  std::int64_t g = 0;      // D(a, c) >  alpha log C
  std::int64_t total = 0;  // all pairs 1 < a < c <= C with gcd(a, c) = 1
};

/// One pass over all coprime pairs 1 < a < c <= C, split by c across workers.
HensleyCounts hensley_counts(double alpha, std::int64_t C, unsigned workers = 1);

std::int64_t phi_count(double alpha, std::int64_t C, unsigned workers = 1);
std::int64_t g_count(double alpha, std::int64_t C, unsigned workers = 1);

/// #{(a, c): 1 < a < c <= C, gcd(a, c) = 1} = sum_{2 <= c <= C} (phi(c) - 1).
std::int64_t coprime_pair_total(std::int64_t C);

/// Main term (3 / pi^2) C^2 exp(-12 / (alpha pi^2)) of Hensley's asymptotic.
double hensley_prediction(double alpha, std::int64_t C);

}  // namespace nds
