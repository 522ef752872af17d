#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nds {

using Complex = std::complex<double>;

/// Cyclic factor of (Z/qZ)^* together with the prime power it lives on.
struct UnitGenerator {
  std::int64_t residue;        // generator lifted to Z/qZ by CRT
  std::int64_t order;
  std::int64_t prime_power;    // p^e component the generator belongs to
};

/// Canonical decomposition of the unit group modulo q. Odd prime powers use
/// their smallest primitive root; 4 uses -1; 2^k (k >= 3) uses -1 and 5.
/// Components are ordered by ascending prime.
class UnitGroup {
 public:
  explicit UnitGroup(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  std::span<const UnitGenerator> generators() const { return generators_; }
  std::int64_t size() const { return size_; }
  /// lcm of the generator orders.
  std::int64_t exponent() const { return exponent_; }

  /// Exponent of generator i in the decomposition of n; n must be a unit.
  std::int64_t log(std::size_t i, std::int64_t n) const;

 private:
  std::int64_t modulus_;
  std::int64_t size_ = 1;
  std::int64_t exponent_ = 1;
  std::vector<UnitGenerator> generators_;
  // logs_[i][r] = exponent of generator i for residue r mod prime_power.
  std::vector<std::vector<std::int32_t>> logs_;
};

struct CharacterLabel {
  std::int64_t q;
  std::int64_t index;
  friend bool operator==(const CharacterLabel&, const CharacterLabel&) = default;
};

/// A Dirichlet character modulo q stored as a value table. The character is
/// determined by an exponent vector on the canonical generators of UnitGroup;
/// its label index is the mixed-radix encoding of that vector with the first
/// generator most significant, so index 0 is the principal character.
class DirichletCharacter {
 public:
  static DirichletCharacter from_index(std::int64_t q, std::int64_t index);
  static DirichletCharacter from_exponents(const UnitGroup& group,
                                           std::span<const std::int64_t> exponents);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t index() const { return index_; }
  CharacterLabel label() const { return {modulus_, index_}; }

  Complex operator()(std::int64_t n) const { return values_[reduce(n)]; }

  /// chi(n) = e(phase(n) / phase_denominator()), or -1 when gcd(n, q) > 1.
  std::int64_t phase(std::int64_t n) const { return phases_[reduce(n)]; }
  std::int64_t phase_denominator() const { return denominator_; }

  /// chi(n) as an integer in {-1, 0, 1}; throws std::logic_error unless real.
  int real_value(std::int64_t n) const;

  std::span<const std::int64_t> exponents() const { return exponents_; }
  std::span<const Complex> values() const { return values_; }

  bool is_principal() const { return index_ == 0; }
  bool is_real() const;
  /// chi(-1), i.e. chi(q - 1).
  int parity() const;
  /// Multiplicative order of chi.
  std::int64_t order() const;

  DirichletCharacter conj() const;

 private:
  DirichletCharacter() = default;

  std::size_t reduce(std::int64_t n) const {
    const std::int64_t r = n % modulus_;
    return static_cast<std::size_t>(r < 0 ? r + modulus_ : r);
  }

  std::int64_t modulus_ = 1;
  std::int64_t index_ = 0;
  std::int64_t denominator_ = 1;
  std::vector<std::int64_t> exponents_;
  std::vector<std::int64_t> orders_;
  std::vector<std::int64_t> phases_;
  std::vector<Complex> values_;
};

/// All phi(q) characters modulo q in label order.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);

/// The quadratic character modulo an odd prime p.
DirichletCharacter legendre_character(std::int64_t p);

/// True iff the conductor of chi equals its modulus.
bool is_primitive(const DirichletCharacter& chi);

/// sum_{n mod q} chi(n) e(n/q).
Complex gauss_sum(const DirichletCharacter& chi);

/// L(2, chi) for nonprincipal chi, truncated so the tail is at most 1e-9.
/// Throws AdmissibilityError(Violation::principal) for the principal character.
Complex l2_value(const DirichletCharacter& chi);

/// L(2, chi_0) for the principal character mod q: zeta(2) prod_{p | q} (1 - p^-2).
double l2_principal(std::int64_t q);

enum class ProductKind { plain, conjugate_second };

/// Pointwise product chi1 * chi2 (or chi1 * conj(chi2)) modulo lcm(q1, q2).
DirichletCharacter character_product(const DirichletCharacter& chi1,
                                     const DirichletCharacter& chi2,
                                     ProductKind kind = ProductKind::plain);

/// Resolves a command-line character handle: "legendre" (q must be an odd
/// prime) or "idx:<k>".
DirichletCharacter parse_character(std::int64_t q, const std::string& handle);

}  // namespace nds
