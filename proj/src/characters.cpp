#include "nds/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nds/arith.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

std::int64_t smallest_primitive_root(std::int64_t p, std::int64_t pe) {
  const std::int64_t order = pe / p * (p - 1);
  const auto factors = factorize(order);
  for (std::int64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool generates = true;
    for (const auto& [r, e] : factors) {
      if (pow_mod(g, order / r, pe) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  return 1;  // pe == 2 has trivial unit group; unreachable otherwise
}

// Lift x mod pe to Z/qZ with residue 1 on the complementary factor.
std::int64_t crt_lift(std::int64_t x, std::int64_t pe, std::int64_t q) {
  const std::int64_t rest = q / pe;
  if (rest == 1) return mod(x, q);
  // n = x + pe * t with n = 1 mod rest
  const std::int64_t t = mod((1 - x) % rest * inverse_mod(pe, rest), rest);
  return mod(x + pe * t, q);
}

Complex unit_root(std::int64_t k, std::int64_t n) {
  // Exact values on the real and imaginary axes keep real characters exact.
  k = mod(k, n);
  if (4 * k % n == 0) {
    switch (4 * k / n) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n));
}

}  // namespace

UnitGroup::UnitGroup(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw AdmissibilityError(Violation::domain, "modulus must be >= 1");
  for (const auto& [p, e] : factorize(modulus)) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      // -1 generates a factor of order 2; for e >= 3, 5 generates the rest.
      const std::int64_t order5 = e >= 3 ? pe / 4 : 1;
      std::vector<std::int32_t> log_minus(pe, -1), log_five(pe, -1);
      std::int64_t five_pow = 1;
      for (std::int64_t t = 0; t < order5; ++t) {
        log_minus[five_pow] = 0;
        log_five[five_pow] = static_cast<std::int32_t>(t);
        log_minus[pe - five_pow] = 1;
        log_five[pe - five_pow] = static_cast<std::int32_t>(t);
        five_pow = five_pow * 5 % pe;
      }
      generators_.push_back({crt_lift(pe - 1, pe, modulus), 2, pe});
      logs_.push_back(std::move(log_minus));
      if (e >= 3) {
        generators_.push_back({crt_lift(5, pe, modulus), order5, pe});
        logs_.push_back(std::move(log_five));
      }
    } else {
      const std::int64_t g = smallest_primitive_root(p, pe);
      const std::int64_t order = pe / p * (p - 1);
      std::vector<std::int32_t> logs(pe, -1);
      std::int64_t x = 1;
      for (std::int64_t k = 0; k < order; ++k) {
        logs[x] = static_cast<std::int32_t>(k);
        x = x * g % pe;
      }
      generators_.push_back({crt_lift(g, pe, modulus), order, pe});
      logs_.push_back(std::move(logs));
    }
  }
  for (const auto& gen : generators_) {
    size_ *= gen.order;
    exponent_ = std::lcm(exponent_, gen.order);
  }
}

std::int64_t UnitGroup::log(std::size_t i, std::int64_t n) const {
  const auto& gen = generators_.at(i);
  const std::int32_t v = logs_[i][mod(n, gen.prime_power)];
  if (v < 0) throw std::invalid_argument("UnitGroup::log: argument is not a unit");
  return v;
}

DirichletCharacter DirichletCharacter::from_exponents(
    const UnitGroup& group, std::span<const std::int64_t> exponents) {
  const auto gens = group.generators();
  if (exponents.size() != gens.size())
    throw std::invalid_argument("exponent vector length does not match the unit group");

  DirichletCharacter chi;
  chi.modulus_ = group.modulus();
  chi.denominator_ = group.exponent();
  std::int64_t index = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::int64_t e = mod(exponents[i], gens[i].order);
    chi.exponents_.push_back(e);
    chi.orders_.push_back(gens[i].order);
    index = index * gens[i].order + e;
  }
  chi.index_ = index;

  const std::int64_t q = chi.modulus_;
  chi.phases_.assign(q, -1);
  chi.values_.assign(q, Complex{0.0, 0.0});
  for (std::int64_t n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::int64_t scale = chi.denominator_ / gens[i].order;
      phase = (phase + chi.exponents_[i] * group.log(i, n) % gens[i].order * scale) %
              chi.denominator_;
    }
    chi.phases_[n] = phase;
    chi.values_[n] = unit_root(phase, chi.denominator_);
  }
  return chi;
}

DirichletCharacter DirichletCharacter::from_index(std::int64_t q, std::int64_t index) {
  const UnitGroup group(q);
  if (index < 0 || index >= group.size())
    throw AdmissibilityError(Violation::domain,
                             "character index " + std::to_string(index) +
                                 " out of range for modulus " + std::to_string(q));
  const auto gens = group.generators();
  std::vector<std::int64_t> exps(gens.size());
  for (std::size_t i = gens.size(); i-- > 0;) {
    exps[i] = index % gens[i].order;
    index /= gens[i].order;
  }
  return from_exponents(group, exps);
}

int DirichletCharacter::real_value(std::int64_t n) const {
  const std::int64_t p = phase(n);
  if (p < 0) return 0;
  if (p == 0) return 1;
  if (2 * p == denominator_) return -1;
  throw std::logic_error("real_value: character is not real-valued");
}

bool DirichletCharacter::is_real() const {
  for (const std::int64_t p : phases_)
    if (p > 0 && 2 * p != denominator_) return false;
  return true;
}

int DirichletCharacter::parity() const {
  if (modulus_ <= 2) return 1;
  return phase(modulus_ - 1) == 0 ? 1 : -1;
}

std::int64_t DirichletCharacter::order() const {
  std::int64_t result = 1;
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    result = std::lcm(result, orders_[i] / std::gcd(orders_[i], exponents_[i]));
  return result;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::int64_t> exps(exponents_.size());
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = mod(-exponents_[i], orders_[i]);
  return from_exponents(UnitGroup(modulus_), exps);
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
  const UnitGroup group(q);
  std::vector<DirichletCharacter> out;
  out.reserve(group.size());
  for (std::int64_t k = 0; k < group.size(); ++k)
    out.push_back(DirichletCharacter::from_index(q, k));
  return out;
}

DirichletCharacter legendre_character(std::int64_t p) {
  if (p < 3 || !is_prime(p))
    throw AdmissibilityError(Violation::domain,
                             "legendre_character: " + std::to_string(p) + " is not an odd prime");
  // Cyclic group of order p - 1; the quadratic character sends g to -1.
  return DirichletCharacter::from_index(p, (p - 1) / 2);
}

bool is_primitive(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  for (const std::int64_t d : divisors(q)) {
    if (d == q) continue;
    bool trivial_on_kernel = true;
    for (std::int64_t n = 1; n < q && trivial_on_kernel; n += d) {
      const std::int64_t p = chi.phase(n);
      if (p > 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) return false;
  }
  return true;
}

Complex gauss_sum(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  Complex sum{0.0, 0.0};
  for (std::int64_t n = 0; n < q; ++n) {
    if (chi.phase(n) < 0) continue;
    sum += chi(n) * unit_root(n, q);
  }
  return sum;
}

Complex l2_value(const DirichletCharacter& chi) {
  if (chi.is_principal())
    throw AdmissibilityError(Violation::principal,
                             "l2_value: principal character; use l2_principal");
  constexpr double tail = 1e-9;
  const double q = static_cast<double>(chi.modulus());
  const auto terms = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * q / tail)));
  Complex sum{0.0, 0.0};
  for (std::int64_t n = terms; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    sum += chi(n) / (nn * nn);
  }
  return sum;
}

double l2_principal(std::int64_t q) {
  double value = std::numbers::pi * std::numbers::pi / 6.0;
  for (const auto& [p, e] : factorize(q)) {
    const double pp = static_cast<double>(p);
    value *= 1.0 - 1.0 / (pp * pp);
  }
  return value;
}

DirichletCharacter character_product(const DirichletCharacter& chi1,
                                     const DirichletCharacter& chi2, ProductKind kind) {
  const std::int64_t q = std::lcm(chi1.modulus(), chi2.modulus());
  const std::int64_t den = std::lcm(chi1.phase_denominator(), chi2.phase_denominator());
  const std::int64_t s1 = den / chi1.phase_denominator();
  const std::int64_t s2 = den / chi2.phase_denominator();
  const std::int64_t sign = kind == ProductKind::plain ? 1 : -1;

  // The product is determined by its values on the generators mod q.
  const UnitGroup group(q);
  std::vector<std::int64_t> exps;
  for (const auto& gen : group.generators()) {
    const std::int64_t phase =
        mod(chi1.phase(gen.residue) * s1 + sign * chi2.phase(gen.residue) * s2, den);
    exps.push_back(phase * gen.order / den);
  }
  return DirichletCharacter::from_exponents(group, exps);
}

DirichletCharacter parse_character(std::int64_t q, const std::string& handle) {
  if (handle == "legendre") return legendre_character(q);
  if (handle.rfind("idx:", 0) == 0) {
    std::size_t used = 0;
    std::int64_t index = 0;
    try {
      index = std::stoll(handle.substr(4), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != handle.size() - 4)
      throw AdmissibilityError(Violation::domain, "bad character handle '" + handle + "'");
    return DirichletCharacter::from_index(q, index);
  }
  throw AdmissibilityError(Violation::domain, "bad character handle '" + handle +
                                                  "' (expected 'legendre' or 'idx:<k>')");
}

}  // namespace nds
