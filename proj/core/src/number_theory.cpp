#include "resdyn/number_theory.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "resdyn/errors.hpp"

namespace resdyn {
namespace {

constexpr std::uint32_t kTrialDivisionBound = 1'000'000;
constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 31;
constexpr int kRhoAttempts = 24;
constexpr std::uint64_t kRhoIterations = std::uint64_t{1} << 22;

std::vector<std::uint32_t> sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = sieve(kTrialDivisionBound);
  return primes;
}

// Brent's variant; returns a nontrivial factor or 0 on failure.
Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  Integer c = seed % 1000 + 1;
  Integer y = (seed * 7919UL + 3) % n, x, ys, q = 1, g = 1, tmp;
  const std::uint64_t m = 128;
  std::uint64_t r = 1;
  std::uint64_t total = 0;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1 && total < kRhoIterations) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        tmp = x - y;
        q = q * abs(tmp);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
      total += lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      tmp = x - ys;
      tmp = abs(tmp);
      mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == 1 || g == n) return Integer(0);
  return g;
}

void factor_recursive(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  for (int attempt = 0; attempt < kRhoAttempts; ++attempt) {
    const Integer d = pollard_brent(n, static_cast<unsigned long>(attempt) * 104729UL + 17);
    if (d != 0) {
      factor_recursive(d, out);
      factor_recursive(Integer(n / d), out);
      return;
    }
  }
  throw UnfactoredResidue(n.get_str(), "could not factor composite cofactor " + n.get_str());
}

}  // namespace

long Valuation::value() const {
  if (infinite_) throw InvalidArgument("valuation of zero is infinite");
  return value_;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

long integer_valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw InvalidArgument("integer valuation of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Valuation valuation(const Rational& x, const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("valuation at non-prime " + p.get_str());
  if (x.is_zero()) return Valuation::infinite();
  return Valuation::finite(integer_valuation(x.numerator(), p) -
                           integer_valuation(x.denominator(), p));
}

std::vector<Integer> primes_up_to(const Rational& bound) {
  if (bound < Rational(1)) throw InvalidArgument("prime bound must be at least 1, got " + bound.to_string());
  Integer floor_bound;
  mpz_fdiv_q(floor_bound.get_mpz_t(), bound.numerator().get_mpz_t(),
             bound.denominator().get_mpz_t());
  std::vector<Integer> out;
  if (floor_bound < 2) return out;
  if (floor_bound > Integer(static_cast<unsigned long>(kSieveLimit))) {
    throw InvalidArgument("prime bound " + floor_bound.get_str() + " exceeds sieve limit");
  }
  for (std::uint32_t p : sieve(floor_bound.get_ui())) out.emplace_back(static_cast<unsigned long>(p));
  return out;
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  if (n == 0) throw InvalidArgument("cannot factor zero");
  Integer rest = abs(n);
  std::map<Integer, int> found;
  for (std::uint32_t p : trial_primes()) {
    if (rest == 1) break;
    const Integer pz(static_cast<unsigned long>(p));
    if (pz * pz > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      found[pz] = static_cast<int>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t()));
    }
  }
  factor_recursive(rest, found);
  return {found.begin(), found.end()};
}

}  // namespace resdyn
