#include "resdyn/determinant.hpp"

#include <cstdint>
#include <mutex>
#include <vector>

#include "resdyn/errors.hpp"

namespace resdyn {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic for all 64-bit inputs with these bases.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes below 2^62, descending, generated on demand.
class ModulusPool {
 public:
  u64 at(std::size_t i) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (primes_.size() <= i) {
      u64 candidate = primes_.empty() ? (u64{1} << 62U) - 1 : primes_.back() - 2;
      while (!is_prime_u64(candidate)) candidate -= 2;
      primes_.push_back(candidate);
    }
    return primes_[i];
  }

 private:
  std::mutex mutex_;
  std::vector<u64> primes_;
};

ModulusPool& modulus_pool() {
  static ModulusPool pool;
  return pool;
}

u64 determinant_mod(const DenseMatrix<Integer>& m, u64 p) {
  const std::size_t n = m.rows();
  std::vector<u64> a(n * n);
  Integer tmp;
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpz_fdiv_r(tmp.get_mpz_t(), m(i, j).get_mpz_t(), pz.get_mpz_t());
      a[i * n + j] = tmp.get_ui();
    }
  }
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = det == 0 ? 0 : p - det;
    }
    const u64 pv = a[col * n + col];
    det = mul_mod(det, pv, p);
    const u64 inv = pow_mod(pv, p - 2, p);
    for (std::size_t r = col + 1; r < n; ++r) {
      const u64 factor = mul_mod(a[r * n + col], inv, p);
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) {
        const u64 sub = mul_mod(factor, a[col * n + j], p);
        u64& x = a[r * n + j];
        x = x >= sub ? x - sub : x + (p - sub);
      }
    }
  }
  return det;
}

}  // namespace

std::string_view to_string(DeterminantBackend backend) {
  return backend == DeterminantBackend::bareiss ? "bareiss" : "modular_crt";
}

DeterminantBackend parse_determinant_backend(std::string_view name) {
  if (name == "bareiss") return DeterminantBackend::bareiss;
  if (name == "modular_crt") return DeterminantBackend::modular_crt;
  throw InvalidArgument("unknown determinant backend '" + std::string(name) + "'");
}

Integer bareiss_determinant(DenseMatrix<Integer> m) {
  if (!m.is_square()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return Integer(0);
      m.swap_rows(k, pivot);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = m(k, k);
  }
  return sign > 0 ? Integer(m(n - 1, n - 1)) : Integer(-m(n - 1, n - 1));
}

Integer hadamard_bound_squared(const DenseMatrix<Integer>& m) {
  Integer bound = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * m(i, j);
    if (row == 0) return Integer(0);
    bound *= row;
  }
  return bound;
}

Integer modular_determinant(const DenseMatrix<Integer>& m) {
  if (!m.is_square()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return Integer(1);
  const Integer bound_sq = hadamard_bound_squared(m);
  if (bound_sq == 0) return Integer(0);
  // Need modulus M with M > 2 * bound, i.e. M^2 > 4 * bound^2.
  const Integer target = 4 * bound_sq;
  Integer modulus = 1;
  Integer value = 0;
  Integer tmp;
  for (std::size_t i = 0; modulus * modulus <= target; ++i) {
    const u64 p = modulus_pool().at(i);
    const u64 residue = determinant_mod(m, p);
    const Integer pz(static_cast<unsigned long>(p));
    // Incremental CRT: value += modulus * ((residue - value) * modulus^{-1} mod p).
    mpz_fdiv_r(tmp.get_mpz_t(), value.get_mpz_t(), pz.get_mpz_t());
    const u64 current = tmp.get_ui();
    mpz_fdiv_r(tmp.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
    const u64 inv = pow_mod(tmp.get_ui(), p - 2, p);
    const u64 diff = residue >= current ? residue - current : residue + (p - current);
    const u64 lift = mul_mod(diff, inv, p);
    value += modulus * Integer(static_cast<unsigned long>(lift));
    modulus *= pz;
  }
  if (2 * value > modulus) value -= modulus;
  return value;
}

Rational exact_determinant(const DenseMatrix<Rational>& m, DeterminantBackend backend) {
  if (!m.is_square()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix<Integer> scaled(n, n);
  Integer scale_product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      scaled(i, j) = m(i, j).numerator() * (lcm / m(i, j).denominator());
    }
    scale_product *= lcm;
  }
  const Integer det = backend == DeterminantBackend::bareiss ? bareiss_determinant(std::move(scaled))
                                                            : modular_determinant(scaled);
  return Rational(det, scale_product);
}

}  // namespace resdyn
