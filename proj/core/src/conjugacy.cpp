#include "resdyn/conjugacy.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>

#include "resdyn/errors.hpp"
#include "resdyn/resultant.hpp"

namespace resdyn {
namespace {

void require_quadratic_morphism(const MorphismModel& phi) {
  if (phi.dimension() != 1 || phi.degree() != 2) {
    throw InvalidArgument("conjugacy testing is implemented for degree-2 maps of P^1");
  }
  if (macaulay_resultant(phi).vanishes()) throw NotAMorphism("Res = 0: the forms have a common zero");
}

// Position in the sequence 0, 1, -1, 2, -2, ...
long value_rank(long v) { return v > 0 ? 2 * v - 1 : -2 * v; }

LinearMap to_linear_map(const DenseMatrix<Integer>& m) {
  DenseMatrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  }
  return LinearMap(std::move(r));
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::string_view to_string(ConjugacyStatus status) {
  switch (status) {
    case ConjugacyStatus::conjugate:
      return "conjugate";
    case ConjugacyStatus::not_conjugate:
      return "not_conjugate";
    case ConjugacyStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

std::vector<DenseMatrix<Integer>> conjugacy_search_matrices(int box) {
  static std::mutex mutex;
  static std::map<int, std::vector<DenseMatrix<Integer>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(box); it != cache.end()) return it->second;

  std::vector<std::array<long, 4>> entries;
  for (long a = -box; a <= box; ++a) {
    for (long b = -box; b <= box; ++b) {
      for (long c = -box; c <= box; ++c) {
        for (long d = -box; d <= box; ++d) {
          if (a * d - b * c == 0) continue;
          if (std::gcd(std::gcd(a, b), std::gcd(c, d)) != 1) continue;
          const long first = a != 0 ? a : (b != 0 ? b : c);
          if (first < 0) continue;
          entries.push_back({a, b, c, d});
        }
      }
    }
  }
  auto height = [](const std::array<long, 4>& e) {
    long h = 0;
    for (long v : e) h = std::max(h, v < 0 ? -v : v);
    return h;
  };
  // Identity first, so a map tested against itself gets the trivial witness.
  auto is_identity = [](const std::array<long, 4>& e) { return e == std::array<long, 4>{1, 0, 0, 1}; };
  std::sort(entries.begin(), entries.end(), [&](const auto& x, const auto& y) {
    if (is_identity(x) != is_identity(y)) return is_identity(x);
    if (height(x) != height(y)) return height(x) < height(y);
    for (std::size_t i = 0; i < 4; ++i) {
      if (x[i] != y[i]) return value_rank(x[i]) < value_rank(y[i]);
    }
    return false;
  });
  std::vector<DenseMatrix<Integer>> out;
  for (const auto& e : entries) {
    DenseMatrix<Integer> m(2, 2);
    m(0, 0) = e[0];
    m(0, 1) = e[1];
    m(1, 0) = e[2];
    m(1, 1) = e[3];
    out.push_back(std::move(m));
  }
  cache[box] = out;
  return out;
}

ConjugacyVerdict conjugacy_test(const MorphismModel& phi, const MorphismModel& psi, const SearchBudget& budget) {
  require_quadratic_morphism(phi);
  require_quadratic_morphism(psi);
  const SigmaPair sp = sigma_invariants(phi);
  const SigmaPair sq = sigma_invariants(psi);
  if (sp != sq) {
    return {ConjugacyStatus::not_conjugate, std::nullopt,
            "sigma invariants differ: (" + sp.sigma1.to_string() + ", " + sp.sigma2.to_string() + ") vs (" +
                sq.sigma1.to_string() + ", " + sq.sigma2.to_string() + ")"};
  }
  const auto source = primitive_coefficients(phi);
  const auto target = primitive_coefficients(psi);
  for (const auto& m : conjugacy_search_matrices(budget.conjugacy_box)) {
    auto image = detail::conjugate_integral(1, 2, source, m);
    detail::make_primitive(image);
    if (image != target) continue;
    LinearMap witness = to_linear_map(m);
    if (!projectively_equal(conjugate(phi, witness), psi)) continue;
    return {ConjugacyStatus::conjugate, std::move(witness), {}};
  }
  return {ConjugacyStatus::unknown, std::nullopt, {}};
}

MorphismModel twist_family_member(const Rational& b) {
  if (b.is_zero()) throw InvalidArgument("twist parameter must be nonzero");
  return MorphismModel::from_coefficients(1, 2, {{Rational(1), Rational(0), b}, {Rational(0), Rational(1), Rational(0)}});
}

bool twist_family_test(const Rational& b, const Rational& c) {
  if (b.is_zero() || c.is_zero()) throw InvalidArgument("twist parameters must be nonzero");
  const Rational ratio = b / c;
  const Integer product = ratio.numerator() * ratio.denominator();
  return product > 0 && mpz_perfect_square_p(product.get_mpz_t()) != 0;
}

std::vector<TwistBucket> bucket_twists(std::span<const MorphismModel> classes, const SearchBudget& budget) {
  std::vector<SigmaPair> keys;
  std::map<SigmaPair, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    require_quadratic_morphism(classes[i]);
    const SigmaPair key = sigma_invariants(classes[i]);
    auto& group = groups[key];
    if (group.empty()) keys.push_back(key);
    group.push_back(i);
  }

  std::vector<TwistBucket> buckets;
  for (const auto& key : keys) {
    const auto& group = groups[key];
    UnionFind uf(group.size());
    // The box-limited search can miss a witness between two members of one
    // class, so a newcomer is tested against every earlier member outside its
    // current class. The result is the closure of all pairwise verdicts.
    for (std::size_t j = 1; j < group.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (uf.find(i) == uf.find(j)) continue;
        const auto verdict = conjugacy_test(classes[group[i]], classes[group[j]], budget);
        if (verdict.status == ConjugacyStatus::conjugate) uf.unite(i, j);
      }
    }
    TwistBucket bucket;
    bucket.key = key;
    std::map<std::size_t, std::size_t> member_of_root;
    for (std::size_t i = 0; i < group.size(); ++i) {
      const std::size_t root = uf.find(i);
      auto [it, inserted] = member_of_root.emplace(root, bucket.members.size());
      if (inserted) {
        bucket.members.push_back(classes[group[i]]);
        bucket.member_inputs.emplace_back();
      }
      bucket.member_inputs[it->second].push_back(group[i]);
    }
    for (std::size_t a = 0; a < bucket.members.size(); ++a) {
      for (std::size_t b = a + 1; b < bucket.members.size(); ++b) bucket.unknown_pairs.emplace_back(a, b);
    }
    buckets.push_back(std::move(bucket));
  }
  return buckets;
}

}  // namespace resdyn
