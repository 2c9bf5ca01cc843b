#include "resdyn/morphism.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "resdyn/determinant.hpp"
#include "resdyn/errors.hpp"
#include "resdyn/number_theory.hpp"

namespace resdyn {
namespace {

void append_monomials(int vars_left, int degree, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (vars_left == 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(e);
    append_monomials(vars_left - 1, degree - e, prefix, out);
    prefix.pop_back();
  }
}

bool is_zero_scalar(const Rational& x) { return x.is_zero(); }
bool is_zero_scalar(const Integer& x) { return sgn(x) == 0; }

template <typename T>
std::vector<T> multiply_dense(int n, int da, const std::vector<T>& a, int db, const std::vector<T>& b) {
  const auto& table = MonomialBasis::product_table(n, da, db);
  std::vector<T> out(MonomialBasis::get(n, da + db).size(), T(0));
  const std::size_t sb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero_scalar(a[i])) continue;
    for (std::size_t j = 0; j < sb; ++j) {
      if (is_zero_scalar(b[j])) continue;
      out[table[i * sb + j]] += a[i] * b[j];
    }
  }
  return out;
}

// adj * (phi o f) over flat coefficients.
template <typename T>
std::vector<T> conjugate_dense(int n, int d, std::span<const T> coefficients, const DenseMatrix<T>& f,
                               const DenseMatrix<T>& adj) {
  const auto& basis = MonomialBasis::get(n, d);
  const std::size_t m = basis.size();
  const std::size_t k = static_cast<std::size_t>(n) + 1;

  // powers[j][e] = (row j of f as a linear form)^e
  std::vector<std::vector<std::vector<T>>> powers(k);
  for (std::size_t j = 0; j < k; ++j) {
    powers[j].resize(static_cast<std::size_t>(d) + 1);
    powers[j][0] = {T(1)};
    if (d == 0) continue;
    std::vector<T> linear(k);
    for (std::size_t c = 0; c < k; ++c) linear[c] = f(j, c);
    powers[j][1] = linear;
    for (int e = 2; e <= d; ++e) {
      powers[j][static_cast<std::size_t>(e)] =
          multiply_dense(n, e - 1, powers[j][static_cast<std::size_t>(e) - 1], 1, linear);
    }
  }

  std::vector<std::vector<T>> composed(k, std::vector<T>(m, T(0)));
  for (std::size_t idx = 0; idx < m; ++idx) {
    bool used = false;
    for (std::size_t i = 0; i < k; ++i) used = used || !is_zero_scalar(coefficients[i * m + idx]);
    if (!used) continue;
    const MultiIndex& exps = basis[idx];
    std::vector<T> image = {T(1)};
    int deg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const int e = exps[j];
      if (e == 0) continue;
      image = multiply_dense(n, deg, image, e, powers[j][static_cast<std::size_t>(e)]);
      deg += e;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const T& a = coefficients[i * m + idx];
      if (is_zero_scalar(a)) continue;
      for (std::size_t t = 0; t < m; ++t) composed[i][t] += a * image[t];
    }
  }

  std::vector<T> out(k * m, T(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const T& a = adj(i, j);
      if (is_zero_scalar(a)) continue;
      for (std::size_t t = 0; t < m; ++t) out[i * m + t] += a * composed[j][t];
    }
  }
  return out;
}

DenseMatrix<Rational> rational_inverse(const DenseMatrix<Rational>& m) {
  const std::size_t n = m.rows();
  DenseMatrix<Rational> a = m;
  DenseMatrix<Rational> inv = DenseMatrix<Rational>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw InvalidArgument("singular matrix has no inverse");
    a.swap_rows(pivot, col);
    inv.swap_rows(pivot, col);
    const Rational scale = Rational(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Rational factor = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace

std::size_t binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0;
  std::size_t out = 1;
  for (int i = 1; i <= bottom; ++i) {
    out = out * static_cast<std::size_t>(top - bottom + i) / static_cast<std::size_t>(i);
  }
  return out;
}

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
  MultiIndex prefix;
  append_monomials(n + 1, d, prefix, monomials_);
}

const MonomialBasis& MonomialBasis::get(int n, int d) {
  if (n < 1 || d < 0) throw InvalidArgument("monomial basis needs n >= 1 and d >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot.reset(new MonomialBasis(n, d));
  return *slot;
}

std::size_t MonomialBasis::index_of(const MultiIndex& exponents) const {
  if (exponents.size() != static_cast<std::size_t>(n_) + 1) {
    throw InvalidArgument("multi-index has wrong number of variables");
  }
  int weight = 0;
  for (int e : exponents) {
    if (e < 0) throw InvalidArgument("negative exponent in multi-index");
    weight += e;
  }
  if (weight != d_) throw InvalidArgument("multi-index weight differs from the form degree");
  // Position in descending lex order: count monomials that precede it.
  std::size_t index = 0;
  int remaining = d_;
  for (int v = 0; v < n_; ++v) {
    const int vars_after = n_ - v;
    for (int e = remaining; e > exponents[static_cast<std::size_t>(v)]; --e) {
      index += binomial(remaining - e + vars_after - 1, vars_after - 1);
    }
    remaining -= exponents[static_cast<std::size_t>(v)];
  }
  return index;
}

const std::vector<std::size_t>& MonomialBasis::product_table(int n, int da, int db) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<std::size_t>>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, da, db});
    if (it != cache.end()) return *it->second;
  }
  const auto& a = get(n, da);
  const auto& b = get(n, db);
  const auto& c = get(n, da + db);
  auto table = std::make_unique<std::vector<std::size_t>>(a.size() * b.size());
  MultiIndex sum(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = a[i][v] + b[j][v];
      (*table)[i * b.size() + j] = c.index_of(sum);
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, da, db}];
  if (!slot) slot = std::move(table);
  return *slot;
}

HomogeneousForm::HomogeneousForm(int n, int d)
    : n_(n), d_(d), coefficients_(MonomialBasis::get(n, d).size()) {}

HomogeneousForm::HomogeneousForm(int n, int d, std::vector<Rational> coefficients)
    : n_(n), d_(d), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != MonomialBasis::get(n, d).size()) {
    throw InvalidArgument("form of degree " + std::to_string(d) + " in " + std::to_string(n + 1) +
                          " variables needs " + std::to_string(MonomialBasis::get(n, d).size()) +
                          " coefficients");
  }
}

const Rational& HomogeneousForm::coefficient(const MultiIndex& exponents) const {
  return coefficients_[basis().index_of(exponents)];
}

void HomogeneousForm::set(const MultiIndex& exponents, Rational value) {
  coefficients_[basis().index_of(exponents)] = std::move(value);
}

bool HomogeneousForm::is_zero() const {
  for (const auto& c : coefficients_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Rational HomogeneousForm::evaluate(std::span<const Rational> point) const {
  if (point.size() != static_cast<std::size_t>(n_) + 1) {
    throw InvalidArgument("point has wrong number of coordinates");
  }
  const auto& b = basis();
  Rational total;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i].is_zero()) continue;
    Rational term = coefficients_[i];
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (b[i][v] > 0) term *= pow(point[v], b[i][v]);
    }
    total += term;
  }
  return total;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.n_ != b.n_) throw InvalidArgument("form product over different variable counts");
  return HomogeneousForm(a.n_, a.d_ + b.d_, multiply_dense(a.n_, a.d_, a.coefficients_, b.d_, b.coefficients_));
}

HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.n_ != b.n_ || a.d_ != b.d_) throw InvalidArgument("form sum of mismatched shapes");
  HomogeneousForm out = a;
  for (std::size_t i = 0; i < out.coefficients_.size(); ++i) out.coefficients_[i] += b.coefficients_[i];
  return out;
}

HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b) {
  return a + Rational(-1) * b;
}

HomogeneousForm operator*(const Rational& s, const HomogeneousForm& a) {
  HomogeneousForm out = a;
  for (auto& c : out.coefficients_) c *= s;
  return out;
}

MorphismModel::MorphismModel(std::vector<HomogeneousForm> forms) : forms_(std::move(forms)) {
  if (forms_.empty()) throw InvalidArgument("morphism needs at least one form");
  n_ = forms_.front().dimension();
  d_ = forms_.front().degree();
  if (forms_.size() != static_cast<std::size_t>(n_) + 1) {
    throw InvalidArgument("morphism of P^" + std::to_string(n_) + " needs " + std::to_string(n_ + 1) +
                          " forms");
  }
  if (d_ < 1) throw InvalidArgument("morphism degree must be at least 1");
  bool nonzero = false;
  for (const auto& f : forms_) {
    if (f.dimension() != n_ || f.degree() != d_) throw InvalidArgument("forms differ in shape");
    nonzero = nonzero || !f.is_zero();
  }
  if (!nonzero) throw InvalidArgument("zero model is not a point of projective space");
}

MorphismModel MorphismModel::from_coefficients(int n, int d,
                                               const std::vector<std::vector<Rational>>& forms) {
  std::vector<HomogeneousForm> out;
  out.reserve(forms.size());
  for (const auto& coeffs : forms) out.emplace_back(n, d, coeffs);
  return MorphismModel(std::move(out));
}

std::size_t MorphismModel::projective_dimension() const {
  return binomial(n_ + d_, d_) * (static_cast<std::size_t>(n_) + 1) - 1;
}

std::vector<Rational> MorphismModel::flat_coefficients() const {
  std::vector<Rational> out;
  for (const auto& f : forms_) out.insert(out.end(), f.coefficients().begin(), f.coefficients().end());
  return out;
}

MorphismModel MorphismModel::scaled(const Rational& lambda) const {
  std::vector<HomogeneousForm> out;
  for (const auto& f : forms_) out.push_back(lambda * f);
  return MorphismModel(std::move(out));
}

LinearMap::LinearMap(DenseMatrix<Rational> matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() < 2) {
    throw InvalidArgument("linear map needs a square matrix of size at least 2");
  }
  det_ = exact_determinant(matrix_);
  if (det_.is_zero()) throw InvalidArgument("singular matrix does not define an element of PGL");
}

LinearMap LinearMap::identity(int n) {
  return LinearMap(DenseMatrix<Rational>::identity(static_cast<std::size_t>(n) + 1));
}

LinearMap LinearMap::from_rows(const std::vector<std::vector<Rational>>& rows) {
  DenseMatrix<Rational> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InvalidArgument("linear map rows must form a square matrix");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return LinearMap(std::move(m));
}

DenseMatrix<Rational> LinearMap::adjugate() const {
  DenseMatrix<Rational> adj = rational_inverse(matrix_);
  for (std::size_t i = 0; i < adj.rows(); ++i) {
    for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) *= det_;
  }
  return adj;
}

LinearMap LinearMap::inverse() const { return LinearMap(rational_inverse(matrix_)); }

LinearMap LinearMap::scaled(const Rational& lambda) const {
  DenseMatrix<Rational> m = matrix_;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= lambda;
  }
  return LinearMap(std::move(m));
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  if (other.matrix_.rows() != matrix_.rows()) throw InvalidArgument("composing maps of different sizes");
  const std::size_t k = matrix_.rows();
  DenseMatrix<Rational> m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational s;
      for (std::size_t t = 0; t < k; ++t) s += matrix_(i, t) * other.matrix_(t, j);
      m(i, j) = s;
    }
  }
  return LinearMap(std::move(m));
}

std::vector<Rational> LinearMap::apply(std::span<const Rational> point) const {
  if (point.size() != matrix_.rows()) throw InvalidArgument("point has wrong number of coordinates");
  std::vector<Rational> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    for (std::size_t j = 0; j < point.size(); ++j) out[i] += matrix_(i, j) * point[j];
  }
  return out;
}

namespace detail {

bool make_primitive(std::vector<Integer>& coefficients) {
  Integer content = 0;
  for (const auto& c : coefficients) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content == 0) return false;
  for (const auto& c : coefficients) {
    if (c != 0) {
      if (c < 0) content = -content;
      break;
    }
  }
  for (auto& c : coefficients) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  return true;
}

DenseMatrix<Integer> integer_adjugate(const DenseMatrix<Integer>& m) {
  const std::size_t k = m.rows();
  DenseMatrix<Integer> adj(k, k);
  if (k == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  if (k == 2) {
    adj(0, 0) = m(1, 1);
    adj(0, 1) = -m(0, 1);
    adj(1, 0) = -m(1, 0);
    adj(1, 1) = m(0, 0);
    return adj;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      // adj(i, j) = (-1)^{i+j} det(minor removing row j, column i)
      DenseMatrix<Integer> minor(k - 1, k - 1);
      for (std::size_t r = 0, mr = 0; r < k; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < k; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Integer det = bareiss_determinant(std::move(minor));
      adj(i, j) = ((i + j) % 2 == 0) ? det : Integer(-det);
    }
  }
  return adj;
}

std::vector<Integer> conjugate_integral(int n, int d, std::span<const Integer> coefficients,
                                        const DenseMatrix<Integer>& f) {
  return conjugate_dense<Integer>(n, d, coefficients, f, integer_adjugate(f));
}

}  // namespace detail

std::vector<Integer> primitive_coefficients(const MorphismModel& phi) {
  const auto flat = phi.flat_coefficients();
  Integer lcm = 1;
  for (const auto& c : flat) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.raw().get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(flat.size());
  for (const auto& c : flat) ints.push_back(c.numerator() * (lcm / c.denominator()));
  if (!detail::make_primitive(ints)) throw InvalidArgument("zero model has no primitive normalization");
  return ints;
}

MorphismModel normalize_primitive(const MorphismModel& phi) {
  const auto ints = primitive_coefficients(phi);
  const std::size_t m = phi.form(0).coefficients().size();
  std::vector<std::vector<Rational>> forms(phi.forms().size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t t = 0; t < m; ++t) forms[i].emplace_back(ints[i * m + t]);
  }
  return MorphismModel::from_coefficients(phi.dimension(), phi.degree(), forms);
}

bool projectively_equal(const MorphismModel& a, const MorphismModel& b) {
  if (a.dimension() != b.dimension() || a.degree() != b.degree()) return false;
  return primitive_coefficients(a) == primitive_coefficients(b);
}

long min_coeff_valuation(const MorphismModel& phi, const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("valuation at non-prime " + p.get_str());
  bool found = false;
  long best = 0;
  for (const auto& form : phi.forms()) {
    for (const auto& c : form.coefficients()) {
      if (c.is_zero()) continue;
      const long v = valuation(c, p).value();
      if (!found || v < best) best = v;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("zero model has no coefficient valuation");
  return best;
}

MorphismModel conjugate(const MorphismModel& phi, const LinearMap& f) {
  if (f.dimension() != phi.dimension()) throw InvalidArgument("conjugator dimension mismatch");
  const auto flat = phi.flat_coefficients();
  const auto out = conjugate_dense<Rational>(phi.dimension(), phi.degree(), flat, f.matrix(), f.adjugate());
  const std::size_t m = phi.form(0).coefficients().size();
  std::vector<std::vector<Rational>> forms(phi.forms().size());
  for (std::size_t i = 0; i < forms.size(); ++i) forms[i].assign(out.begin() + static_cast<long>(i * m), out.begin() + static_cast<long>((i + 1) * m));
  return MorphismModel::from_coefficients(phi.dimension(), phi.degree(), forms);
}

std::vector<Rational> evaluate(const MorphismModel& phi, std::span<const Rational> point) {
  bool nonzero = false;
  for (const auto& c : point) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw InvalidArgument("the zero tuple is not a point of projective space");
  std::vector<Rational> out;
  bool defined = false;
  for (const auto& form : phi.forms()) {
    out.push_back(form.evaluate(point));
    defined = defined || !out.back().is_zero();
  }
  if (!defined) throw IndeterminatePoint("every coordinate of the image vanishes");
  return out;
}

double log_abs(const Integer& x) {
  if (x == 0) throw InvalidArgument("log of zero");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

double coefficient_height(const MorphismModel& phi) {
  Integer best = 0;
  for (const auto& c : primitive_coefficients(phi)) {
    if (abs(c) > best) best = abs(c);
  }
  return log_abs(best);
}

std::string canonical_key(const MorphismModel& phi) {
  const auto ints = primitive_coefficients(phi);
  const std::size_t m = phi.form(0).coefficients().size();
  std::string key;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    if (i > 0) key += (i % m == 0) ? '|' : ',';
    key += ints[i].get_str();
  }
  return key;
}

bool projective_points_equal(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return false;
  // a ~ b iff a_i b_j = a_j b_i for all i, j and both are nonzero.
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  bool az = true, bz = true;
  for (const auto& x : a) az = az && x.is_zero();
  for (const auto& x : b) bz = bz && x.is_zero();
  if (az || bz) return az && bz;
  // Pairwise minors can vanish when a coordinate pattern differs only in zeros.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
  }
  return true;
}

}  // namespace resdyn
