#include "descent_kit/exactlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace descent_kit {

std::uint64_t enumeration_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("DESCENT_KIT_MAX_ENUM")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{2'000'000};
  }();
  return cap;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm64(std::int64_t a, std::int64_t b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size() && i < rows && i < cols; ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> col(rows_);
  for (std::size_t i = 0; i < rows_; ++i) col[i] = (*this)(i, c);
  return col;
}

IntMatrix IntMatrix::hcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw Error(ErrorKind::InvalidArgument, "hcat row mismatch");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, cols_ + j) = rhs(i, j);
  }
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form
//
// The elimination runs first on checked 64-bit integers and restarts on
// arbitrary precision integers if any intermediate value overflows.

namespace {

struct Overflow {};

struct Checked {
  std::int64_t v = 0;
  Checked() = default;
  Checked(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Checked operator+(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator/(Checked a, Checked b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  Checked operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
  friend bool operator<(Checked a, Checked b) { return a.v < b.v; }
};

Checked abs_of(Checked x) { return x.v < 0 ? -x : x; }
Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }
bool is_zero(Checked x) { return x.v == 0; }
bool is_zero(const Integer& x) { return x == 0; }
Integer to_integer(Checked x) { return Integer(x.v); }
Integer to_integer(const Integer& x) { return x; }

template <class T>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;
  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  static Dense eye(std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d.at(i, i) = T(1);
    return d;
  }
  void add_row(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t j = 0; j < cols; ++j)
      if (!is_zero(at(src, j))) at(dst, j) = at(dst, j) + c * at(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t i = 0; i < rows; ++i)
      if (!is_zero(at(i, src))) at(i, dst) = at(i, dst) + c * at(i, src);
  }
  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(x, j), at(y, j));
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, x), at(i, y));
  }
  void neg_row(std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) at(r, j) = -at(r, j);
  }
  void neg_col(std::size_t c) {
    for (std::size_t i = 0; i < rows; ++i) at(i, c) = -at(i, c);
  }
};

template <class T>
IntMatrix to_int_matrix(const Dense<T>& d) {
  IntMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(i, j) = to_integer(d.at(i, j));
  return m;
}

// Transforms tracked: p (row ops, = u^-1), p_inv (= u), q (col ops, = v^-1), q_inv (= v).
struct SnfFlags {
  bool p = true, p_inv = true, q = true, q_inv = true;
};

template <class T>
struct SnfWork {
  Dense<T> a, p, p_inv, q, q_inv;
  std::size_t rank = 0;
};

template <class T>
SnfWork<T> run_snf(Dense<T> a, SnfFlags flags) {
  const std::size_t m = a.rows, n = a.cols;
  SnfWork<T> w;
  if (flags.p) w.p = Dense<T>::eye(m);
  if (flags.p_inv) w.p_inv = Dense<T>::eye(m);
  if (flags.q) w.q = Dense<T>::eye(n);
  if (flags.q_inv) w.q_inv = Dense<T>::eye(n);

  auto row_add = [&](std::size_t dst, std::size_t src, const T& c) {
    a.add_row(dst, src, c);
    if (flags.p) w.p.add_row(dst, src, c);
    if (flags.p_inv) w.p_inv.add_col(src, dst, -c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const T& c) {
    a.add_col(dst, src, c);
    if (flags.q) w.q.add_col(dst, src, c);
    if (flags.q_inv) w.q_inv.add_row(src, dst, -c);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (flags.p) w.p.swap_rows(x, y);
    if (flags.p_inv) w.p_inv.swap_cols(x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (flags.q) w.q.swap_cols(x, y);
    if (flags.q_inv) w.q_inv.swap_rows(x, y);
  };
  auto row_neg = [&](std::size_t r) {
    a.neg_row(r);
    if (flags.p) w.p.neg_row(r);
    if (flags.p_inv) w.p_inv.neg_col(r);
  };

  std::size_t t = 0;
  const std::size_t lim = std::min(m, n);
  while (t < lim) {
    // Pivot: smallest absolute value, then lowest row, then lowest column.
    auto select_pivot = [&]() -> bool {
      bool found = false;
      T best{};
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const T& v = a.at(i, j);
          if (is_zero(v)) continue;
          T av = abs_of(v);
          if (!found || av < best) {
            found = true;
            best = av;
            bi = i;
            bj = j;
          }
        }
      if (!found) return false;
      row_swap(t, bi);
      col_swap(t, bj);
      return true;
    };
    if (!select_pivot()) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (is_zero(a.at(i, t))) continue;
        T q = a.at(i, t) / a.at(t, t);
        if (!is_zero(q)) row_add(i, t, -q);
        if (!is_zero(a.at(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (is_zero(a.at(t, j))) continue;
        T q = a.at(t, j) / a.at(t, t);
        if (!is_zero(q)) col_add(j, t, -q);
        if (!is_zero(a.at(t, j))) clean = false;
      }
      if (!clean) {
        select_pivot();
        continue;
      }
      // Divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          const T& v = a.at(i, j);
          if (is_zero(v)) continue;
          T q = v / a.at(t, t);
          if (!(q * a.at(t, t) == v)) {
            row_add(t, i, T(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (a.at(t, t) < T(0)) row_neg(t);
    ++t;
  }
  w.rank = t;
  w.a = std::move(a);
  return w;
}

template <class T>
Dense<T> to_dense(const IntMatrix& m);

template <>
Dense<Checked> to_dense<Checked>(const IntMatrix& m) {
  Dense<Checked> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& v = m(i, j);
      if (v > std::numeric_limits<std::int64_t>::max() / 4 || v < std::numeric_limits<std::int64_t>::min() / 4)
        throw Overflow{};
      d.at(i, j) = Checked(static_cast<std::int64_t>(v));
    }
  return d;
}

template <>
Dense<Integer> to_dense<Integer>(const IntMatrix& m) {
  Dense<Integer> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d.at(i, j) = m(i, j);
  return d;
}

struct SnfResult {
  IntMatrix d, p, p_inv, q, q_inv;
  std::size_t rank = 0;
};

template <class T>
SnfResult finish(SnfWork<T>&& w, SnfFlags flags) {
  SnfResult r;
  r.d = to_int_matrix(w.a);
  if (flags.p) r.p = to_int_matrix(w.p);
  if (flags.p_inv) r.p_inv = to_int_matrix(w.p_inv);
  if (flags.q) r.q = to_int_matrix(w.q);
  if (flags.q_inv) r.q_inv = to_int_matrix(w.q_inv);
  r.rank = w.rank;
  return r;
}

SnfResult snf(const IntMatrix& m, SnfFlags flags) {
  try {
    return finish(run_snf(to_dense<Checked>(m), flags), flags);
  } catch (const Overflow&) {
    return finish(run_snf(to_dense<Integer>(m), flags), flags);
  }
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfResult r = snf(m, {});
  SmithForm s;
  s.d = std::move(r.d);
  s.u = std::move(r.p_inv);
  s.u_inv = std::move(r.p);
  s.v = std::move(r.q_inv);
  s.v_inv = std::move(r.q);
  s.rank = r.rank;
  return s;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  SnfResult r = snf(m, {.p = false, .p_inv = false, .q = true, .q_inv = false});
  IntMatrix k(n, n - r.rank);
  for (std::size_t c = r.rank; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c - r.rank) = r.q(i, c);
  return k;
}

IntMatrix hermite_basis(const IntMatrix& gens) {
  IntMatrix h = gens;
  const std::size_t n = h.rows();
  std::size_t col = 0;
  auto col_combine = [&](std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t i = 0; i < n; ++i) h(i, dst) += c * h(i, src);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < n; ++i) std::swap(h(i, x), h(i, y));
  };
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t row = 0; row < n && col < h.cols(); ++row) {
    // Euclid across columns col.. on this row.
    for (;;) {
      std::size_t best = h.cols();
      for (std::size_t j = col; j < h.cols(); ++j)
        if (h(row, j) != 0 && (best == h.cols() || abs_of(h(row, j)) < abs_of(h(row, best)))) best = j;
      if (best == h.cols()) break;
      col_swap(col, best);
      bool done = true;
      for (std::size_t j = col + 1; j < h.cols(); ++j) {
        if (h(row, j) == 0) continue;
        Integer q = h(row, j) / h(row, col);
        col_combine(j, col, -q);
        if (h(row, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0)
      for (std::size_t i = 0; i < n; ++i) h(i, col) = -h(i, col);
    pivots.emplace_back(row, col);
    ++col;
  }
  // Reduce entries to the right of... below-pivot rows are already in echelon
  // form; reduce earlier columns against later pivots for a canonical basis.
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    auto [row, c] = pivots[p];
    for (std::size_t j = 0; j < c; ++j) {
      Integer v = h(row, j);
      Integer q = v / h(row, c);
      if (v - q * h(row, c) < 0) q -= 1;
      if (q != 0) col_combine(j, c, -q);
    }
  }
  IntMatrix out(n, col);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < col; ++j) out(i, j) = h(i, j);
  return out;
}

std::vector<Integer> reduce_modulo_lattice(std::vector<Integer> x, const IntMatrix& hermite) {
  const std::size_t n = hermite.rows();
  std::size_t row = 0;
  for (std::size_t c = 0; c < hermite.cols(); ++c) {
    while (row < n && hermite(row, c) == 0) ++row;
    if (row == n) break;
    const Integer& piv = hermite(row, c);
    Integer q = x[row] / piv;
    if (x[row] - q * piv < 0) q -= 1;
    if (q != 0)
      for (std::size_t i = 0; i < n; ++i) x[i] -= q * hermite(i, c);
    ++row;
  }
  return x;
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(Vec invariant_factors) : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw Error(ErrorKind::InvalidArgument, "invariant factor below 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw Error(ErrorKind::InvalidArgument, "invariant factors do not form a divisibility chain");
  }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::span<const std::int64_t> orders) {
  // Split into prime powers, then merge per prime from the top.
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> by_prime;
  for (std::int64_t m : orders) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "cyclic order must be positive");
    for (auto [p, e] : factorize(m)) {
      std::int64_t q = 1;
      for (int k = 0; k < e; ++k) q *= p;
      auto it = std::find_if(by_prime.begin(), by_prime.end(), [&](const auto& x) { return x.first == p; });
      if (it == by_prime.end()) {
        by_prime.push_back({p, {q}});
      } else {
        it->second.push_back(q);
      }
    }
  }
  std::size_t k = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    k = std::max(k, qs.size());
  }
  Vec out(k, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) out[k - 1 - i] *= qs[i];
  return FiniteAbelianGroup(std::move(out));
}

std::uint64_t FiniteAbelianGroup::order() const {
  std::uint64_t o = 1;
  for (std::int64_t d : factors_)
    if (__builtin_mul_overflow(o, static_cast<std::uint64_t>(d), &o) || o > (std::uint64_t{1} << 62))
      throw Error(ErrorKind::SizeLimitExceeded, "group order too large: " + to_string());
  return o;
}

Integer FiniteAbelianGroup::exact_order() const {
  Integer o = 1;
  for (std::int64_t d : factors_) o *= d;
  return o;
}

Vec FiniteAbelianGroup::basis(std::size_t i) const {
  Vec e(factors_.size(), 0);
  e[i] = 1;
  return e;
}

void FiniteAbelianGroup::reduce(Vec& x) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) x[i] = mod_floor(x[i], factors_[i]);
}

Vec FiniteAbelianGroup::add(const Vec& x, const Vec& y) const {
  Vec r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t s = x[i] + y[i];
    r[i] = s >= factors_[i] ? s - factors_[i] : s;
  }
  return r;
}

Vec FiniteAbelianGroup::sub(const Vec& x, const Vec& y) const {
  Vec r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t s = x[i] - y[i];
    r[i] = s < 0 ? s + factors_[i] : s;
  }
  return r;
}

Vec FiniteAbelianGroup::neg(const Vec& x) const {
  Vec r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = x[i] == 0 ? 0 : factors_[i] - x[i];
  return r;
}

Vec FiniteAbelianGroup::scale(std::int64_t k, const Vec& x) const {
  Vec r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = static_cast<std::int64_t>(mod_floor(static_cast<std::int64_t>(
                                                   (static_cast<__int128>(mod_floor(k, factors_[i])) * x[i]) %
                                                   factors_[i]),
                                               factors_[i]));
  return r;
}

void FiniteAbelianGroup::axpy(Vec& x, std::int64_t k, const Vec& y) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t d = factors_[i];
    __int128 v = x[i] + static_cast<__int128>(mod_floor(k, d)) * y[i];
    x[i] = static_cast<std::int64_t>(v % d);
  }
}

bool FiniteAbelianGroup::is_zero(const Vec& x) const {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t FiniteAbelianGroup::element_order(const Vec& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) o = lcm64(o, factors_[i] / gcd64(factors_[i], x[i]));
  return o;
}

Vec FiniteAbelianGroup::element_at(std::uint64_t index) const {
  Vec x(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto d = static_cast<std::uint64_t>(factors_[i]);
    x[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return x;
}

std::uint64_t FiniteAbelianGroup::index_of(const Vec& x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = factors_.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(factors_[i]) + x[i];
  return idx;
}

void FiniteAbelianGroup::for_each_element(const std::function<bool(const Vec&)>& f) const {
  Vec x(factors_.size(), 0);
  for (;;) {
    if (!f(x)) return;
    std::size_t i = 0;
    while (i < x.size()) {
      if (++x[i] < factors_[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) return;
  }
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + " : "") << "Z/" << factors_[i];
  return os.str();
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::uint64_t n) {
  if (n == 0) return {};
  std::vector<std::vector<Vec>> per_prime;
  for (auto [p, e] : factorize(static_cast<std::int64_t>(n))) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<Vec> options;
    for (const auto& part : parts) {
      Vec orders;
      for (int k : part) {
        std::int64_t q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        orders.push_back(q);
      }
      options.push_back(orders);
    }
    per_prime.push_back(options);
  }
  std::vector<FiniteAbelianGroup> out;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  for (;;) {
    Vec orders;
    for (std::size_t i = 0; i < per_prime.size(); ++i)
      orders.insert(orders.end(), per_prime[i][pick[i]].begin(), per_prime[i][pick[i]].end());
    out.push_back(FiniteAbelianGroup::from_cyclic_orders(orders));
    std::size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] < per_prime[i].size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Cokernel and congruences

Vec Cokernel::project(std::span<const Integer> x) const {
  Vec out(group.rank());
  for (std::size_t t = 0; t < group.rank(); ++t) {
    Integer s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += projection(t, j) * x[j];
    Integer d = group.factor(t);
    s %= d;
    if (s < 0) s += d;
    out[t] = static_cast<std::int64_t>(s);
  }
  return out;
}

Cokernel cokernel(const IntMatrix& rel) {
  const std::size_t n = rel.rows();
  Cokernel c;
  if (n == 0) return c;
  SnfResult r;
  if (rel.cols() == 0) {
    throw Error(ErrorKind::InfiniteQuotient, "no relations on a nonzero ambient lattice");
  }
  r = snf(rel, {.p = true, .p_inv = true, .q = false, .q_inv = false});
  std::vector<std::size_t> keep;
  Vec factors;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = i < std::min(r.d.rows(), r.d.cols()) ? r.d(i, i) : Integer(0);
    if (d == 0) throw Error(ErrorKind::InfiniteQuotient, "quotient has a free summand");
    if (d == 1) continue;
    if (d > std::numeric_limits<std::int64_t>::max())
      throw Error(ErrorKind::SizeLimitExceeded, "invariant factor exceeds 63 bits");
    keep.push_back(i);
    factors.push_back(static_cast<std::int64_t>(d));
  }
  c.group = FiniteAbelianGroup(factors);
  c.projection = IntMatrix(keep.size(), n);
  c.lift = IntMatrix(n, keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t) {
    const Integer d = factors[t];
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = r.p(keep[t], j) % d;
      if (v < 0) v += d;
      c.projection(t, j) = v;
      c.lift(j, t) = r.p_inv(j, keep[t]);
    }
  }
  return c;
}

std::optional<CongruenceSolution> solve_congruences(const IntMatrix& m, std::span<const Integer> b,
                                                    std::span<const Integer> moduli) {
  const std::size_t rows = m.rows(), n = m.cols();
  if (b.size() != rows || moduli.size() != rows)
    throw Error(ErrorKind::InvalidArgument, "congruence system dimension mismatch");
  std::vector<std::size_t> mod_rows;
  for (std::size_t i = 0; i < rows; ++i)
    if (moduli[i] != 0) mod_rows.push_back(i);
  IntMatrix w(rows, n + mod_rows.size());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
  for (std::size_t k = 0; k < mod_rows.size(); ++k) w(mod_rows[k], n + k) = moduli[mod_rows[k]];

  CongruenceSolution sol;
  const std::size_t total = w.cols();
  if (rows == 0) {
    sol.particular.assign(n, 0);
    sol.homogeneous = IntMatrix::identity(n);
    return sol;
  }
  SnfResult r = snf(w, {.p = true, .p_inv = false, .q = true, .q_inv = false});
  std::vector<Integer> z(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) z[i] += r.p(i, j) * b[j];
  std::vector<Integer> y(total);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer d = i < std::min(rows, total) ? r.d(i, i) : Integer(0);
    if (d == 0) {
      if (z[i] != 0) return std::nullopt;
      continue;
    }
    if (z[i] % d != 0) return std::nullopt;
    y[i] = z[i] / d;
  }
  std::vector<Integer> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < total; ++j) x[i] += r.q(i, j) * y[j];

  IntMatrix gens(n, total - r.rank);
  for (std::size_t c = r.rank; c < total; ++c)
    for (std::size_t i = 0; i < n; ++i) gens(i, c - r.rank) = r.q(i, c);
  sol.homogeneous = hermite_basis(gens);
  sol.particular = reduce_modulo_lattice(std::move(x), sol.homogeneous);
  return sol;
}

// ---------------------------------------------------------------------------
// Group homomorphisms

Vec GroupHom::apply(const Vec& x) const {
  Vec out = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) target.axpy(out, x[i], images[i]);
  return out;
}

bool GroupHom::well_defined() const {
  if (images.size() != source.rank()) return false;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != target.rank()) return false;
    if (!target.is_zero(target.scale(source.factor(i), images[i]))) return false;
  }
  return true;
}

std::vector<GroupHom> enumerate_group_homs(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h,
                                           std::uint64_t cap) {
  // Hom(Z/d, Z/e) is cyclic of order gcd(d, e), generated by 1 -> e / gcd.
  Vec radix;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < h.rank(); ++j) {
      std::int64_t r = gcd64(g.factor(i), h.factor(j));
      radix.push_back(r);
      if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(r), &count) || count > cap)
        throw Error(ErrorKind::SizeLimitExceeded, "too many homomorphisms " + g.to_string() + " -> " + h.to_string());
    }
  std::vector<GroupHom> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    GroupHom f{g, h, std::vector<Vec>(g.rank(), h.zero())};
    std::uint64_t rest = idx;
    std::size_t k = 0;
    for (std::size_t i = 0; i < g.rank(); ++i)
      for (std::size_t j = 0; j < h.rank(); ++j, ++k) {
        auto c = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(radix[k]));
        rest /= static_cast<std::uint64_t>(radix[k]);
        f.images[i][j] = c * (h.factor(j) / radix[k]);
      }
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups of direct sums of cyclic groups

Subgroup Subgroup::whole(Vec ambient_moduli) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < ambient_moduli.size(); ++j) {
    Vec e(ambient_moduli.size(), 0);
    e[j] = 1;
    gens.push_back(e);
  }
  return generated_by(std::move(ambient_moduli), gens);
}

namespace {

// The common prime when every modulus is p (or 1 for targets), else 0.
std::int64_t common_prime(const Vec& ambient, const Vec& target = {}) {
  if (ambient.empty()) return 0;
  const std::int64_t p = ambient.front();
  if (p < 2) return 0;
  for (auto m : ambient)
    if (m != p) return 0;
  for (auto m : target)
    if (m != p && m != 1) return 0;
  auto f = factorize(p);
  return f.size() == 1 && f.front().second == 1 ? p : 0;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a = mod_floor(a, p);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * a % p);
    a = static_cast<std::int64_t>(static_cast<__int128>(a) * a % p);
    e >>= 1;
  }
  return r;
}

// Reduced row echelon form mod p; returns the pivot column of each kept row.
std::vector<std::size_t> rref_mod(std::vector<Vec>& rows, std::size_t cols, std::int64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (auto& row : rows)
    for (auto& v : row) v = mod_floor(v, p);
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c] == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    std::int64_t inv = inverse_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = static_cast<std::int64_t>(static_cast<__int128>(v) * inv % p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      std::int64_t f = rows[o][c];
      for (std::size_t j = 0; j < cols; ++j)
        rows[o][j] = mod_floor(static_cast<std::int64_t>((rows[o][j] - static_cast<__int128>(f) * rows[r][j]) % p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

Subgroup Subgroup::span_mod_prime(Vec ambient_moduli, std::int64_t p, const std::vector<Vec>& generators) {
  Subgroup s;
  s.ambient_ = std::move(ambient_moduli);
  s.prime_ = p;
  std::vector<Vec> rows = generators;
  s.pivot_cols_ = rref_mod(rows, s.ambient_.size(), p);
  s.gens_ = std::move(rows);
  s.group_ = FiniteAbelianGroup(Vec(s.gens_.size(), p));
  return s;
}

Subgroup Subgroup::generated_by(Vec ambient_moduli, const std::vector<Vec>& generators) {
  if (std::int64_t p = common_prime(ambient_moduli)) return span_mod_prime(std::move(ambient_moduli), p, generators);
  Subgroup s;
  s.ambient_ = std::move(ambient_moduli);
  const std::size_t n = s.ambient_.size();
  const std::size_t l = generators.size();
  if (l > 0 && n > 0) {
    // Relations among generators: kernel of [G | diag(a)] projected to G part.
    IntMatrix w(n, l + n);
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t i = 0; i < n; ++i) w(i, j) = mod_floor(generators[j][i], s.ambient_[i]);
    for (std::size_t i = 0; i < n; ++i) w(i, l + i) = s.ambient_[i];
    IntMatrix ker = integer_kernel(w);
    IntMatrix rel(l, ker.cols());
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t c = 0; c < ker.cols(); ++c) rel(i, c) = ker(i, c);
    Cokernel ck = cokernel(rel);
    s.group_ = ck.group;
    for (std::size_t t = 0; t < ck.group.rank(); ++t) {
      Vec g(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < l; ++j) acc += ck.lift(j, t) * generators[j][i];
        acc %= s.ambient_[i];
        if (acc < 0) acc += s.ambient_[i];
        g[i] = static_cast<std::int64_t>(acc);
      }
      s.gens_.push_back(std::move(g));
    }
  }
  s.build_solver();
  return s;
}

Subgroup Subgroup::kernel(Vec ambient_moduli, const Vec& target_moduli, const std::vector<Vec>& images) {
  const std::size_t n = ambient_moduli.size();
  const std::size_t m = target_moduli.size();
  if (images.size() != n) throw Error(ErrorKind::InvalidArgument, "kernel: image count mismatch");
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < m; ++r)
    if (target_moduli[r] > 1) rows.push_back(r);
  if (rows.empty()) return whole(std::move(ambient_moduli));
  if (std::int64_t p = common_prime(ambient_moduli, target_moduli)) {
    // Null space mod p from the echelon form of the constraint rows.
    std::vector<Vec> cons;
    for (auto r : rows) {
      Vec c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = images[j][r];
      cons.push_back(std::move(c));
    }
    auto piv = rref_mod(cons, n, p);
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      Vec v(n, 0);
      v[f] = 1;
      for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = mod_floor(-cons[k][f], p);
      basis.push_back(std::move(v));
    }
    return span_mod_prime(std::move(ambient_moduli), p, basis);
  }
  IntMatrix w(rows.size(), n + rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) w(k, j) = mod_floor(images[j][rows[k]], target_moduli[rows[k]]);
    w(k, n + k) = target_moduli[rows[k]];
  }
  IntMatrix ker = integer_kernel(w);
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Vec g(n);
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = ker(j, c) % ambient_moduli[j];
      if (v < 0) v += ambient_moduli[j];
      g[j] = static_cast<std::int64_t>(v);
      nonzero |= g[j] != 0;
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  return generated_by(std::move(ambient_moduli), gens);
}

void Subgroup::build_solver() {
  const std::size_t n = ambient_.size();
  const std::size_t k = group_.rank();
  pivots_.clear();
  row_mod_.clear();
  p_rows_.clear();
  q_rows_.clear();
  if (n == 0) return;
  IntMatrix w(n, k + n);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < n; ++i) w(i, t) = gens_[t][i];
  for (std::size_t i = 0; i < n; ++i) w(i, k + i) = ambient_[i];
  SnfResult r = snf(w, {.p = true, .p_inv = false, .q = true, .q_inv = false});
  p_exact_ = r.p;
  q_exact_ = r.q;
  d_exact_.clear();
  for (std::size_t i = 0; i < n; ++i) d_exact_.push_back(r.d(i, i));
  const std::int64_t e = group_.exponent();
  fast_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& s = r.d(i, i);
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "subgroup solver: singular system");
    Integer mod = s * e;
    if (mod > (Integer(1) << 40)) {
      fast_ = false;
      break;
    }
    pivots_.push_back(static_cast<std::int64_t>(s));
    row_mod_.push_back(static_cast<std::int64_t>(mod));
    Vec row(n);
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = r.p(i, j) % mod;
      if (v < 0) v += mod;
      row[j] = static_cast<std::int64_t>(v);
    }
    p_rows_.push_back(std::move(row));
  }
  if (!fast_) return;
  for (std::size_t t = 0; t < k; ++t) {
    Vec row(n);
    for (std::size_t i = 0; i < n; ++i) {
      Integer v = r.q(t, i) % group_.factor(t);
      if (v < 0) v += group_.factor(t);
      row[i] = static_cast<std::int64_t>(v);
    }
    q_rows_.push_back(std::move(row));
  }
}

Vec Subgroup::embed(const Vec& coords) const {
  const std::size_t n = ambient_.size();
  Vec x(n, 0);
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (!coords[t]) continue;
    for (std::size_t i = 0; i < n; ++i)
      x[i] = static_cast<std::int64_t>((x[i] + static_cast<__int128>(coords[t]) * gens_[t][i]) % ambient_[i]);
  }
  return x;
}

std::optional<Vec> Subgroup::coordinates(const Vec& ambient) const {
  const std::size_t n = ambient_.size();
  const std::size_t k = group_.rank();
  if (n == 0) return Vec{};
  if (prime_) {
    Vec c(k);
    Vec rest(n);
    for (std::size_t i = 0; i < n; ++i) rest[i] = mod_floor(ambient[i], prime_);
    for (std::size_t t = 0; t < k; ++t) {
      c[t] = rest[pivot_cols_[t]];
      if (!c[t]) continue;
      for (std::size_t i = 0; i < n; ++i) rest[i] = mod_floor(rest[i] - c[t] * gens_[t][i], prime_);
    }
    for (auto v : rest)
      if (v) return std::nullopt;
    return c;
  }
  if (fast_) {
    Vec w(n);
    for (std::size_t i = 0; i < n; ++i) {
      __int128 z = 0;
      const std::int64_t mod = row_mod_[i];
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t xj = mod_floor(ambient[j], ambient_[j]);
        if (xj) z = (z + static_cast<__int128>(p_rows_[i][j]) * xj) % mod;
      }
      auto zz = static_cast<std::int64_t>(z);
      if (zz % pivots_[i] != 0) return std::nullopt;
      w[i] = zz / pivots_[i];
    }
    Vec c(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (w[i]) acc += static_cast<__int128>(q_rows_[t][i]) * w[i];
      c[t] = mod_floor(static_cast<std::int64_t>(acc % group_.factor(t)), group_.factor(t));
    }
    return c;
  }
  std::vector<Integer> z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i] += p_exact_(i, j) * mod_floor(ambient[j], ambient_[j]);
  Vec c(k, 0);
  std::vector<Integer> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] % d_exact_[i] != 0) return std::nullopt;
    w[i] = z[i] / d_exact_[i];
  }
  for (std::size_t t = 0; t < k; ++t) {
    Integer acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += q_exact_(t, i) * w[i];
    acc %= group_.factor(t);
    if (acc < 0) acc += group_.factor(t);
    c[t] = static_cast<std::int64_t>(acc);
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// g = gcd(m, a_1, ..., a_k) and lambda with sum lambda_s a_s = g (mod m).
std::pair<std::int64_t, Vec> gcd_combination(const Vec& a, std::int64_t m) {
  std::int64_t g = m;
  Vec lambda(a.size(), 0);
  for (std::size_t s = 0; s < a.size(); ++s) {
    std::int64_t as = mod_floor(a[s], m);
    if (as == 0) continue;
    std::int64_t old_r = g, r = as, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_x, x) = std::make_pair(x, old_x - q * x);
      std::tie(old_y, y) = std::make_pair(y, old_y - q * y);
    }
    for (std::size_t u = 0; u < s; ++u)
      lambda[u] = mod_floor(static_cast<std::int64_t>((static_cast<__int128>(lambda[u]) * old_x) % m), m);
    lambda[s] = mod_floor(old_y, m);
    g = old_r;
  }
  return {g, lambda};
}

}  // namespace

Vec lexmin_in_coset(const FiniteAbelianGroup& group, Vec base, const std::vector<Vec>& subgroup_gens) {
  group.reduce(base);
  Subgroup k = Subgroup::generated_by(group.factors(), subgroup_gens);
  for (std::size_t t = 0; t < group.rank(); ++t) {
    const std::int64_t d = group.factor(t);
    Vec coords_t;
    for (const Vec& g : k.generators()) coords_t.push_back(g[t]);
    auto [g, lambda] = gcd_combination(coords_t, d);
    std::int64_t target = base[t] % g;
    std::int64_t delta = mod_floor(target - base[t], d);
    if (delta != 0) {
      std::int64_t mult = delta / g;
      Vec shift(group.rank(), 0);
      for (std::size_t s = 0; s < k.generators().size(); ++s)
        if (lambda[s])
          group.axpy(shift, static_cast<std::int64_t>((static_cast<__int128>(lambda[s]) * mult) % d),
                     k.generators()[s]);
      base = group.add(base, shift);
    }
    // Restrict to subgroup elements vanishing in coordinate t.
    std::vector<Vec> images;
    for (const Vec& gen : k.generators()) images.push_back(Vec{gen[t]});
    Subgroup inner = Subgroup::kernel(k.group().factors(), Vec{d}, images);
    std::vector<Vec> next;
    for (const Vec& c : inner.generators()) next.push_back(k.embed(c));
    k = Subgroup::generated_by(group.factors(), next);
  }
  return base;
}

}  // namespace descent_kit
