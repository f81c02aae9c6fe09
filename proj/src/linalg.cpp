#include "dirac/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace dirac {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("vector length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

QVec operator+(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size());
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVec operator-(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size());
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVec operator-(const QVec& a) {
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

QVec operator*(const Rational& c, const QVec& a) {
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

QVec to_q(const IntVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(static_cast<long>(v[i]));
  return out;
}

bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntVec to_int(const QVec& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw DomainError("non-integral coordinate " + format(v[i]));
    if (!v[i].get_num().fits_slong_p()) throw DomainError("coordinate out of int64 range");
    out[i] = v[i].get_num().get_si();
  }
  return out;
}

mpz_class common_denominator(const QVec& v) {
  mpz_class d = 1;
  for (const auto& q : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

Rational dot(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const QVec& a, const IntVec& b) {
  require_same_size(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) s += a[i] * static_cast<long>(b[i]);
  return s;
}

QMatrix to_q(const IntMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(static_cast<long>(m(i, j)));
  return out;
}

QVec operator*(const QMatrix& m, const QVec& v) {
  require_same_size(m.cols(), v.size());
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

QVec operator*(const IntMatrix& m, const QVec& v) {
  require_same_size(m.cols(), v.size());
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s += v[j] * static_cast<long>(m(i, j));
    out[i] = s;
  }
  return out;
}

IntVec operator*(const IntMatrix& m, const IntVec& v) {
  require_same_size(m.cols(), v.size());
  IntVec out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require_same_size(a.cols(), b.rows());
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_size(a.cols(), b.rows());
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw DomainError("singular matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

QVec solve_in_row_span(const QMatrix& rows, const QVec& target) {
  // Least-squares normal equations are exact here because the rows are
  // independent: x = (R R^T)^{-1} R t, then verify.
  require_same_size(rows.cols(), target.size());
  const QMatrix rt = rows.transpose();
  const QMatrix gram = rows * rt;
  const QVec x = inverse(gram) * (rows * target);
  const QVec back = rt * x;
  if (back != target) throw DomainError("vector is not in the span of the given rows");
  return x;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const auto num = s.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational '" + original + "'");
  Rational q{mpz_class(std::string(num)), mpz_class(std::string(den))};
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + original + "'");
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

QVec parse_qvec(std::string_view text) {
  auto s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw DomainError("unbalanced brackets in '" + std::string(text) + "'");
    s = trim(s.substr(1, s.size() - 2));
  }
  QVec out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_rational(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

IntVec parse_intvec(std::string_view text) { return to_int(parse_qvec(text)); }

std::string format(const Rational& q) { return q.get_str(); }

std::string format(const QVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out;
}

std::string format(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string bracketed(const QVec& v) { return "[" + format(v) + "]"; }
std::string bracketed(const IntVec& v) { return "[" + format(v) + "]"; }

}  // namespace dirac
