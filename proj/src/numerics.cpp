#include "sbo/numerics.hpp"

#include "sbo/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace sbo {

bool all_finite(const Vector& x) { return x.size() > 0 && x.allFinite(); }

void require_finite(const Vector& x, std::string_view what) {
  if (x.size() == 0) throw ContractViolation(std::string(what) + ": empty vector");
  if (!x.allFinite()) throw ContractViolation(std::string(what) + ": non-finite entry");
}

Vector matvec(const DenseMatrix& A, const Vector& x) {
  if (A.cols() != x.size()) {
    throw ContractViolation("matvec: A has " + std::to_string(A.cols()) + " columns but x has length " +
                            std::to_string(x.size()));
  }
  return A * x;
}

Vector matvec_t(const DenseMatrix& A, const Vector& y) {
  if (A.rows() != y.size()) {
    throw ContractViolation("matvec_t: A has " + std::to_string(A.rows()) + " rows but y has length " +
                            std::to_string(y.size()));
  }
  return A.transpose() * y;
}

double spectral_norm_sq(const DenseMatrix& A, PowerIterationOptions opts) {
  if (A.size() == 0 || A.isZero(0.0)) throw ContractViolation("spectral_norm_sq: A must be nonzero");
  if (!(opts.tol > 0.0)) throw ContractViolation("spectral_norm_sq: tol must be positive");

  Vector v = Vector::Ones(A.cols()) / std::sqrt(static_cast<double>(A.cols()));
  double rho = 0.0;
  double prev_step = -1.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    Vector w = A.transpose() * (A * v);
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) {
      // Start vector in the null space; restart on a different axis.
      v = Vector::Unit(A.cols(), it % A.cols());
      continue;
    }
    v = w / norm;
    const double step = std::abs(next - rho);
    rho = next;
    if (it == 0) {
      prev_step = step;
      continue;
    }
    // The Rayleigh quotient converges geometrically; bound the remaining
    // error by step·q/(1−q) with the observed ratio q.
    double q = prev_step > 0.0 ? step / prev_step : 0.0;
    q = std::min(q, 0.999);
    if (step * (1.0 + q / (1.0 - q)) <= opts.tol * rho) return rho;
    prev_step = step;
  }
  throw ConvergenceError("spectral_norm_sq: power iteration did not reach tol in " +
                             std::to_string(opts.max_iter) + " iterations",
                         rho);
}

Vector min_norm_ls(const DenseMatrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw ContractViolation("min_norm_ls: A.rows() != b.size()");
  Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? kPseudoinverseCutoff * s(0) : 0.0;
  Vector coeff = svd.matrixU().transpose() * b;
  for (Index i = 0; i < s.size(); ++i) coeff(i) = s(i) > cutoff ? coeff(i) / s(i) : 0.0;
  return svd.matrixV() * coeff;
}

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_rows(std::ostream& out, const DenseMatrix& A) {
  out << A.rows() << ' ' << A.cols() << '\n';
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (j) out << ' ';
      out << format_real(A(i, j));
    }
    out << '\n';
  }
}

bool next_nonblank(std::istream& in, std::string& text, int& line) {
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

double parse_real(std::string_view token, int line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("invalid real '" + std::string(token) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite entry '" + std::string(token) + "'", line);
  return v;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

void write_matrix(std::ostream& out, const DenseMatrix& A) { write_rows(out, A); }

void write_vector(std::ostream& out, const Vector& v) { write_rows(out, v.transpose()); }

DenseMatrix read_matrix(std::istream& in, int& line) {
  std::string text;
  if (!next_nonblank(in, text, line)) throw ParseError("expected matrix header 'm n'", line + 1);
  const auto header = split_ws(text);
  long long m = 0;
  long long n = 0;
  {
    std::istringstream hs(text);
    if (header.size() != 2 || !(hs >> m >> n) || m < 1 || n < 1) {
      throw ParseError("bad matrix header '" + text + "'", line);
    }
  }
  DenseMatrix A(m, n);
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, text)) throw ParseError("matrix ends after " + std::to_string(i) + " rows", line);
    ++line;
    const auto tokens = split_ws(text);
    if (static_cast<long long>(tokens.size()) != n) {
      throw ParseError("expected " + std::to_string(n) + " entries, found " + std::to_string(tokens.size()), line);
    }
    for (long long j = 0; j < n; ++j) A(i, j) = parse_real(tokens[j], line);
  }
  return A;
}

Vector read_vector(std::istream& in, int& line) {
  const int start = line + 1;
  DenseMatrix M = read_matrix(in, line);
  if (M.rows() != 1) throw ParseError("vector block must have m = 1", start);
  return M.row(0).transpose();
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Vector Rng::normal_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Vector Rng::uniform_vector(Index n, double lo, double hi) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
  return v;
}

DenseMatrix Rng::normal_matrix(Index rows, Index cols) {
  DenseMatrix M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = normal();
  return M;
}

}  // namespace sbo
