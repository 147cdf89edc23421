#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace wfq {

// Dense row-major matrix of doubles. A (1 x n) tensor doubles as a vector.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

  static Tensor zeros(int r, int c) { return Tensor(r, c); }

  double* row(int i) { return v.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const { return v.data() + static_cast<size_t>(i) * cols; }

  double& at(int i, int j) { return v[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * cols + j]; }

  size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }

  void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

// y = x * W + b with W of shape (in x out); x has length in, y and b length out.
inline void affine(const double* x, const Tensor& w, const double* b, double* y) {
  for (int j = 0; j < w.cols; ++j) y[j] = b ? b[j] : 0.0;
  for (int i = 0; i < w.rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* wr = w.row(i);
    for (int j = 0; j < w.cols; ++j) y[j] += xi * wr[j];
  }
}

// Backward of affine: given dy, accumulate dW += x^T dy, db += dy, dx = W dy.
inline void affine_backward(const double* x, const Tensor& w, const double* dy,
                            Tensor& dw, double* db, double* dx) {
  assert(dw.rows == w.rows && dw.cols == w.cols);
  for (int j = 0; j < w.cols; ++j) db[j] += dy[j];
  for (int i = 0; i < w.rows; ++i) {
    const double xi = x[i];
    double* dwr = dw.row(i);
    const double* wr = w.row(i);
    double acc = 0.0;
    for (int j = 0; j < w.cols; ++j) {
      dwr[j] += xi * dy[j];
      acc += wr[j] * dy[j];
    }
    if (dx) dx[i] = acc;
  }
}

}  // namespace wfq
