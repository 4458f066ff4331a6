#include "bicotwist/linalg.hpp"

#include <map>
#include <numeric>

namespace bicotwist {

bool is_zero(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

Rref row_reduce(Mat m) {
  Rref out;
  const Index rows = m.rows(), cols = m.cols();
  Index lead = 0;
  for (Index col = 0; col < cols && lead < rows; ++col) {
    Index pivot = -1;
    for (Index r = lead; r < rows; ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead) m.row(pivot).swap(m.row(lead));
    Scalar inv = m(lead, col).inverse();
    for (Index c = col; c < cols; ++c) m(lead, c) *= inv;
    for (Index r = 0; r < rows; ++r) {
      if (r == lead || m(r, col).is_zero()) continue;
      Scalar factor = m(r, col);
      for (Index c = col; c < cols; ++c) m(r, c) -= factor * m(lead, c);
    }
    out.pivot_cols.push_back(col);
    ++lead;
  }
  out.mat = std::move(m);
  return out;
}

Index rank(const Mat& m) { return static_cast<Index>(row_reduce(m).pivot_cols.size()); }

Mat kernel(const Mat& m) {
  const Index cols = m.cols();
  Rref rr = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (Index c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Mat basis = Mat::Zero(cols, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    Index f = free_cols[k];
    basis(f, static_cast<Index>(k)) = Scalar(1);
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
      basis(rr.pivot_cols[r], static_cast<Index>(k)) = -rr.mat(static_cast<Index>(r), f);
  }
  return basis;
}

SolveResult solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error("solve: shape mismatch between matrix and right-hand side");
  const Index rows = a.rows(), cols = a.cols(), rhs = b.cols();
  Mat aug(rows, cols + rhs);
  aug.leftCols(cols) = a;
  aug.rightCols(rhs) = b;
  Rref rr = row_reduce(std::move(aug));

  SolveResult out;
  // Inconsistent iff some pivot lands in the RHS block.
  for (Index c : rr.pivot_cols)
    if (c >= cols) return out;

  Mat x = Mat::Zero(cols, rhs);
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
    for (Index j = 0; j < rhs; ++j)
      x(rr.pivot_cols[r], j) = rr.mat(static_cast<Index>(r), cols + j);

  if (!is_zero(Mat(a * x - b))) throw Error("solve: witness verification failed");
  out.exists = true;
  out.solution = std::move(x);
  return out;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw Error("inverse: matrix must be square");
  Mat id = Mat::Identity(m.rows(), m.cols());
  SolveResult s = solve(m, id);
  if (!s.exists || rank(m) != m.rows()) return std::nullopt;
  return s.solution;
}

Index Tensor::size() const {
  Index n = 1;
  for (Index d : dims) n *= d;
  return n;
}

Scalar& Tensor::at(const std::vector<Index>& idx) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
  return a[flat];
}

const Scalar& Tensor::at(const std::vector<Index>& idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
  return a[flat];
}

Mat Tensor::as_matrix() const {
  if (dims.size() != 2) throw Error("einsum result is not a matrix");
  Mat m(dims[0], dims[1]);
  for (Index i = 0; i < dims[0]; ++i)
    for (Index j = 0; j < dims[1]; ++j) m(i, j) = a[i * dims[1] + j];
  return m;
}

Tensor3 Tensor::as_tensor3() const {
  if (dims.size() != 3) throw Error("einsum result is not an order-3 tensor");
  Tensor3 t(dims[0], dims[1], dims[2]);
  t.a = a;
  return t;
}

TensorArg::TensorArg(const Mat& m) : dims{m.rows(), m.cols()}, data(nullptr) {
  // Eigen default storage is column-major; einsum reads row-major, so
  // matrices are staged into an owned buffer.
  owned = std::make_shared<std::vector<Scalar>>();
  owned->reserve(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) owned->push_back(m(i, j));
  data = owned->data();
}

TensorArg::TensorArg(const Tensor3& t) : dims{t.d0, t.d1, t.d2}, data(t.a.data()) {}
TensorArg::TensorArg(const Tensor& t) : dims(t.dims), data(t.a.data()) {}

TensorArg::TensorArg(const Vec& v) : dims{v.size()}, data(nullptr) {
  owned = std::make_shared<std::vector<Scalar>>();
  for (Index i = 0; i < v.size(); ++i) owned->push_back(v(i));
  data = owned->data();
}

Tensor einsum(const std::string& spec, const std::vector<TensorArg>& args) {
  auto arrow = spec.find("->");
  if (arrow == std::string::npos) throw Error("einsum: spec must contain '->'");
  std::string lhs = spec.substr(0, arrow);
  std::string rhs = spec.substr(arrow + 2);

  std::vector<std::string> operands;
  std::string cur;
  for (char ch : lhs) {
    if (ch == ',') {
      operands.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  operands.push_back(cur);
  if (operands.size() != args.size())
    throw Error("einsum: operand count does not match spec '" + spec + "'");

  std::map<char, Index> dim_of;
  for (std::size_t k = 0; k < operands.size(); ++k) {
    if (static_cast<std::size_t>(operands[k].size()) != args[k].dims.size())
      throw Error("einsum: operand " + std::to_string(k) + " rank mismatch in '" + spec + "'");
    for (std::size_t i = 0; i < operands[k].size(); ++i) {
      char name = operands[k][i];
      Index d = args[k].dims[i];
      auto it = dim_of.find(name);
      if (it == dim_of.end())
        dim_of[name] = d;
      else if (it->second != d)
        throw Error(std::string("einsum: index '") + name + "' has mismatched dimensions");
    }
  }
  for (char name : rhs)
    if (dim_of.find(name) == dim_of.end())
      throw Error(std::string("einsum: dangling output index '") + name + "'");

  std::vector<char> sum_indices;
  for (const auto& [name, d] : dim_of)
    if (rhs.find(name) == std::string::npos) sum_indices.push_back(name);

  Tensor out;
  for (char name : rhs) out.dims.push_back(dim_of[name]);
  out.a.assign(static_cast<std::size_t>(std::max<Index>(1, out.size())), Scalar(0));
  if (out.dims.empty()) out.dims = {};

  std::map<char, Index> pos;
  auto flat_of = [&](std::size_t k) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < operands[k].size(); ++i)
      flat = flat * args[k].dims[i] + pos[operands[k][i]];
    return flat;
  };

  std::vector<Index> out_idx(rhs.size(), 0);
  auto run_sum = [&](auto&& self, std::size_t si) -> Scalar {
    if (si == sum_indices.size()) {
      Scalar term(1);
      for (std::size_t k = 0; k < args.size(); ++k) {
        term *= args[k].data[flat_of(k)];
        if (term.is_zero()) return term;
      }
      return term;
    }
    Scalar acc(0);
    char name = sum_indices[si];
    for (Index v = 0; v < dim_of[name]; ++v) {
      pos[name] = v;
      acc += self(self, si + 1);
    }
    return acc;
  };

  auto run_out = [&](auto&& self, std::size_t oi) -> void {
    if (oi == rhs.size()) {
      std::size_t flat = 0;
      for (std::size_t i = 0; i < rhs.size(); ++i) flat = flat * dim_of[rhs[i]] + pos[rhs[i]];
      out.a[flat] = run_sum(run_sum, 0);
      return;
    }
    char name = rhs[oi];
    for (Index v = 0; v < dim_of[name]; ++v) {
      pos[name] = v;
      self(self, oi + 1);
    }
  };
  run_out(run_out, 0);
  return out;
}

}  // namespace bicotwist
