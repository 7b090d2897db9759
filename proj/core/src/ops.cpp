// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "chronogan/errors.hpp"

namespace chronogan::ad {
namespace {

template <typename Real>
using RowMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Real>
using MapMatrix = Eigen::Map<RowMatrix<Real>>;
template <typename Real>
using ConstMapMatrix = Eigen::Map<const RowMatrix<Real>>;

template <typename Real>
Graph<Real>& same_graph(const Var<Real>& a, const Var<Real>& b) {
  if (!a || !b) throw ContractError("operation on an unbound Var");
  if (a.graph() != b.graph()) throw ContractError("operands belong to different graphs");
  return *a.graph();
}

template <typename Real>
Graph<Real>& graph_of(const Var<Real>& a) {
  if (!a) throw ContractError("operation on an unbound Var");
  return *a.graph();
}

// Splits `shape` around `axis` into (outer, length, inner) extents.
struct AxisView {
  std::size_t outer = 1;
  std::size_t length = 1;
  std::size_t inner = 1;
};

AxisView axis_view(const Shape& shape, std::size_t axis, const char* op) {
  if (axis >= shape.size()) {
    throw ShapeError(std::string(op) + ": axis " + std::to_string(axis) + " out of range for " + to_string(shape));
  }
  AxisView v;
  for (std::size_t i = 0; i < axis; ++i) v.outer *= shape[i];
  v.length = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) v.inner *= shape[i];
  return v;
}

Shape drop_axis(const Shape& shape, std::size_t axis) {
  Shape out = shape;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(axis));
  return out;
}

bool is_suffix(const Shape& small, const Shape& big) {
  if (small.size() > big.size()) return false;
  return std::equal(small.rbegin(), small.rend(), big.rbegin());
}

// Result shape of a broadcasting binary operation.
Shape broadcast_shape(const Shape& a, const Shape& b, const char* op) {
  if (a == b) return a;
  const std::size_t na = element_count(a);
  const std::size_t nb = element_count(b);
  if (nb == 1 || is_suffix(b, a)) return a;
  if (na == 1 || is_suffix(a, b)) return b;
  throw ShapeError(std::string(op) + ": cannot broadcast " + to_string(a) + " with " + to_string(b));
}

// Calls f(i, ia, ib) for every output element, where one operand may repeat.
template <typename F>
void for_each_broadcast(std::size_t n, std::size_t na, std::size_t nb, F&& f) {
  if (na == n && nb == n) {
    for (std::size_t i = 0; i < n; ++i) f(i, i, i);
  } else if (na == n) {
    for (std::size_t r = 0, i = 0; r < n / nb; ++r) {
      for (std::size_t j = 0; j < nb; ++j, ++i) f(i, i, j);
    }
  } else {
    for (std::size_t r = 0, i = 0; r < n / na; ++r) {
      for (std::size_t j = 0; j < na; ++j, ++i) f(i, j, i);
    }
  }
}

// Element-wise binary op. `fwd(x, y)` gives the value, `dx(x, y, z)` and
// `dy(x, y, z)` the local partials, where z is the forward result.
template <typename Real, typename Fwd, typename Dx, typename Dy>
Var<Real> binary(Var<Real> a, Var<Real> b, const char* op, Fwd fwd, Dx dx, Dy dy) {
  Graph<Real>& g = same_graph(a, b);
  const Tensor<Real>& va = a.value();
  const Tensor<Real>& vb = b.value();
  Shape shape = broadcast_shape(va.shape(), vb.shape(), op);
  Tensor<Real> out(shape);
  const std::size_t n = out.size();
  const std::size_t na = va.size();
  const std::size_t nb = vb.size();
  {
    const Real* pa = va.data();
    const Real* pb = vb.data();
    Real* po = out.data();
    for_each_broadcast(n, na, nb, [&](std::size_t i, std::size_t ia, std::size_t ib) { po[i] = fwd(pa[ia], pb[ib]); });
  }
  const std::size_t ids[] = {a.id(), b.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), idb = b.id(), n, na, nb, dx, dy](Graph<Real>& gr, std::size_t self) {
                    const Real* pa = gr.value(ida).data();
                    const Real* pb = gr.value(idb).data();
                    const Real* pz = gr.value(self).data();
                    const Real* pg = gr.grad(self).data();
                    if (gr.requires_grad(ida)) {
                      Real* ga = gr.grad(ida).data();
                      for_each_broadcast(n, na, nb, [&](std::size_t i, std::size_t ia, std::size_t ib) {
                        ga[ia] += pg[i] * dx(pa[ia], pb[ib], pz[i]);
                      });
                    }
                    if (gr.requires_grad(idb)) {
                      Real* gb = gr.grad(idb).data();
                      for_each_broadcast(n, na, nb, [&](std::size_t i, std::size_t ia, std::size_t ib) {
                        gb[ib] += pg[i] * dy(pa[ia], pb[ib], pz[i]);
                      });
                    }
                  },
                  op);
}

template <typename Real>
using ConstArrayMap = Eigen::Map<const Eigen::Array<Real, Eigen::Dynamic, 1>>;
template <typename Real>
using ArrayMap = Eigen::Map<Eigen::Array<Real, Eigen::Dynamic, 1>>;

// Element-wise unary op; `d(x, z)` is the local derivative given input and output.
// `fwd` maps the whole input buffer to the output buffer so it can vectorize.
template <typename Real, typename Fwd, typename D>
Var<Real> unary_bulk(Var<Real> a, const char* op, Fwd fwd, D d) {
  Graph<Real>& g = graph_of(a);
  const Tensor<Real>& va = a.value();
  Tensor<Real> out(va.shape());
  const auto n = static_cast<Eigen::Index>(va.size());
  fwd(ConstArrayMap<Real>(va.data(), n), ArrayMap<Real>(out.data(), n));
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), d](Graph<Real>& gr, std::size_t self) {
                    const Tensor<Real>& x = gr.value(ida);
                    const Real* px = x.data();
                    const Real* pz = gr.value(self).data();
                    const Real* pg = gr.grad(self).data();
                    Real* ga = gr.grad(ida).data();
                    for (std::size_t i = 0; i < x.size(); ++i) ga[i] += pg[i] * d(px[i], pz[i]);
                  },
                  op);
}

template <typename Real, typename Fwd, typename D>
Var<Real> unary(Var<Real> a, const char* op, Fwd fwd, D d) {
  return unary_bulk(
      a, op, [fwd](ConstArrayMap<Real> in, ArrayMap<Real> out) { out = in.unaryExpr(fwd); }, d);
}

}  // namespace

template <typename Real>
Var<Real> matmul(Var<Real> a, Var<Real> b) {
  Graph<Real>& g = same_graph(a, b);
  const Tensor<Real>& va = a.value();
  const Tensor<Real>& vb = b.value();
  if (va.rank() != 2 || vb.rank() != 2 || va.dim(1) != vb.dim(0)) {
    throw ShapeError("matmul: incompatible shapes " + to_string(va.shape()) + " and " + to_string(vb.shape()));
  }
  const Eigen::Index m = static_cast<Eigen::Index>(va.dim(0));
  const Eigen::Index k = static_cast<Eigen::Index>(va.dim(1));
  const Eigen::Index n = static_cast<Eigen::Index>(vb.dim(1));
  Tensor<Real> out(Shape{va.dim(0), vb.dim(1)});
  MapMatrix<Real>(out.data(), m, n).noalias() =
      ConstMapMatrix<Real>(va.data(), m, k) * ConstMapMatrix<Real>(vb.data(), k, n);
  const std::size_t ids[] = {a.id(), b.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), idb = b.id(), m, k, n](Graph<Real>& gr, std::size_t self) {
                    ConstMapMatrix<Real> dz(gr.grad(self).data(), m, n);
                    if (gr.requires_grad(ida)) {
                      MapMatrix<Real>(gr.grad(ida).data(), m, k).noalias() +=
                          dz * ConstMapMatrix<Real>(gr.value(idb).data(), k, n).transpose();
                    }
                    if (gr.requires_grad(idb)) {
                      MapMatrix<Real>(gr.grad(idb).data(), k, n).noalias() +=
                          ConstMapMatrix<Real>(gr.value(ida).data(), m, k).transpose() * dz;
                    }
                  },
                  "matmul");
}

template <typename Real>
Var<Real> add(Var<Real> a, Var<Real> b) {
  return binary(
      a, b, "add", [](Real x, Real y) { return x + y; }, [](Real, Real, Real) { return Real(1); },
      [](Real, Real, Real) { return Real(1); });
}

template <typename Real>
Var<Real> sub(Var<Real> a, Var<Real> b) {
  return binary(
      a, b, "sub", [](Real x, Real y) { return x - y; }, [](Real, Real, Real) { return Real(1); },
      [](Real, Real, Real) { return Real(-1); });
}

template <typename Real>
Var<Real> mul(Var<Real> a, Var<Real> b) {
  return binary(
      a, b, "mul", [](Real x, Real y) { return x * y; }, [](Real, Real y, Real) { return y; },
      [](Real x, Real, Real) { return x; });
}

template <typename Real>
Var<Real> div(Var<Real> a, Var<Real> b) {
  return binary(
      a, b, "div", [](Real x, Real y) { return x / y; }, [](Real, Real y, Real) { return Real(1) / y; },
      [](Real, Real y, Real z) { return -z / y; });
}

template <typename Real>
Var<Real> scale(Var<Real> a, Real c) {
  return unary(a, "scale", [c](Real x) { return c * x; }, [c](Real, Real) { return c; });
}

template <typename Real>
Var<Real> add_scalar(Var<Real> a, Real c) {
  return unary(a, "add_scalar", [c](Real x) { return x + c; }, [](Real, Real) { return Real(1); });
}

template <typename Real>
Var<Real> concat(std::span<const Var<Real>> parts, std::size_t axis) {
  if (parts.empty()) throw ContractError("concat of zero tensors");
  Graph<Real>& g = graph_of(parts[0]);
  const Shape& first = parts[0].shape();
  if (axis >= first.size()) throw ShapeError("concat: axis out of range for " + to_string(first));
  Shape shape = first;
  shape[axis] = 0;
  std::vector<std::size_t> ids;
  std::vector<std::size_t> widths;  // per part: length(axis) * inner
  for (const Var<Real>& p : parts) {
    same_graph(parts[0], p);
    const Shape& s = p.shape();
    if (s.size() != first.size()) throw ShapeError("concat: rank mismatch");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != axis && s[i] != first[i]) {
        throw ShapeError("concat: " + to_string(s) + " does not match " + to_string(first));
      }
    }
    shape[axis] += s[axis];
    ids.push_back(p.id());
  }
  const AxisView v = axis_view(shape, axis, "concat");
  for (const Var<Real>& p : parts) widths.push_back(p.shape()[axis] * v.inner);
  const std::size_t row = v.length * v.inner;
  Tensor<Real> out(shape);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Real* src = parts[k].value().data();
    for (std::size_t o = 0; o < v.outer; ++o) {
      std::copy_n(src + o * widths[k], widths[k], out.data() + o * row + offset);
    }
    offset += widths[k];
  }
  return g.record(std::move(out), ids,
                  [ids, widths, outer = v.outer, row](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    std::size_t off = 0;
                    for (std::size_t k = 0; k < ids.size(); ++k) {
                      if (gr.requires_grad(ids[k])) {
                        Real* dst = gr.grad(ids[k]).data();
                        for (std::size_t o = 0; o < outer; ++o) {
                          const Real* s = dz + o * row + off;
                          Real* d = dst + o * widths[k];
                          for (std::size_t j = 0; j < widths[k]; ++j) d[j] += s[j];
                        }
                      }
                      off += widths[k];
                    }
                  },
                  "concat");
}

template <typename Real>
Var<Real> slice(Var<Real> a, std::size_t axis, std::size_t begin, std::size_t end) {
  Graph<Real>& g = graph_of(a);
  const Shape& in = a.shape();
  const AxisView v = axis_view(in, axis, "slice");
  if (begin >= end || end > v.length) {
    throw ShapeError("slice: range [" + std::to_string(begin) + ", " + std::to_string(end) + ") invalid for " +
                     to_string(in));
  }
  Shape shape = in;
  shape[axis] = end - begin;
  const std::size_t in_row = v.length * v.inner;
  const std::size_t width = (end - begin) * v.inner;
  const std::size_t offset = begin * v.inner;
  Tensor<Real> out(shape);
  const Real* src = a.value().data();
  for (std::size_t o = 0; o < v.outer; ++o) std::copy_n(src + o * in_row + offset, width, out.data() + o * width);
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), outer = v.outer, in_row, width, offset](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    Real* da = gr.grad(ida).data();
                    for (std::size_t o = 0; o < outer; ++o) {
                      Real* d = da + o * in_row + offset;
                      const Real* s = dz + o * width;
                      for (std::size_t j = 0; j < width; ++j) d[j] += s[j];
                    }
                  },
                  "slice");
}

template <typename Real>
Var<Real> stack(std::span<const Var<Real>> parts, std::size_t axis) {
  if (parts.empty()) throw ContractError("stack of zero tensors");
  Graph<Real>& g = graph_of(parts[0]);
  const Shape& first = parts[0].shape();
  if (axis > first.size()) throw ShapeError("stack: axis out of range for " + to_string(first));
  std::vector<std::size_t> ids;
  for (const Var<Real>& p : parts) {
    same_graph(parts[0], p);
    if (p.shape() != first) throw ShapeError("stack: " + to_string(p.shape()) + " vs " + to_string(first));
    ids.push_back(p.id());
  }
  Shape shape = first;
  shape.insert(shape.begin() + static_cast<std::ptrdiff_t>(axis), parts.size());
  const AxisView v = axis_view(shape, axis, "stack");
  const std::size_t count = parts.size();
  Tensor<Real> out(shape);
  for (std::size_t k = 0; k < count; ++k) {
    const Real* src = parts[k].value().data();
    for (std::size_t o = 0; o < v.outer; ++o) {
      std::copy_n(src + o * v.inner, v.inner, out.data() + (o * count + k) * v.inner);
    }
  }
  return g.record(std::move(out), ids,
                  [ids, outer = v.outer, inner = v.inner, count](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    for (std::size_t k = 0; k < count; ++k) {
                      if (!gr.requires_grad(ids[k])) continue;
                      Real* d = gr.grad(ids[k]).data();
                      for (std::size_t o = 0; o < outer; ++o) {
                        const Real* s = dz + (o * count + k) * inner;
                        Real* dd = d + o * inner;
                        for (std::size_t j = 0; j < inner; ++j) dd[j] += s[j];
                      }
                    }
                  },
                  "stack");
}

template <typename Real>
Var<Real> reshape(Var<Real> a, Shape shape) {
  Graph<Real>& g = graph_of(a);
  Tensor<Real> out = a.value().reshaped(std::move(shape));
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id()](Graph<Real>& gr, std::size_t self) {
                    const Tensor<Real>& dz = gr.grad(self);
                    Real* da = gr.grad(ida).data();
                    for (std::size_t i = 0; i < dz.size(); ++i) da[i] += dz[i];
                  },
                  "reshape");
}

template <typename Real>
Var<Real> broadcast(Var<Real> a, std::size_t axis, std::size_t n) {
  Graph<Real>& g = graph_of(a);
  if (n == 0) throw ShapeError("broadcast: zero-length axis");
  Shape shape = a.shape();
  if (axis > shape.size()) throw ShapeError("broadcast: axis out of range for " + to_string(shape));
  shape.insert(shape.begin() + static_cast<std::ptrdiff_t>(axis), n);
  const AxisView v = axis_view(shape, axis, "broadcast");
  Tensor<Real> out(shape);
  const Real* src = a.value().data();
  for (std::size_t o = 0; o < v.outer; ++o) {
    for (std::size_t k = 0; k < n; ++k) std::copy_n(src + o * v.inner, v.inner, out.data() + (o * n + k) * v.inner);
  }
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), outer = v.outer, inner = v.inner, n](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    Real* da = gr.grad(ida).data();
                    for (std::size_t o = 0; o < outer; ++o) {
                      for (std::size_t k = 0; k < n; ++k) {
                        const Real* s = dz + (o * n + k) * inner;
                        for (std::size_t j = 0; j < inner; ++j) da[o * inner + j] += s[j];
                      }
                    }
                  },
                  "broadcast");
}

template <typename Real>
Var<Real> sigmoid(Var<Real> a) {
  return unary_bulk(
      a, "sigmoid", [](ConstArrayMap<Real> x, ArrayMap<Real> z) { z = x.logistic(); },
      [](Real, Real z) { return z * (Real(1) - z); });
}

template <typename Real>
Var<Real> tanh(Var<Real> a) {
  return unary_bulk(
      a, "tanh", [](ConstArrayMap<Real> x, ArrayMap<Real> z) { z = x.tanh(); },
      [](Real, Real z) { return Real(1) - z * z; });
}

template <typename Real>
Var<Real> log(Var<Real> a) {
  for (Real x : a.value().values()) {
    if (x < Real(0)) throw DomainError("log of a negative value");
  }
  return unary(a, "log", [](Real x) { return std::log(x); }, [](Real x, Real) { return Real(1) / x; });
}

template <typename Real>
Var<Real> sqrt(Var<Real> a) {
  for (Real x : a.value().values()) {
    if (x < Real(0)) throw DomainError("sqrt of a negative value");
  }
  return unary(
      a, "sqrt", [](Real x) { return std::sqrt(x); },
      [](Real, Real z) { return z > Real(0) ? Real(0.5) / z : Real(0); });
}

template <typename Real>
Var<Real> square(Var<Real> a) {
  return unary(a, "square", [](Real x) { return x * x; }, [](Real x, Real) { return Real(2) * x; });
}

template <typename Real>
Var<Real> abs(Var<Real> a) {
  return unary(
      a, "abs", [](Real x) { return std::abs(x); },
      [](Real x, Real) { return x > Real(0) ? Real(1) : (x < Real(0) ? Real(-1) : Real(0)); });
}

template <typename Real>
Var<Real> clamp(Var<Real> a, Real lo, Real hi) {
  if (!(lo <= hi)) throw ContractError("clamp: lo > hi");
  return unary(
      a, "clamp", [lo, hi](Real x) { return std::clamp(x, lo, hi); },
      [lo, hi](Real x, Real) { return (x >= lo && x <= hi) ? Real(1) : Real(0); });
}

template <typename Real>
Var<Real> sum(Var<Real> a, std::size_t axis) {
  Graph<Real>& g = graph_of(a);
  const AxisView v = axis_view(a.shape(), axis, "sum");
  Tensor<Real> out(drop_axis(a.shape(), axis));
  const Real* x = a.value().data();
  Real* z = out.data();
  for (std::size_t o = 0; o < v.outer; ++o) {
    for (std::size_t k = 0; k < v.length; ++k) {
      const Real* row = x + (o * v.length + k) * v.inner;
      for (std::size_t j = 0; j < v.inner; ++j) z[o * v.inner + j] += row[j];
    }
  }
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), v](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    Real* da = gr.grad(ida).data();
                    for (std::size_t o = 0; o < v.outer; ++o) {
                      for (std::size_t k = 0; k < v.length; ++k) {
                        Real* row = da + (o * v.length + k) * v.inner;
                        for (std::size_t j = 0; j < v.inner; ++j) row[j] += dz[o * v.inner + j];
                      }
                    }
                  },
                  "sum");
}

template <typename Real>
Var<Real> mean(Var<Real> a, std::size_t axis) {
  const AxisView v = axis_view(a.shape(), axis, "mean");
  return scale(sum(a, axis), Real(1) / static_cast<Real>(v.length));
}

template <typename Real>
Var<Real> variance(Var<Real> a, std::size_t axis) {
  Graph<Real>& g = graph_of(a);
  const AxisView v = axis_view(a.shape(), axis, "variance");
  const Real inv_n = Real(1) / static_cast<Real>(v.length);
  Tensor<Real> means(drop_axis(a.shape(), axis));
  Tensor<Real> out(drop_axis(a.shape(), axis));
  const Real* x = a.value().data();
  for (std::size_t o = 0; o < v.outer; ++o) {
    for (std::size_t j = 0; j < v.inner; ++j) {
      Real m = 0;
      for (std::size_t k = 0; k < v.length; ++k) m += x[(o * v.length + k) * v.inner + j];
      m *= inv_n;
      Real s = 0;
      for (std::size_t k = 0; k < v.length; ++k) {
        const Real d = x[(o * v.length + k) * v.inner + j] - m;
        s += d * d;
      }
      means[o * v.inner + j] = m;
      out[o * v.inner + j] = s * inv_n;
    }
  }
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), v, inv_n, means = std::move(means)](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    const Real* xs = gr.value(ida).data();
                    Real* da = gr.grad(ida).data();
                    for (std::size_t o = 0; o < v.outer; ++o) {
                      for (std::size_t k = 0; k < v.length; ++k) {
                        for (std::size_t j = 0; j < v.inner; ++j) {
                          const std::size_t r = o * v.inner + j;
                          const std::size_t i = (o * v.length + k) * v.inner + j;
                          da[i] += dz[r] * Real(2) * (xs[i] - means[r]) * inv_n;
                        }
                      }
                    }
                  },
                  "variance");
}

template <typename Real>
Var<Real> median(Var<Real> a, std::size_t axis) {
  Graph<Real>& g = graph_of(a);
  const AxisView v = axis_view(a.shape(), axis, "median");
  const std::size_t cells = v.outer * v.inner;
  const bool even = v.length % 2 == 0;
  const std::size_t hi = v.length / 2;
  const std::size_t lo = even ? hi - 1 : hi;
  // Flat input indices of the lower and upper middle elements per output cell.
  std::vector<std::size_t> picks(2 * cells);
  Tensor<Real> out(drop_axis(a.shape(), axis));
  const Real* x = a.value().data();
  std::vector<std::size_t> order(v.length);
  for (std::size_t o = 0; o < v.outer; ++o) {
    for (std::size_t j = 0; j < v.inner; ++j) {
      auto at = [&](std::size_t k) { return (o * v.length + k) * v.inner + j; };
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return x[at(p)] < x[at(q)]; });
      const std::size_t r = o * v.inner + j;
      picks[2 * r] = at(order[lo]);
      picks[2 * r + 1] = at(order[hi]);
      out[r] = (x[picks[2 * r]] + x[picks[2 * r + 1]]) / Real(2);
    }
  }
  const std::size_t ids[] = {a.id()};
  return g.record(std::move(out), ids,
                  [ida = a.id(), cells, picks = std::move(picks)](Graph<Real>& gr, std::size_t self) {
                    const Real* dz = gr.grad(self).data();
                    Real* da = gr.grad(ida).data();
                    for (std::size_t r = 0; r < cells; ++r) {
                      da[picks[2 * r]] += dz[r] / Real(2);
                      da[picks[2 * r + 1]] += dz[r] / Real(2);
                    }
                  },
                  "median");
}

template <typename Real>
Var<Real> sum_all(Var<Real> a) {
  Graph<Real>& g = graph_of(a);
  Real s = 0;
  for (Real x : a.value().values()) s += x;
  const std::size_t ids[] = {a.id()};
  return g.record(Tensor<Real>::scalar(s), ids,
                  [ida = a.id()](Graph<Real>& gr, std::size_t self) {
                    const Real dz = gr.grad(self)[0];
                    for (Real& d : gr.grad(ida).values()) d += dz;
                  },
                  "sum_all");
}

template <typename Real>
Var<Real> mean_all(Var<Real> a) {
  return scale(sum_all(a), Real(1) / static_cast<Real>(a.value().size()));
}

#define CHRONOGAN_INSTANTIATE_OPS(Real)                                                      \
  template Var<Real> matmul(Var<Real>, Var<Real>);                                           \
  template Var<Real> add(Var<Real>, Var<Real>);                                              \
  template Var<Real> sub(Var<Real>, Var<Real>);                                              \
  template Var<Real> mul(Var<Real>, Var<Real>);                                              \
  template Var<Real> div(Var<Real>, Var<Real>);                                              \
  template Var<Real> scale(Var<Real>, Real);                                                 \
  template Var<Real> add_scalar(Var<Real>, Real);                                            \
  template Var<Real> concat(std::span<const Var<Real>>, std::size_t);                        \
  template Var<Real> slice(Var<Real>, std::size_t, std::size_t, std::size_t);                \
  template Var<Real> stack(std::span<const Var<Real>>, std::size_t);                         \
  template Var<Real> reshape(Var<Real>, Shape);                                              \
  template Var<Real> broadcast(Var<Real>, std::size_t, std::size_t);                         \
  template Var<Real> sigmoid(Var<Real>);                                                     \
  template Var<Real> tanh(Var<Real>);                                                        \
  template Var<Real> log(Var<Real>);                                                         \
  template Var<Real> sqrt(Var<Real>);                                                        \
  template Var<Real> square(Var<Real>);                                                      \
  template Var<Real> abs(Var<Real>);                                                         \
  template Var<Real> clamp(Var<Real>, Real, Real);                                           \
  template Var<Real> sum(Var<Real>, std::size_t);                                            \
  template Var<Real> mean(Var<Real>, std::size_t);                                           \
  template Var<Real> variance(Var<Real>, std::size_t);                                       \
  template Var<Real> median(Var<Real>, std::size_t);                                         \
  template Var<Real> sum_all(Var<Real>);                                                     \
  template Var<Real> mean_all(Var<Real>);

CHRONOGAN_INSTANTIATE_OPS(float)
CHRONOGAN_INSTANTIATE_OPS(double)

#undef CHRONOGAN_INSTANTIATE_OPS

}  // namespace chronogan::ad
