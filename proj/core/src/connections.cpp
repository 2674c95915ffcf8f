#include "gradweil/connections.hpp"

#include <string>

#include "gradweil/errors.hpp"

namespace gradweil {

namespace {

MatForm build_theta(const Algebroid& a, int rank, const std::vector<std::vector<std::vector<Poly>>>& g) {
  MatForm theta(1, rank, rank);
  for (int i = 0; i < a.rank(); ++i) {
    for (int al = 0; al < rank; ++al) {
      for (int be = 0; be < rank; ++be) {
        if (g[i][al][be].is_zero()) continue;
        theta.add(be, al, ScalarForm::basis(Mask{1} << i, g[i][al][be]));
      }
    }
  }
  return theta;
}

}  // namespace

LinearConnection::LinearConnection(AlgebroidPtr algebroid, int rank,
                                   std::vector<std::vector<std::vector<Poly>>> christoffel)
    : algebroid_(std::move(algebroid)), rank_(rank), christoffel_(std::move(christoffel)), theta_(1, rank, rank) {
  if (!algebroid_) throw StructuralError("connection without algebroid");
  if (rank < 0) throw StructuralError("negative bundle rank");
  if (static_cast<int>(christoffel_.size()) != algebroid_->rank()) {
    throw StructuralError("Christoffel data: expected " + std::to_string(algebroid_->rank()) + " frame slices");
  }
  for (const auto& slice : christoffel_) {
    if (static_cast<int>(slice.size()) != rank) throw StructuralError("Christoffel data: wrong fiber rank");
    for (const auto& row : slice) {
      if (static_cast<int>(row.size()) != rank) throw StructuralError("Christoffel data: wrong fiber rank");
    }
  }
  theta_ = build_theta(*algebroid_, rank_, christoffel_);
}

LinearConnection LinearConnection::trivial(AlgebroidPtr algebroid, int rank) {
  const int r = algebroid->rank();
  std::vector<std::vector<std::vector<Poly>>> g(
      r, std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, algebroid->zero())));
  return LinearConnection(std::move(algebroid), rank, std::move(g));
}

std::vector<Poly> LinearConnection::covariant(std::span<const Poly> a, std::span<const Poly> s) const {
  const Algebroid& alg = *algebroid_;
  std::vector<Poly> out(rank_, alg.zero());
  for (int i = 0; i < alg.rank(); ++i) {
    if (a[i].is_zero()) continue;
    for (int be = 0; be < rank_; ++be) {
      Poly acc = alg.anchor_apply(i, s[be]);
      for (int al = 0; al < rank_; ++al) acc = acc + s[al] * christoffel_[i][al][be];
      out[be] = out[be] + a[i] * acc;
    }
  }
  return out;
}

Form d_nabla(const LinearConnection& nabla, const Form& w) {
  if (w.rank() != nabla.rank()) throw StructuralError("d_nabla: rank mismatch");
  Form out(w.degree() + 1, w.rank());
  for (int b = 0; b < w.rank(); ++b) out.add(b, d_A(nabla.algebroid(), w[b]));
  out += wedge(nabla.connection_form(), w);
  return out;
}

MatForm curvature_frame_formula(const LinearConnection& nabla) {
  const Algebroid& a = nabla.algebroid();
  const int n = nabla.rank();
  MatForm r(2, n, n);
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = i + 1; j < a.rank(); ++j) {
      const Mask m = (Mask{1} << i) | (Mask{1} << j);
      for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
          Poly v = a.anchor_apply(i, nabla.gamma(j, al, be)) - a.anchor_apply(j, nabla.gamma(i, al, be));
          for (int ga = 0; ga < n; ++ga) {
            v = v + nabla.gamma(j, al, ga) * nabla.gamma(i, ga, be) - nabla.gamma(i, al, ga) * nabla.gamma(j, ga, be);
          }
          for (int k = 0; k < a.rank(); ++k) v = v - a.c(k, i, j) * nabla.gamma(k, al, be);
          if (!v.is_zero()) r.add(be, al, ScalarForm::basis(m, v));
        }
      }
    }
  }
  return r;
}

MatForm curvature(const LinearConnection& nabla) {
  const int n = nabla.rank();
  MatForm r(2, n, n);
  for (int al = 0; al < n; ++al) {
    const Form img = d_nabla(nabla, d_nabla(nabla, Form::section(n, al, nabla.algebroid().one())));
    for (int be = 0; be < n; ++be) r.add(be, al, img[be]);
  }
  if (!(r == curvature_frame_formula(nabla))) {
    throw InternalError("curvature: operator square and frame formula disagree");
  }
  return r;
}

LinearConnection induced_hom_connection(const LinearConnection& source, const LinearConnection& target) {
  if (source.algebroid_ptr() != target.algebroid_ptr() &&
      source.algebroid().rank() != target.algebroid().rank()) {
    throw StructuralError("induced_hom_connection: different algebroids");
  }
  const Algebroid& a = source.algebroid();
  const int n = source.rank();
  const int m = target.rank();
  const int rank = n * m;
  std::vector<std::vector<std::vector<Poly>>> g(
      a.rank(), std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, a.zero())));
  for (int i = 0; i < a.rank(); ++i) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        auto& row = g[i][r * n + c];
        for (int be = 0; be < m; ++be) row[be * n + c] = row[be * n + c] + target.gamma(i, r, be);
        for (int cc = 0; cc < n; ++cc) row[r * n + cc] = row[r * n + cc] - source.gamma(i, cc, c);
      }
    }
  }
  return LinearConnection(source.algebroid_ptr(), rank, std::move(g));
}

MatForm d_nabla_hom(const LinearConnection& source, const LinearConnection& target, const MatForm& k) {
  if (k.rows() != target.rank() || k.cols() != source.rank()) throw StructuralError("d_nabla_hom: shape mismatch");
  const Algebroid& a = source.algebroid();
  MatForm out(k.degree() + 1, k.rows(), k.cols());
  for (int r = 0; r < k.rows(); ++r) {
    for (int c = 0; c < k.cols(); ++c) out.add(r, c, d_A(a, k(r, c)));
  }
  out += wedge(target.connection_form(), k);
  MatForm tail = wedge(k, source.connection_form());
  if (k.degree() % 2 == 0) {
    out -= tail;
  } else {
    out += tail;
  }
  return out;
}

Form flatten(const MatForm& m) {
  Form out(m.degree(), m.rows() * m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out.add(r * m.cols() + c, m(r, c));
  }
  return out;
}

MatForm unflatten(const Form& f, int rows, int cols) {
  if (f.rank() != rows * cols) throw StructuralError("unflatten: rank mismatch");
  MatForm out(f.degree(), rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.add(r, c, f[r * cols + c]);
  }
  return out;
}

ConnectionUpToHomotopy::ConnectionUpToHomotopy(GradedBundle bundle, std::vector<LinearConnection> nablas,
                                               TotalForm d)
    : bundle_(std::move(bundle)), nablas_(std::move(nablas)), d_(std::move(d)) {
  if (static_cast<int>(nablas_.size()) != bundle_.size() || nablas_.empty()) {
    throw StructuralError("connection up to homotopy: need one connection per summand");
  }
  for (int l = 0; l < bundle_.size(); ++l) {
    if (nablas_[l].rank() != bundle_.rank(l)) throw StructuralError("connection rank differs from summand rank");
    if (nablas_[l].algebroid_ptr() != nablas_[0].algebroid_ptr()) {
      throw StructuralError("summand connections over different algebroids");
    }
  }
  if (!(d_.bundle() == bundle_)) throw StructuralError("D lives on a different bundle");
  if (d_.degree() != 1) throw StructuralError("D must have total degree 1");
}

ConnectionUpToHomotopy ConnectionUpToHomotopy::degree_preserving(GradedBundle bundle,
                                                                 std::vector<LinearConnection> nablas) {
  TotalForm d(bundle, 1);
  return ConnectionUpToHomotopy(std::move(bundle), std::move(nablas), std::move(d));
}

bool ConnectionUpToHomotopy::is_normalized() const {
  for (int l = 0; l < bundle_.size(); ++l) {
    if (d_.block(l, l) != nullptr) return false;
  }
  return true;
}

GradedForm cuth_apply(const ConnectionUpToHomotopy& conn, const GradedForm& w) {
  if (!(w.bundle() == conn.bundle())) throw StructuralError("cuth_apply: bundle mismatch");
  GradedForm out = wedge_apply(conn.form(), w);
  for (const auto& [l, f] : w.components()) out.add(l, d_nabla(conn.nabla(l), f));
  return out;
}

ConnectionUpToHomotopy normalize_cuth(const ConnectionUpToHomotopy& conn) {
  const GradedBundle& e = conn.bundle();
  std::vector<LinearConnection> nablas;
  TotalForm rest(e, 1);
  for (const auto& [key, m] : conn.form().blocks()) {
    if (key.first != key.second) rest.add_block(key.first, key.second, m);
  }
  for (int l = 0; l < e.size(); ++l) {
    const LinearConnection& nb = conn.nabla(l);
    const MatForm* m = conn.form().block(l, l);
    if (m == nullptr) {
      nablas.push_back(nb);
      continue;
    }
    auto g = nb.christoffel();
    for (int i = 0; i < nb.algebroid().rank(); ++i) {
      for (int al = 0; al < nb.rank(); ++al) {
        for (int be = 0; be < nb.rank(); ++be) {
          g[i][al][be] = g[i][al][be] + (*m)(be, al).coeff(Mask{1} << i);
        }
      }
    }
    nablas.emplace_back(nb.algebroid_ptr(), nb.rank(), std::move(g));
  }
  return ConnectionUpToHomotopy(e, std::move(nablas), std::move(rest));
}

TotalForm cuth_curvature(const ConnectionUpToHomotopy& conn) {
  return unhat(conn.bundle(), 2, [&](const GradedForm& w) { return cuth_apply(conn, cuth_apply(conn, w)); });
}

TotalForm d_nabla_end(const ConnectionUpToHomotopy& conn, const TotalForm& k) {
  TotalForm out(k.bundle(), k.degree() + 1);
  for (const auto& [key, m] : k.blocks()) {
    out.add_block(key.first, key.second, d_nabla_hom(conn.nabla(key.first), conn.nabla(key.second), m));
  }
  return out;
}

TotalForm cuth_curvature_formula(const ConnectionUpToHomotopy& conn) {
  TotalForm r(conn.bundle(), 2);
  for (int l = 0; l < conn.bundle().size(); ++l) r.add_block(l, l, curvature(conn.nabla(l)));
  r += d_nabla_end(conn, conn.form());
  r += compose(conn.form(), conn.form());
  return r;
}

TotalForm curvature_power(const ConnectionUpToHomotopy& conn, int i) {
  if (i < 1) throw StructuralError("curvature_power: exponent must be positive");
  return power(cuth_curvature(conn), i);
}

TotalForm curvature_power_operator(const ConnectionUpToHomotopy& conn, int i) {
  if (i < 1) throw StructuralError("curvature_power_operator: exponent must be positive");
  return unhat(conn.bundle(), 2 * i, [&](const GradedForm& w) {
    GradedForm cur = w;
    for (int s = 0; s < 2 * i; ++s) cur = cuth_apply(conn, cur);
    return cur;
  });
}

TotalForm d_end(const ConnectionUpToHomotopy& conn, const TotalForm& k) {
  const bool odd = k.degree() % 2 != 0;
  return unhat(conn.bundle(), k.degree() + 1, [&](const GradedForm& w) {
    GradedForm a = cuth_apply(conn, wedge_apply(k, w));
    GradedForm b = wedge_apply(k, cuth_apply(conn, w));
    return odd ? a + b : a - b;
  });
}

TotalForm d_end_formula(const ConnectionUpToHomotopy& conn, const TotalForm& k) {
  return d_nabla_end(conn, k) + graded_commutator(conn.form(), k);
}

LinearConnection extend_connection(const LinearConnection& nabla_b, const Subframe& b, AlgebroidPtr algebroid,
                                   const ComplementChristoffel& complement) {
  const Algebroid& a = *algebroid;
  if (b.parent_rank() != a.rank()) throw StructuralError("extend_connection: subframe of a different frame");
  if (nabla_b.algebroid().rank() != b.size()) throw StructuralError("extend_connection: connection not on B");
  const int n = nabla_b.rank();
  std::vector<std::vector<std::vector<Poly>>> g(
      a.rank(), std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, a.zero())));
  for (int i = 0; i < a.rank(); ++i) {
    const int loc = b.local_index(i);
    if (loc >= 0) {
      g[i] = nabla_b.christoffel()[loc];
      continue;
    }
    auto it = complement.find(i);
    if (it == complement.end()) continue;
    if (static_cast<int>(it->second.size()) != n) throw StructuralError("extend_connection: complement shape");
    for (const auto& row : it->second) {
      if (static_cast<int>(row.size()) != n) throw StructuralError("extend_connection: complement shape");
    }
    g[i] = it->second;
  }
  for (const auto& [idx, _] : complement) {
    if (idx < 0 || idx >= a.rank() || b.contains(idx)) {
      throw StructuralError("extend_connection: complement index " + std::to_string(idx) + " not in complement");
    }
  }
  return LinearConnection(std::move(algebroid), n, std::move(g));
}

}  // namespace gradweil
