#include "gmmp/hochschild.hpp"

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

SparseVector unit_vector(Field f, std::size_t i) {
  SparseVector e(f);
  e.set(i, Scalar::one(f));
  return e;
}

struct Factor {
  std::size_t left;
  std::size_t right;
  Scalar coeff;
};

}  // namespace

CochainComplex::CochainComplex(FiniteAlgebra A, std::vector<ModuleRep> modules, std::size_t max_level)
    : A_(std::move(A)), modules_(std::move(modules)), max_level_(max_level) {
  if (modules_.empty()) throw PreconditionError("at least one module is required");
  if (max_level_ < 1) throw PreconditionError("cochains up to level 1 at least are required");
  const Field f = field();
  offsets_.push_back(0);
  for (const auto& M : modules_) {
    if (!is_simple(A_, M)) throw PreconditionError("module " + M.name + " is not simple");
    offsets_.push_back(offsets_.back() + M.dim);
  }
  powers_.push_back(1);
  for (std::size_t n = 1; n <= max_level_; ++n) powers_.push_back(powers_.back() * A_.dim());
  const std::uint32_t r = vertices();
  for (std::size_t n = 0; n <= max_level_; ++n) {
    std::vector<std::size_t> starts{0};
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j) starts.push_back(starts.back() + block_size(n, i, j));
    block_start_.push_back(std::move(starts));
  }

  // factors[c] = all (b, b', coeff) with b * b' = ... + coeff * a_c + ...
  std::vector<std::vector<Factor>> factors(A_.dim());
  for (const auto& [bb, v] : A_.table())
    for (const auto& [c, x] : v) factors[c].push_back({bb.first, bb.second, x});

  for (std::size_t n = 0; n < max_level_; ++n) {
    Matrix d(f, dim(n + 1), dim(n));
    const Scalar middle_sign_base = -Scalar::one(f);
    for (std::size_t col = 0; col < dim(n); ++col) {
      const CochainCoord c = coordinate(n, col);
      const ModuleRep& Ms = modules_[c.source];
      const ModuleRep& Mt = modules_[c.target];
      auto add = [&](CochainCoord out, const Scalar& x) {
        std::size_t row = index(n + 1, out);
        d.set(row, col, d.get(row, col) + x);
      };
      for (std::size_t a = 0; a < A_.dim(); ++a) {
        const Matrix& R = Ms.action[a];
        for (std::size_t s = 0; s < Ms.dim; ++s) {
          Scalar x = R.get(s, c.row);
          if (x.is_zero()) continue;
          CochainCoord out{c.source, c.target, {a}, s, c.col};
          out.args.insert(out.args.end(), c.args.begin(), c.args.end());
          add(std::move(out), x);
        }
      }
      Scalar sign = middle_sign_base;
      for (std::size_t i = 0; i < n; ++i, sign = -sign) {
        for (const auto& fac : factors[c.args[i]]) {
          CochainCoord out{c.source, c.target, {}, c.row, c.col};
          out.args.insert(out.args.end(), c.args.begin(), c.args.begin() + i);
          out.args.push_back(fac.left);
          out.args.push_back(fac.right);
          out.args.insert(out.args.end(), c.args.begin() + i + 1, c.args.end());
          add(std::move(out), sign * fac.coeff);
        }
      }
      // `sign` is now (-1)^{n+1}.
      for (std::size_t a = 0; a < A_.dim(); ++a) {
        for (const auto& [t, x] : Mt.action[a].row(c.col)) {
          CochainCoord out{c.source, c.target, c.args, c.row, t};
          out.args.push_back(a);
          add(std::move(out), sign * x);
        }
      }
    }
    d_.push_back(std::move(d));
  }
}

std::size_t CochainComplex::block_size(std::size_t level, std::uint32_t i, std::uint32_t j) const {
  return powers_.at(level) * modules_[i].dim * modules_[j].dim;
}

std::size_t CochainComplex::dim(std::size_t level) const { return block_start_.at(level).back(); }

std::pair<std::size_t, std::size_t> CochainComplex::block_range(std::size_t level, std::uint32_t i,
                                                                std::uint32_t j) const {
  const auto& s = block_start_.at(level);
  std::size_t b = i * vertices() + j;
  return {s.at(b), s.at(b + 1)};
}

CochainCoord CochainComplex::coordinate(std::size_t level, std::size_t idx) const {
  const auto& s = block_start_.at(level);
  if (idx >= s.back()) throw DimensionMismatch("cochain index out of range");
  std::size_t b = 0;
  while (s[b + 1] <= idx) ++b;
  CochainCoord c;
  c.source = static_cast<std::uint32_t>(b / vertices());
  c.target = static_cast<std::uint32_t>(b % vertices());
  std::size_t local = idx - s[b];
  const std::size_t dj = modules_[c.target].dim;
  const std::size_t cell = modules_[c.source].dim * dj;
  std::size_t code = local / cell;
  local %= cell;
  c.row = local / dj;
  c.col = local % dj;
  c.args.resize(level);
  for (std::size_t k = level; k-- > 0;) {
    c.args[k] = code % A_.dim();
    code /= A_.dim();
  }
  return c;
}

std::size_t CochainComplex::index(std::size_t level, const CochainCoord& c) const {
  if (c.args.size() != level) throw DimensionMismatch("cochain arity mismatch");
  std::size_t code = 0;
  for (auto a : c.args) code = code * A_.dim() + a;
  const std::size_t dj = modules_[c.target].dim;
  return block_range(level, c.source, c.target).first +
         code * modules_[c.source].dim * dj + c.row * dj + c.col;
}

std::string CochainComplex::coordinate_name(std::size_t level, std::size_t idx) const {
  CochainCoord c = coordinate(level, idx);
  std::string out = "c" + std::to_string(level) + "(";
  for (std::size_t k = 0; k < c.args.size(); ++k) {
    if (k) out += ",";
    out += A_.names()[c.args[k]];
  }
  out += ";" + std::to_string(c.source + 1) + "," + std::to_string(c.target + 1) + ";" +
         std::to_string(c.row) + "," + std::to_string(c.col) + ")";
  return out;
}

const Matrix& CochainComplex::differential(std::size_t level) const {
  if (level >= d_.size()) throw PreconditionError("differential beyond the materialized levels");
  return d_[level];
}

SparseVector CochainComplex::apply_d(std::size_t level, const SparseVector& f) const {
  return differential(level).apply(f);
}

SparseVector CochainComplex::cup(std::size_t p, const SparseVector& f, std::size_t q,
                                 const SparseVector& g) const {
  SparseVector out(field());
  if (p + q > max_level_) throw PreconditionError("cup product beyond the materialized levels");
  for (const auto& [i1, c1] : f) {
    CochainCoord a = coordinate(p, i1);
    for (const auto& [i2, c2] : g) {
      CochainCoord b = coordinate(q, i2);
      if (a.target != b.source || a.col != b.row) continue;
      CochainCoord c{a.source, b.target, a.args, a.row, b.col};
      c.args.insert(c.args.end(), b.args.begin(), b.args.end());
      out.add(index(p + q, c), c1 * c2);
    }
  }
  return out;
}

std::size_t CochainComplex::cohomology_dim(std::size_t level, std::uint32_t i, std::uint32_t j) const {
  auto block_rank = [&](std::size_t n) {
    auto [b, e] = block_range(n, i, j);
    EchelonBasis span(field());
    const Matrix& d = differential(n);
    std::vector<SparseVector> cols(e - b, SparseVector(field()));
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, x] : d.row(r))
        if (c >= b && c < e) cols[c - b].set(r, x);
    for (auto& v : cols) span.insert(std::move(v));
    return span.rank();
  };
  auto [b, e] = block_range(level, i, j);
  std::size_t kernel = (e - b) - block_rank(level);
  std::size_t image = level == 0 ? 0 : block_rank(level - 1);
  return kernel - image;
}

Matrix CochainComplex::evaluate1(const SparseVector& f, std::size_t a) const {
  Matrix out(field(), total_dim(), total_dim());
  for (const auto& [idx, x] : f) {
    CochainCoord c = coordinate(1, idx);
    if (c.args[0] != a) continue;
    std::size_t r = offsets_[c.source] + c.row;
    std::size_t col = offsets_[c.target] + c.col;
    out.set(r, col, out.get(r, col) + x);
  }
  return out;
}

CochainComplex hochschild_complex(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                                  std::size_t max_level) {
  return CochainComplex(A, modules, max_level);
}

std::vector<ExtClass> ext_basis(const CochainComplex& C) {
  if (C.max_level() < 2) throw PreconditionError("ext_basis needs cochains up to level 2");
  const Field f = C.field();
  std::vector<ExtClass> out;
  const Matrix& d0 = C.differential(0);
  const Matrix& d1 = C.differential(1);
  for (std::uint32_t i = 0; i < C.vertices(); ++i)
    for (std::uint32_t j = 0; j < C.vertices(); ++j) {
      auto [b0, e0] = C.block_range(0, i, j);
      auto [b1, e1] = C.block_range(1, i, j);
      auto [b2, e2] = C.block_range(2, i, j);
      EchelonBasis boundaries(f);
      for (std::size_t c = b0; c < e0; ++c) {
        SparseVector v(f);
        for (std::size_t r = b1; r < e1; ++r)
          if (Scalar x = d0.get(r, c); !x.is_zero()) v.set(r, x);
        boundaries.insert(std::move(v));
      }
      Matrix local(f, e2 - b2, e1 - b1);
      for (std::size_t r = b2; r < e2; ++r)
        for (const auto& [c, x] : d1.row(r))
          if (c >= b1 && c < e1) local.set(r - b2, c - b1, x);
      EchelonBasis cocycles = boundaries;
      for (const auto& z : nullspace(local)) {
        SparseVector g(f);
        for (const auto& [c, x] : z) g.set(c + b1, x);
        cocycles.insert(std::move(g));
      }
      std::size_t number = 1;
      for (const auto& [pivot, row] : cocycles.rows()) {
        if (boundaries.is_pivot(pivot)) continue;
        out.push_back({i, j, number++, row});
      }
    }
  return out;
}

CochainGmmp cochain_gmmp(const CochainComplex& C, const std::vector<ExtClass>& classes,
                         const std::vector<std::string>& letters) {
  if (letters.size() != classes.size()) throw PreconditionError("one letter per class expected");
  const Field f = C.field();
  const std::size_t n1 = C.dim(1);
  std::vector<SparseVector> basis;
  std::vector<std::string> names(letters);
  EchelonBasis span(f);
  for (const auto& c : classes) {
    if (!span.insert(c.cocycle)) throw PreconditionError("the classes are linearly dependent");
    basis.push_back(c.cocycle);
  }
  for (std::size_t l = 0; l < n1; ++l) {
    if (span.is_pivot(l)) continue;
    basis.push_back(unit_vector(f, l));
    names.push_back(C.coordinate_name(1, l));
  }
  std::vector<std::string> w_names;
  for (std::size_t w = 0; w < C.dim(2); ++w) w_names.push_back(C.coordinate_name(2, w));

  GmmpAlgebra L(f, names, std::move(w_names));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    L.set_d(k, C.apply_d(1, basis[k]));
    for (std::size_t m = 0; m < basis.size(); ++m) {
      SparseVector c = C.cup(1, basis[k], 1, basis[m]);
      if (!c.empty()) L.set_cup(k, m, std::move(c));
    }
  }
  // An empty X over a single module still has a hull (k), so it is kept graded.
  const std::uint32_t r = C.vertices();
  const bool graded = r > 1 || classes.empty();
  std::vector<GmmpGenerator> gens;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    GmmpGenerator g{k, letters[k], std::nullopt};
    if (graded) g.vertices = std::make_pair(classes[k].source, classes[k].target);
    gens.push_back(std::move(g));
  }
  L.set_generators(std::move(gens), graded ? r : 0);
  Matrix to(f, n1, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& [l, x] : basis[k]) to.set(l, k, x);
  return {std::move(L), std::move(to)};
}

std::vector<std::string> default_letters(const std::vector<ExtClass>& classes, std::uint32_t vertices) {
  std::vector<std::string> out;
  for (const auto& c : classes) {
    if (vertices > 1)
      out.push_back("x(" + std::to_string(c.source + 1) + "," + std::to_string(c.target + 1) + "," +
                    std::to_string(c.number) + ")");
    else
      out.push_back(classes.size() == 1 ? "t" : "t" + std::to_string(c.number));
  }
  return out;
}

}  // namespace gmmp
