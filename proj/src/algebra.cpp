#include "gmmp/algebra.hpp"

#include <random>

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

SparseVector unit_vector(Field f, std::size_t i) {
  SparseVector e(f);
  e.set(i, Scalar::one(f));
  return e;
}

/// v R for a row vector v.
SparseVector row_times(const SparseVector& v, const Matrix& R) {
  SparseVector out(R.field());
  for (const auto& [i, c] : v) out.axpy(c, R.row(i));
  return out;
}

Matrix combination(const ModuleRep& M, const SparseVector& a, Field f) {
  Matrix out(f, M.dim, M.dim);
  for (const auto& [i, c] : a) {
    const Matrix& R = M.action[i];
    for (std::size_t r = 0; r < M.dim; ++r)
      for (const auto& [col, x] : R.row(r)) out.set(r, col, out.get(r, col) + c * x);
  }
  return out;
}

ModuleRep dual_module(const ModuleRep& M) {
  // Transposes give a left module; as a right module of A^op this is enough
  // for spinning, which only uses the span of the action.
  ModuleRep out{M.name + "*", M.dim, {}};
  for (const auto& R : M.action) out.action.push_back(R.transpose());
  return out;
}

bool spins_to_whole(const ModuleRep& M, const SparseVector& v) { return spin(M, v).rank() == M.dim; }

/// All nonzero vectors of F_p^n up to scalars, calling fn until it returns false.
template <class Fn>
bool for_each_projective_vector(Field f, std::size_t n, Fn fn) {
  const std::uint64_t p = f.characteristic;
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::size_t tail = n - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < tail; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      SparseVector v(f);
      v.set(lead, Scalar::one(f));
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i < n; ++i, c /= p)
        if (c % p) v.set(i, Scalar(f, static_cast<long>(c % p)));
      if (!fn(v)) return false;
    }
  }
  return true;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(Field field, std::vector<std::string> names, Table products,
                             SparseVector unit)
    : field_(field), names_(std::move(names)), products_(std::move(products)), unit_(std::move(unit)) {
  const std::size_t n = dim();
  for (auto it = products_.begin(); it != products_.end();) {
    if (it->first.first >= n || it->first.second >= n)
      throw DimensionMismatch("product index outside the algebra");
    if (auto mx = it->second.max_index(); mx && *mx >= n)
      throw DimensionMismatch("product value outside the algebra");
    it = it->second.empty() ? products_.erase(it) : std::next(it);
  }
  if (auto mx = unit_.max_index(); mx && *mx >= n) throw DimensionMismatch("unit outside the algebra");
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector e = basis_vector(i);
    if (!(multiply(unit_, e) == e) || !(multiply(e, unit_) == e))
      throw PreconditionError("unit law fails at " + names_[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVector& ij = product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        SparseVector e = basis_vector(k);
        if (!(multiply(ij, e) == multiply(basis_vector(i), product(j, k))))
          throw PreconditionError("associativity fails at (" + names_[i] + ", " + names_[j] +
                                  ", " + names_[k] + ")");
      }
    }
}

std::optional<std::size_t> FiniteAlgebra::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

const SparseVector& FiniteAlgebra::product(std::size_t i, std::size_t j) const {
  static thread_local std::map<std::uint64_t, SparseVector> zero;
  auto it = products_.find({i, j});
  if (it != products_.end()) return it->second;
  return zero.try_emplace(field_.characteristic, SparseVector(field_)).first->second;
}

SparseVector FiniteAlgebra::multiply(const SparseVector& a, const SparseVector& b) const {
  SparseVector out(field_);
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = products_.find({i, j});
      if (it != products_.end()) out.axpy(x * y, it->second);
    }
  return out;
}

SparseVector FiniteAlgebra::basis_vector(std::size_t i) const { return unit_vector(field_, i); }

FiniteAlgebra algebra_of_truncation(const FormalTruncation& t) {
  const Field f = t.field();
  const Alphabet& alpha = *t.alphabet();
  std::vector<Word> basis = t.basis();
  std::map<Word, std::size_t> pos;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    pos.emplace(basis[i], i);
    names.push_back(alpha.render(basis[i]));
  }
  FiniteAlgebra::Table table;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto w = alpha.concat(basis[i], basis[j]);
      if (!w) continue;
      NCPoly nf = t.normal_form(NCPoly::monomial(t.alphabet(), f, *w, Scalar::one(f)));
      SparseVector v(f);
      for (const auto& [u, c] : nf.terms()) v.add(pos.at(u), c);
      if (!v.empty()) table.emplace(std::make_pair(i, j), std::move(v));
    }
  SparseVector unit(f);
  for (std::uint32_t r = 0; r < alpha.unit_count(); ++r) unit.set(pos.at(alpha.unit(r)), Scalar::one(f));
  return FiniteAlgebra(f, std::move(names), std::move(table), std::move(unit));
}

FiniteAlgebra truncated_algebra(const Presentation& p, std::size_t N) {
  FiniteAlgebra A = algebra_of_truncation(quotient_basis(p, N));
  A.provenance = "presentation truncated at degree " + std::to_string(N);
  return A;
}

FiniteAlgebra split_semisimple(Field f, std::size_t r) {
  std::vector<std::string> names;
  FiniteAlgebra::Table table;
  SparseVector unit(f);
  for (std::size_t i = 0; i < r; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    table.emplace(std::make_pair(i, i), unit_vector(f, i));
    unit.set(i, Scalar::one(f));
  }
  return FiniteAlgebra(f, std::move(names), std::move(table), std::move(unit));
}

FiniteAlgebra upper_triangular(Field f, std::size_t n) {
  std::vector<std::string> names;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      pos.emplace(std::make_pair(i, j), names.size());
      names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  FiniteAlgebra::Table table;
  SparseVector unit(f);
  for (const auto& [ij, a] : pos) {
    if (ij.first == ij.second) unit.set(a, Scalar::one(f));
    for (const auto& [kl, b] : pos)
      if (ij.second == kl.first) table.emplace(std::make_pair(a, b), unit_vector(f, pos.at({ij.first, kl.second})));
  }
  return FiniteAlgebra(f, std::move(names), std::move(table), std::move(unit));
}

void check_module(const FiniteAlgebra& A, const ModuleRep& M) {
  const Field f = A.field();
  if (M.action.size() != A.dim())
    throw PreconditionError("module " + M.name + " needs one matrix per algebra basis element");
  for (const auto& R : M.action) {
    if (R.rows() != M.dim || R.cols() != M.dim)
      throw DimensionMismatch("action matrix of module " + M.name + " has the wrong size");
    if (!(R.field() == f)) throw FieldMismatch();
  }
  if (!(combination(M, A.unit(), f) == Matrix::identity(f, M.dim)))
    throw PreconditionError("the unit does not act as the identity on " + M.name);
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!(M.action[i] * M.action[j] == combination(M, A.product(i, j), f)))
        throw PreconditionError("action on " + M.name + " fails at (" + A.names()[i] + ", " +
                                A.names()[j] + ")");
}

EchelonBasis spin(const ModuleRep& M, const SparseVector& v) {
  EchelonBasis span(v.field());
  std::vector<SparseVector> queue;
  if (span.insert(v)) queue.push_back(v);
  while (!queue.empty()) {
    SparseVector w = std::move(queue.back());
    queue.pop_back();
    for (const auto& R : M.action) {
      SparseVector image = row_times(w, R);
      if (span.insert(image)) queue.push_back(std::move(image));
    }
  }
  return span;
}

bool is_simple(const FiniteAlgebra& A, const ModuleRep& M) {
  check_module(A, M);
  const Field f = A.field();
  const std::size_t n = M.dim;
  if (n == 0) return false;
  if (n == 1) return true;

  // Burnside: the action spans all of End(M).
  EchelonBasis span(f);
  for (const auto& R : M.action) {
    SparseVector flat(f);
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& [c, x] : R.row(r)) flat.set(r * n + c, x);
    span.insert(std::move(flat));
  }
  if (span.rank() == n * n) return true;

  ModuleRep dual = dual_module(M);
  for (std::size_t i = 0; i < n; ++i)
    if (!spins_to_whole(M, unit_vector(f, i)) || !spins_to_whole(dual, unit_vector(f, i))) return false;

  if (!f.is_rational()) {
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < n && small; ++i) small = (total *= f.characteristic) <= (1u << 16);
    if (small) return for_each_projective_vector(f, n, [&](const SparseVector& v) { return spins_to_whole(M, v); });
  }

  // Norton: a singular element with a one-dimensional kernel on both sides.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int attempt = 0; attempt < 200; ++attempt) {
    SparseVector a(f);
    for (std::size_t i = 0; i < A.dim(); ++i)
      if (long c = coeff(rng)) a.set(i, Scalar(f, c));
    Matrix theta = combination(M, a, f);
    auto left = nullspace(theta.transpose());
    auto right = nullspace(theta);
    if (left.size() != 1 || right.size() != 1) continue;
    return spins_to_whole(M, left.front()) && spins_to_whole(dual, right.front());
  }
  throw PreconditionError("could not decide whether " + M.name + " is simple");
}

ModuleRep augmentation_module(const FiniteAlgebra& A, const std::vector<Scalar>& character,
                              std::string name) {
  if (character.size() != A.dim()) throw DimensionMismatch("character needs one value per basis element");
  ModuleRep M{std::move(name), 1, {}};
  for (const auto& c : character) {
    Matrix R(A.field(), 1, 1);
    R.set(0, 0, c);
    M.action.push_back(std::move(R));
  }
  check_module(A, M);
  return M;
}

}  // namespace gmmp
