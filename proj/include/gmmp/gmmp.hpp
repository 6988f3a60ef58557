#ifndef GMMP_GMMP_HPP
#define GMMP_GMMP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmmp/matrix.hpp"

namespace gmmp {

/// A distinguished element of V that becomes a letter of the hull.
struct GmmpGenerator {
  std::size_t v_index = 0;
  std::string letter;
  /// (source, target) vertices, 0-based, for algebras over k^r.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> vertices;

  friend bool operator==(const GmmpGenerator&, const GmmpGenerator&) = default;
};

/// The data (V, W, cup, d) with a distinguished linearly independent set X,
/// given by structure constants on chosen bases. Bases that stand for an
/// infinite family (a rule such as "all words in x, y") are materialized up
/// to `materialized_degree()` and flagged `lazy()`.
class GmmpAlgebra {
public:
  GmmpAlgebra() = default;
  GmmpAlgebra(Field field, std::vector<std::string> v_names, std::vector<std::string> w_names);

  Field field() const { return field_; }
  std::size_t dim_v() const { return v_names_.size(); }
  std::size_t dim_w() const { return w_names_.size(); }
  const std::vector<std::string>& v_names() const { return v_names_; }
  const std::vector<std::string>& w_names() const { return w_names_; }
  std::optional<std::size_t> v_index(const std::string& name) const;
  std::optional<std::size_t> w_index(const std::string& name) const;

  /// Optional grading of the V basis (e.g. word length).
  void set_v_degrees(std::vector<std::size_t> degrees);
  std::optional<std::size_t> v_degree(std::size_t i) const;

  void set_cup(std::size_t i, std::size_t j, SparseVector value);
  const SparseVector& cup(std::size_t i, std::size_t j) const;
  SparseVector cup(const SparseVector& a, const SparseVector& b) const;
  const std::map<std::pair<std::size_t, std::size_t>, SparseVector>& cup_table() const {
    return cup_;
  }

  void set_d(std::size_t i, SparseVector value);
  const SparseVector& d(std::size_t i) const;
  SparseVector d(const SparseVector& v) const;
  /// d as a dim_w x dim_v matrix.
  Matrix d_matrix() const;

  /// Throws PreconditionError on repeated indices, mixed grading, or an
  /// index outside V.
  void set_generators(std::vector<GmmpGenerator> generators, std::uint32_t vertices = 0);
  const std::vector<GmmpGenerator>& generators() const { return generators_; }
  /// r for algebras over k^r, 0 otherwise.
  std::uint32_t vertices() const { return vertices_; }

  /// W and V share one basis (cup-monomials can then be iterated).
  void set_identified(bool v) { identified_ = v; }
  bool identified() const { return identified_; }
  /// Index in W of a two-sided cup unit, when one exists.
  void set_cup_unit(std::optional<std::size_t> w) { cup_unit_ = w; }
  std::optional<std::size_t> cup_unit() const { return cup_unit_; }
  void set_lazy(bool lazy, std::size_t materialized_degree);
  bool lazy() const { return lazy_; }
  std::size_t materialized_degree() const { return materialized_degree_; }

  friend bool operator==(const GmmpAlgebra&, const GmmpAlgebra&) = default;

private:
  Field field_{};
  std::vector<std::string> v_names_;
  std::vector<std::string> w_names_;
  std::vector<std::optional<std::size_t>> v_degrees_;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> cup_;
  std::vector<SparseVector> d_;
  std::vector<GmmpGenerator> generators_;
  std::uint32_t vertices_ = 0;
  bool identified_ = false;
  std::optional<std::size_t> cup_unit_;
  bool lazy_ = false;
  std::size_t materialized_degree_ = 0;
};

/// phi : V -> V' and psi : W -> W' as matrices (target rows, source columns).
struct GmmpMorphism {
  Matrix phi;
  Matrix psi;
};

GmmpMorphism identity_morphism(const GmmpAlgebra& a);
GmmpMorphism compose(const GmmpMorphism& second, const GmmpMorphism& first);

/// True iff psi(u cup v) = phi(u) cup' phi(v) and psi(d v) = d'(phi v) on all
/// basis elements whose degree (when graded) is at most `bound`.
bool check_morphism(const GmmpMorphism& m, const GmmpAlgebra& src, const GmmpAlgebra& dst,
                    std::size_t bound);

enum class ClassKind { polynomial, formal, neither };

struct Classification {
  ClassKind kind = ClassKind::neither;
  std::size_t witness_degree = 0;
  /// Why the classification is `neither`; empty otherwise.
  std::string reason;
};

const char* to_string(ClassKind k);

/// Classifies L with respect to its generators using the cup-monomials of
/// length <= bound (iterated cups need an identified W = V; otherwise only
/// binary cups exist). The family must be independent up to proportional
/// repeats and span a subspace containing im d. Finite data satisfying this
/// is polynomial; lazily materialized data is formal, the condition having
/// been checked only up to the materialized degree.
Classification classify(const GmmpAlgebra& L, std::size_t bound);

}  // namespace gmmp

#endif
