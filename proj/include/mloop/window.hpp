#pragma once

#include <map>
#include <optional>

#include "mloop/multiloop.hpp"

namespace mloop {

/// Finite truncation of a multiloop algebra used by the brute-force
/// cohomology: all basis elements t^a v_i whose degree a satisfies
/// |a_k| <= D and pairs with w - a inside the same box.
class WindowBasis {
public:
  struct Element {
    Multidegree degree;
    size_t index; // eigenbasis index within the degree slice
  };

  WindowBasis(MultiloopPtr parent, Multidegree weight, int cutoff);

  const MultiloopPtr &parent() const { return parent_; }
  const Multidegree &weight() const { return weight_; }
  int cutoff() const { return cutoff_; }

  const std::vector<Element> &elements() const { return elements_; }
  /// Unordered pairs {A, B}, A < B, with degrees summing to the weight;
  /// these index the independent values of an antisymmetric 2-cochain.
  const std::vector<std::pair<size_t, size_t>> &pairs() const { return pairs_; }

  bool degree_in_box(const Multidegree &a) const;
  /// Element id of (degree, index), when the degree belongs to the window.
  std::optional<size_t> element_id(const Multidegree &a, size_t index) const;

  /// Pair id and orientation sign of (A, B); nullopt when A == B.
  std::optional<std::pair<size_t, int>> pair_id(size_t a, size_t b) const;

  const EqMapElement &element_value(size_t id) const { return values_[id]; }

private:
  MultiloopPtr parent_;
  Multidegree weight_;
  int cutoff_;
  std::vector<Element> elements_;
  std::map<std::pair<Multidegree, size_t>, size_t> element_ids_;
  std::vector<std::pair<size_t, size_t>> pairs_;
  std::map<std::pair<size_t, size_t>, size_t> pair_ids_;
  std::vector<EqMapElement> values_;
};

/// Antisymmetric weight-w 2-cochain on a window, stored by its values on
/// the canonical pair list.
struct CochainMatrix {
  Multidegree weight;
  int cutoff = 0;
  std::vector<CycloField::Coeffs> values; // one per window pair

  CycloField::Coeffs value(const WindowBasis &window, size_t a, size_t b) const;
};

} // namespace mloop
