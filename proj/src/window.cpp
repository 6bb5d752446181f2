#include "mloop/window.hpp"

#include "mloop/errors.hpp"

namespace mloop {

namespace {

// lex enumeration of the box |a_k| <= D
bool advance_box(Multidegree &a, int D) {
  size_t k = a.size();
  while (k-- > 0) {
    if (a[k] < D) {
      ++a[k];
      for (size_t j = k + 1; j < a.size(); ++j)
        a[j] = -D;
      return true;
    }
  }
  return false;
}

} // namespace

WindowBasis::WindowBasis(MultiloopPtr parent, Multidegree weight, int cutoff)
    : parent_(std::move(parent)), weight_(std::move(weight)), cutoff_(cutoff) {
  if (cutoff_ < 1)
    throw ConfigError("cutoff must be >= 1");
  if (weight_.size() != parent_->rank())
    throw ConfigError("weight arity does not match the algebra rank");
  size_t n = parent_->rank();
  Multidegree a(n, -cutoff_);
  while (true) {
    size_t dim = parent_->graded_dim(a);
    for (size_t i = 0; i < dim; ++i) {
      element_ids_.emplace(std::make_pair(a, i), elements_.size());
      elements_.push_back(Element{a, i});
      values_.push_back(EqMapElement::basis_term(parent_, a, i));
    }
    if (!advance_box(a, cutoff_))
      break;
  }
  for (size_t A = 0; A < elements_.size(); ++A)
    for (size_t B = A + 1; B < elements_.size(); ++B) {
      if (md_add(elements_[A].degree, elements_[B].degree) != weight_)
        continue;
      pair_ids_.emplace(std::make_pair(A, B), pairs_.size());
      pairs_.emplace_back(A, B);
    }
}

bool WindowBasis::degree_in_box(const Multidegree &a) const {
  for (int v : a)
    if (v > cutoff_ || v < -cutoff_)
      return false;
  return true;
}

std::optional<size_t> WindowBasis::element_id(const Multidegree &a, size_t index) const {
  auto it = element_ids_.find(std::make_pair(a, index));
  if (it == element_ids_.end())
    return std::nullopt;
  return it->second;
}

std::optional<std::pair<size_t, int>> WindowBasis::pair_id(size_t a, size_t b) const {
  if (a == b)
    return std::nullopt;
  int sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  auto it = pair_ids_.find(std::make_pair(a, b));
  if (it == pair_ids_.end())
    throw Error("element pair does not land on the window weight");
  return std::make_pair(it->second, sign);
}

CycloField::Coeffs CochainMatrix::value(const WindowBasis &window, size_t a, size_t b) const {
  const auto &f = *window.parent()->field();
  auto pid = window.pair_id(a, b);
  if (!pid)
    return f.zero();
  auto v = values.at(pid->first);
  if (pid->second < 0)
    f.negate_inplace(v);
  return v;
}

} // namespace mloop
