#include "mloop/cohomology.hpp"

#include <algorithm>

#include "mloop/errors.hpp"

namespace mloop {

void for_each_cocycle_condition(const WindowBasis &window,
                                const std::function<void(const std::map<size_t, CycloField::Coeffs> &)> &fn) {
  const auto &M = *window.parent();
  const auto &f = *M.field();
  const auto &elems = window.elements();
  const auto &w = window.weight();
  size_t n = elems.size();

  // contributes psi([x_A, x_B], x_C) to the row
  auto add_bracket_pairing = [&](std::map<size_t, CycloField::Coeffs> &row, size_t A, size_t B, size_t C) {
    const auto &ea = elems[A];
    const auto &eb = elems[B];
    Multidegree dab = md_add(ea.degree, eb.degree);
    auto ka = M.key_of(ea.degree);
    auto kb = M.key_of(eb.degree);
    const auto &tensor = M.bracket_tensor(ka, kb, ea.index, eb.index);
    for (size_t l = 0; l < tensor.size(); ++l) {
      if (f.is_zero(tensor[l]))
        continue;
      auto lid = window.element_id(dab, l);
      if (!lid)
        throw Error("bracket degree escaped the window");
      auto pid = window.pair_id(*lid, C);
      if (!pid)
        continue; // pairing an element against itself contributes nothing
      auto it = row.find(pid->first);
      if (it == row.end())
        it = row.emplace(pid->first, f.zero()).first;
      if (pid->second > 0)
        f.add_inplace(it->second, tensor[l]);
      else
        f.sub_inplace(it->second, tensor[l]);
    }
  };

  for (size_t A = 0; A < n; ++A) {
    for (size_t B = A + 1; B < n; ++B) {
      Multidegree dab = md_add(elems[A].degree, elems[B].degree);
      if (!window.degree_in_box(dab))
        continue;
      // remaining degree for the third slot
      Multidegree dc(w.size());
      for (size_t k = 0; k < w.size(); ++k)
        dc[k] = w[k] - dab[k];
      if (!window.degree_in_box(dc))
        continue;
      // pairwise bracket degrees must also stay in the box
      Multidegree dbc = md_add(elems[B].degree, dc);
      Multidegree dac = md_add(elems[A].degree, dc);
      if (!window.degree_in_box(dbc) || !window.degree_in_box(dac))
        continue;
      size_t dimc = M.graded_dim(dc);
      for (size_t i = 0; i < dimc; ++i) {
        auto cid = window.element_id(dc, i);
        if (!cid || *cid <= B)
          continue;
        size_t C = *cid;
        std::map<size_t, CycloField::Coeffs> row;
        add_bracket_pairing(row, A, B, C);
        add_bracket_pairing(row, B, C, A);
        add_bracket_pairing(row, C, A, B);
        // drop zero entries
        for (auto it = row.begin(); it != row.end();) {
          if (f.is_zero(it->second))
            it = row.erase(it);
          else
            ++it;
        }
        if (!row.empty())
          fn(row);
      }
    }
  }
}

namespace {

// coboundary rows delta(phi_l) over window pairs, one per eigenbasis vector
// of the weight slice
std::vector<RrefAccumulator::Row> coboundary_rows(const WindowBasis &window) {
  const auto &M = *window.parent();
  const auto &f = *M.field();
  auto wkey = M.key_of(window.weight());
  size_t bdim = M.eigen_dim(wkey);
  const auto &pairs = window.pairs();
  std::vector<RrefAccumulator::Row> rows(bdim, RrefAccumulator::Row(pairs.size(), f.zero()));
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [A, B] = pairs[p];
    const auto &ea = window.elements()[A];
    const auto &eb = window.elements()[B];
    const auto &tensor = M.bracket_tensor(M.key_of(ea.degree), M.key_of(eb.degree), ea.index, eb.index);
    for (size_t l = 0; l < bdim; ++l)
      rows[l][p] = tensor[l];
  }
  return rows;
}

} // namespace

H2Result ce_h2_weight(const MultiloopPtr &M, const Multidegree &w, int cutoff) {
  WindowBasis window(M, w, cutoff);
  const auto &f = *M->field();
  size_t npairs = window.pairs().size();
  if (npairs == 0)
    throw WindowEmpty("no degree pairs inside cutoff " + std::to_string(cutoff) + " for weight " + md_str(w));

  RrefAccumulator conditions(M->field(), npairs);
  for_each_cocycle_condition(window, [&](const std::map<size_t, CycloField::Coeffs> &sparse) {
    RrefAccumulator::Row row(npairs, f.zero());
    for (const auto &[idx, coeff] : sparse)
      row[idx] = coeff;
    conditions.insert(std::move(row));
  });
  conditions.finalize();

  H2Result result;
  result.dim_z = npairs - conditions.rank();
  auto zbasis = conditions.nullspace();

  RrefAccumulator bspan(M->field(), npairs);
  for (auto &row : coboundary_rows(window))
    bspan.insert(std::move(row));
  result.dim_b = bspan.rank();
  if (result.dim_b > result.dim_z)
    throw Error("coboundaries escape the cocycle space; window bookkeeping is broken");
  result.dim_h2 = result.dim_z - result.dim_b;

  // canonical complement: nullspace vectors that enlarge the coboundary span
  for (const auto &zvec : zbasis) {
    if (result.representatives.size() == result.dim_h2)
      break;
    if (!bspan.insert(zvec))
      continue;
    CochainMatrix rep;
    rep.weight = w;
    rep.cutoff = cutoff;
    rep.values = zvec;
    if (!cochain_is_cocycle(window, rep))
      throw Error("representative fails independent re-verification");
    result.representatives.push_back(std::move(rep));
  }
  if (result.representatives.size() != result.dim_h2)
    throw Error("canonical complement construction lost representatives");
  return result;
}

StabilityReport cutoff_stability(const MultiloopPtr &M, const Multidegree &w, int cutoff) {
  StabilityReport report;
  report.weight = w;
  report.cutoff = cutoff;
  report.dim_at_d = ce_h2_weight(M, w, cutoff).dim_h2;
  report.dim_at_d1 = ce_h2_weight(M, w, cutoff + 1).dim_h2;
  report.stable = report.dim_at_d == report.dim_at_d1;
  return report;
}

TargetVerdict compare_to_target(const MultiloopPtr &M, const Multidegree &w, int cutoff) {
  auto stability = cutoff_stability(M, w, cutoff);
  if (!stability.stable)
    throw Unstable("H^2 dimension at weight " + md_str(w) + " changes between cutoffs " + std::to_string(cutoff) +
                   " and " + std::to_string(cutoff + 1) + " (" + std::to_string(stability.dim_at_d) + " vs " +
                   std::to_string(stability.dim_at_d1) + ")");
  TargetVerdict verdict;
  verdict.weight = w;
  verdict.cutoff = cutoff;
  verdict.h2_dim = stability.dim_at_d;
  verdict.target_dim = omegabar_invariant_dim(M->action(), w) * M->universal_form().dim_v();
  verdict.match = verdict.h2_dim == verdict.target_dim;
  return verdict;
}

WeightCertificate universality_certificate_weight(const MultiloopPtr &M, const Multidegree &w, int cutoff) {
  WeightCertificate cert;
  cert.weight = w;
  cert.cutoff = cutoff;
  cert.stability = cutoff_stability(M, w, cutoff);
  if (!cert.stability.stable)
    throw Unstable("refusing universality check at unstable weight " + md_str(w));
  auto h2 = ce_h2_weight(M, w, cutoff);
  cert.dim_z = h2.dim_z;
  cert.dim_b = h2.dim_b;
  cert.h2_dim = h2.dim_h2;
  cert.target_dim = omegabar_invariant_dim(M->action(), w) * M->universal_form().dim_v();
  cert.match = cert.h2_dim == cert.target_dim;
  cert.representative_count = h2.representatives.size();
  cert.all_factored = true;
  WindowBasis window(M, w, cutoff);
  for (const auto &rep : h2.representatives) {
    auto fact = factor_through_universal(window, rep);
    if (!fact.factored)
      cert.all_factored = false;
    cert.phi_nonzero.push_back(fact.phi_nonzero);
    cert.phi_coords.push_back(fact.phi);
  }
  return cert;
}

std::vector<WeightCertificate> universality_certificate(const MultiloopPtr &M, const std::vector<Multidegree> &weights,
                                                        int cutoff) {
  std::vector<WeightCertificate> out;
  out.reserve(weights.size());
  for (const auto &w : weights)
    out.push_back(universality_certificate_weight(M, w, cutoff));
  return out;
}

} // namespace mloop
