#include "mloop/presets.hpp"

#include "mloop/errors.hpp"

namespace mloop {

MultiloopPtr multiloop_preset(const std::string &name) {
  if (name == "sl2_loop") {
    auto f = CycloField::rationals();
    auto L = LieAlgebra::sl2(f);
    auto id = FiniteAutomorphism::identity(L);
    return MultiloopAlgebra::build(std::move(L), TorusAction({1}, f), {id}, name);
  }
  if (name == "sl2_loop_2d") {
    auto f = CycloField::rationals();
    auto L = LieAlgebra::sl2(f);
    auto id = FiniteAutomorphism::identity(L);
    return MultiloopAlgebra::build(std::move(L), TorusAction({1, 1}, f), {id, id}, name);
  }
  if (name == "sl2sl2_loop") {
    auto f = CycloField::rationals();
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(f), LieAlgebra::sl2(f));
    auto id = FiniteAutomorphism::identity(L);
    return MultiloopAlgebra::build(std::move(L), TorusAction({1}, f), {id}, name);
  }
  if (name == "a2_twisted") {
    auto f = CycloField::make(2);
    auto L = LieAlgebra::sl3(f);
    auto sigma = FiniteAutomorphism::neg_transpose(L);
    return MultiloopAlgebra::build(std::move(L), TorusAction({2}, f), {sigma}, name);
  }
  if (name == "sl2_inner") {
    auto f = CycloField::make(2);
    auto L = LieAlgebra::sl2(f);
    auto sigma = FiniteAutomorphism::diag_conjugation(L, 2, {0, 1});
    return MultiloopAlgebra::build(std::move(L), TorusAction({2}, f), {sigma}, name);
  }
  if (name == "sl2_inner_2d") {
    auto f = CycloField::make(2);
    auto L = LieAlgebra::sl2(f);
    auto sigma = FiniteAutomorphism::diag_conjugation(L, 2, {0, 1});
    auto id = FiniteAutomorphism::identity(L);
    return MultiloopAlgebra::build(std::move(L), TorusAction({2, 1}, f), {sigma, id}, name);
  }
  if (name == "sl3_inner_3") {
    // order-3 inner twist over Q(zeta_3): the scalars are genuinely cyclotomic
    auto f = CycloField::make(3);
    auto L = LieAlgebra::sl3(f);
    auto sigma = FiniteAutomorphism::diag_conjugation(L, 3, {0, 1, 2});
    return MultiloopAlgebra::build(std::move(L), TorusAction({3}, f), {sigma}, name);
  }
  throw ConfigError("unknown multiloop preset '" + name + "'");
}

std::vector<std::string> multiloop_preset_names() {
  return {"sl2_loop", "sl2_loop_2d", "sl2sl2_loop", "a2_twisted", "sl2_inner", "sl2_inner_2d", "sl3_inner_3"};
}

} // namespace mloop
