#pragma once

#include <string>
#include <vector>

#include "mloop/multiloop.hpp"

namespace mloop {

/// Shipped multiloop setups, selectable by name in run configs and tests.
///
///   sl2_loop        untwisted sl2 loop algebra, n = 1
///   sl2_loop_2d     untwisted sl2, n = 2
///   sl2sl2_loop     untwisted sl2+sl2, n = 1
///   a2_twisted      sl3 with x -> -x^T, n = 1, r = (2)
///   sl2_inner       sl2 with Ad(diag(1,-1)), n = 1, r = (2)
///   sl2_inner_2d    sl2, n = 2, r = (2,1), inner twist in the first slot
///   sl3_inner_3     sl3 with Ad(diag(1, w, w^2)), n = 1, r = (3), over Q(zeta_3)
MultiloopPtr multiloop_preset(const std::string &name);

std::vector<std::string> multiloop_preset_names();

} // namespace mloop
