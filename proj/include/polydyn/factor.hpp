#pragma once

#include <utility>

#include "polydyn/lens.hpp"

namespace polydyn {

/// f = cart . vert. The middle object keeps the positions of dom(f) and takes
/// the directions of cod(f) over them.
std::pair<Lens, Lens> factor_vert_cart(const Lens& f);

/// f = mono . epi. The middle object has the image positions of f; directions
/// at j are those of cod(f) identified when every on-directions map over j
/// sends them to the same place, each class labeled by its first member.
std::pair<Lens, Lens> factor_epi_mono(const Lens& f);

}  // namespace polydyn
