#pragma once

#include <cstdint>
#include <vector>

#include "fibgirth/finite_group.hpp"

namespace fibgirth::catalog {

FiniteGroup cyclic(std::uint32_t m);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// <x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r>, elements x^i y^j.
FiniteGroup metacyclic(std::string name, int m, int n, int r, int s);

FiniteGroup heisenberg_mod3();
FiniteGroup symmetric3();

/// Every nilpotent group of order <= 16 plus the Heisenberg group mod 3.
std::vector<FiniteGroup> nilpotent_catalog();
/// Non-nilpotent groups used as negative controls.
std::vector<FiniteGroup> control_catalog();

}  // namespace fibgirth::catalog
