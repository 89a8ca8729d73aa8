#include "fibgirth/group_catalog.hpp"

#include <functional>
#include <map>

namespace fibgirth::catalog {
namespace {

using Elem = std::vector<int>;
using Mul = std::function<Elem(const Elem&, const Elem&)>;

int mod(long long x, int m) { return static_cast<int>(((x % m) + m) % m); }

// Closure of the generators under right multiplication, in BFS order with
// the identity first.
FiniteGroup closure(std::string name, const Elem& identity, const std::vector<Elem>& gens, const Mul& mul) {
  std::vector<Elem> elems{identity};
  std::map<Elem, Element> ids{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Elem p = mul(elems[i], g);
      if (ids.emplace(p, static_cast<Element>(elems.size())).second) elems.push_back(std::move(p));
    }
  std::vector<std::vector<Element>> rows(elems.size(), std::vector<Element>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) rows[i][j] = ids.at(mul(elems[i], elems[j]));
  return FiniteGroup::from_table(std::move(name), std::move(rows));
}

// 2x2 matrices over the Gaussian integers, stored as (re, im) per entry.
Elem gaussian_matmul(const Elem& x, const Elem& y) {
  Elem z(8, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        int xr = x[2 * (2 * i + k)], xi = x[2 * (2 * i + k) + 1];
        int yr = y[2 * (2 * k + j)], yi = y[2 * (2 * k + j) + 1];
        z[2 * (2 * i + j)] += xr * yr - xi * yi;
        z[2 * (2 * i + j) + 1] += xr * yi + xi * yr;
      }
  return z;
}

}  // namespace

FiniteGroup cyclic(std::uint32_t m) {
  std::vector<std::vector<Element>> rows(m, std::vector<Element>(m));
  for (Element i = 0; i < m; ++i)
    for (Element j = 0; j < m; ++j) rows[i][j] = (i + j) % m;
  return FiniteGroup::from_table(m == 1 ? "trivial" : "Z" + std::to_string(m), std::move(rows));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = g.order(), k = h.order();
  std::vector<std::vector<Element>> rows(m * k, std::vector<Element>(m * k));
  for (Element g1 = 0; g1 < m; ++g1)
    for (Element h1 = 0; h1 < k; ++h1)
      for (Element g2 = 0; g2 < m; ++g2)
        for (Element h2 = 0; h2 < k; ++h2)
          rows[g1 * k + h1][g2 * k + h2] = static_cast<Element>(g.mul(g1, g2) * k + h.mul(h1, h2));
  return FiniteGroup::from_table(g.name() + "x" + h.name(), std::move(rows));
}

FiniteGroup metacyclic(std::string name, int m, int n, int r, int s) {
  auto mul = [m, n, r, s](const Elem& x, const Elem& y) {
    long long twist = 1;
    for (int t = 0; t < x[1]; ++t) twist = twist * r % m;
    long long i = x[0] + twist * y[0];
    int j = x[1] + y[1];
    if (j >= n) {
      j -= n;
      i += s;
    }
    return Elem{mod(i, m), j};
  };
  return closure(std::move(name), {0, 0}, {{1, 0}, {0, 1}}, mul);
}

FiniteGroup heisenberg_mod3() {
  auto mul = [](const Elem& p, const Elem& q) {
    return Elem{mod(p[0] + q[0], 3), mod(p[1] + q[1], 3), mod(p[2] + q[2] + p[0] * q[1], 3)};
  };
  return closure("Heis3", {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, mul);
}

FiniteGroup symmetric3() { return metacyclic("S3", 3, 2, 2, 0); }

std::vector<FiniteGroup> nilpotent_catalog() {
  std::vector<FiniteGroup> groups;
  auto Z = [](std::uint32_t m) { return cyclic(m); };
  auto x = [](const FiniteGroup& g, const FiniteGroup& h) { return direct_product(g, h); };

  // Abelian groups of order <= 16.
  for (std::uint32_t m = 1; m <= 16; ++m) groups.push_back(Z(m));
  groups.push_back(x(Z(2), Z(2)));
  groups.push_back(x(Z(4), Z(2)));
  groups.push_back(x(x(Z(2), Z(2)), Z(2)));
  groups.push_back(x(Z(3), Z(3)));
  groups.push_back(x(Z(6), Z(2)));
  groups.push_back(x(Z(8), Z(2)));
  groups.push_back(x(Z(4), Z(4)));
  groups.push_back(x(x(Z(4), Z(2)), Z(2)));
  groups.push_back(x(x(x(Z(2), Z(2)), Z(2)), Z(2)));

  // Non-abelian nilpotent groups: orders 8 and 16 (all 2-groups).
  const FiniteGroup d4 = metacyclic("D4", 4, 2, 3, 0);
  const FiniteGroup q8 = metacyclic("Q8", 4, 2, 3, 2);
  groups.push_back(d4);
  groups.push_back(q8);
  groups.push_back(x(Z(2), d4));
  groups.push_back(x(Z(2), q8));
  groups.push_back(metacyclic("D8", 8, 2, 7, 0));
  groups.push_back(metacyclic("Q16", 8, 2, 7, 4));
  groups.push_back(metacyclic("SD16", 8, 2, 3, 0));
  groups.push_back(metacyclic("M16", 8, 2, 5, 0));
  groups.push_back(metacyclic("Z4:Z4", 4, 4, 3, 0));
  {
    // (Z4 x Z2) : Z2 with the involution (i, j) -> (i, j + i).
    auto mul = [](const Elem& p, const Elem& q) {
      int qj = p[2] ? mod(q[1] + q[0], 2) : q[1];
      return Elem{mod(p[0] + q[0], 4), mod(p[1] + qj, 2), mod(p[2] + q[2], 2)};
    };
    groups.push_back(closure("Z4xZ2:Z2", {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, mul));
  }
  {
    // Pauli group <X, Z, iI>, the central product of Z4 and D4.
    const Elem one{1, 0, 0, 0, 0, 0, 1, 0};
    const Elem px{0, 0, 1, 0, 1, 0, 0, 0};
    const Elem pz{1, 0, 0, 0, 0, 0, -1, 0};
    const Elem pi{0, 1, 0, 0, 0, 0, 0, 1};
    groups.push_back(closure("Pauli", one, {px, pz, pi}, gaussian_matmul));
  }
  groups.push_back(heisenberg_mod3());
  return groups;
}

std::vector<FiniteGroup> control_catalog() {
  std::vector<FiniteGroup> groups;
  groups.push_back(symmetric3());
  groups.push_back(metacyclic("D5", 5, 2, 4, 0));
  groups.push_back(metacyclic("Dic3", 6, 2, 5, 3));
  return groups;
}

}  // namespace fibgirth::catalog
