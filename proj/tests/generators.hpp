#pragma once

// Random graded rings and homogeneous elements for property tests.

#include "stiefel/graded_algebra.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using namespace stiefel;

struct RandomRing {
  PresentationPtr ring;
  std::vector<Monomial> basis;  // nonzero monomials up to a degree bound
};

inline RandomRing random_ring(std::mt19937_64& rng, std::int64_t p) {
  std::uniform_int_distribution<int> count(1, 4), coin(0, 1), odd_deg(0, 2), power(2, 4);
  std::vector<Generator> gens;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const std::string name = "g" + std::to_string(i);
    gens.push_back(coin(rng) ? odd_generator(name, 2 * odd_deg(rng) + 1) : even_generator(name, 2 + 2 * coin(rng)));
  }
  auto r = std::make_shared<RingPresentation>(p, gens);
  for (const auto& g : gens)
    if (g.parity == Parity::even) {
      r->add_relation(ipow(BigInt(p), coin(rng)), r->monomial({}, {{g.name, power(rng)}}));
      r->add_relation(BigInt(1), r->monomial({}, {{g.name, 5}}));
    }
  r->seal();
  RandomRing out{r, {}};
  for (std::int64_t d = 0; d <= 20; ++d)
    for (const auto& m : r->monomials_of_degree(d))
      if (r->order_valuation(m) != Valuation(0)) out.basis.push_back(m);
  return out;
}

inline Element random_homogeneous(std::mt19937_64& rng, const RandomRing& rr) {
  std::uniform_int_distribution<std::size_t> pick(0, rr.basis.size() - 1);
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  const Monomial& lead = rr.basis[pick(rng)];
  const std::int64_t d = rr.ring->degree(lead);
  Element e(rr.ring, lead, LocalScalar(coeff(rng), rr.ring->prime()));
  for (int t = 0; t < 3; ++t) {
    const Monomial& m = rr.basis[pick(rng)];
    if (rr.ring->degree(m) == d) e = e + Element(rr.ring, m, LocalScalar(coeff(rng), rr.ring->prime()));
  }
  return e;
}

}  // namespace gen
