#include <algorithm>
#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

namespace {

unsigned index_bits(std::size_t n) {
  unsigned L = 0;
  while ((std::size_t{1} << L) < n) ++L;
  return L;
}

}  // namespace

int ColoringFn::color(std::size_t index) const {
  const unsigned sig = 2 * ((index >> b1) & 1) + ((index >> b2) & 1);
  // g_w: the signatures other than w, in order, get colours 0, 1, 2.
  if (sig == w) return 0;
  return static_cast<int>(sig < w ? sig : sig - 1);
}

std::size_t color_family_bound(std::size_t n) {
  const std::size_t L = index_bits(n);
  return 4 * L * L;
}

std::vector<ColoringFn> build_color_family(std::size_t n) {
  if (n < 3) throw std::invalid_argument("build_color_family: n must be at least 3");
  const unsigned L = index_bits(n);
  std::vector<ColoringFn> family;
  family.reserve(color_family_bound(n));
  for (unsigned b1 = 0; b1 < L; ++b1) {
    for (unsigned b2 = 0; b2 < L; ++b2) {
      for (unsigned w = 0; w < 4; ++w) family.push_back({b1, b2, w});
    }
  }
  return family;
}

ReductionOutput reduce_1_to_3(const Instance& inst) {
  const Variant& v = inst.variant();
  if (v.parity != Parity::one_partite) throw std::invalid_argument("reduce_1_to_3: source must be 1-partite");
  ReductionOutput out;
  const auto X = inst.set(0);
  if (X.size() < 3) return out;

  Variant target = v;
  target.parity = Parity::three_partite;
  const BackMap map({CollapseStep{}});
  std::array<int, 3> perm{0, 1, 2};
  for (const ColoringFn& f : build_color_family(X.size())) {
    std::array<std::vector<Value>, 3> classes;
    for (std::size_t c = 0; c < X.size(); ++c) classes[f.color(c)].push_back(X[c]);
    const bool empty = classes[0].empty() || classes[1].empty() || classes[2].empty();
    std::sort(perm.begin(), perm.end());
    do {
      if (empty) {
        ++out.stats.dropped;
        continue;
      }
      std::vector<std::vector<Value>> sets(3);
      for (int i = 0; i < 3; ++i) sets[perm[i]] = classes[i];
      out.add(Instance(target, inst.universe(), std::move(sets)), map);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace ldt
