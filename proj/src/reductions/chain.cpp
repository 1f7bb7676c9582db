#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

namespace {

struct Stage {
  std::vector<Instance> instances;
  std::vector<BackMap> maps;  // each maps a stage instance back to the source
  std::uint64_t dropped = 0;
};

// Applies step to every instance of the stage and composes the back-maps.
template <typename Step>
Stage advance(const Stage& in, Step&& step) {
  Stage out;
  out.dropped = in.dropped;
  for (std::size_t i = 0; i < in.instances.size(); ++i) {
    ReductionOutput r = step(in.instances[i]);
    out.dropped += r.stats.dropped;
    for (std::size_t k = 0; k < r.count(); ++k) {
      out.instances.push_back(std::move(r.targets[k]));
      out.maps.push_back(BackMap::compose(r.maps[k], in.maps[i]));
    }
  }
  return out;
}

// Largest U' >= 1 whose 1-partite image stays inside [-bound, bound], or 0.
Value largest_preimage_universe(const Variant& v, Value bound) {
  Value lo = 0;
  Value hi = bound;
  while (lo < hi) {
    const Value mid = lo + (hi - lo + 1) / 2;
    bool fits;
    try {
      fits = three_to_one_universe(v, mid) <= bound;
    } catch (const OverflowError&) {
      fits = false;
    }
    if (fits) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

ReductionOutput full_chain(const Instance& source, const Variant& target) {
  const Variant& from = source.variant();
  if (!from.non_trivial()) throw std::invalid_argument("full_chain: source variant is trivial");
  if (!target.non_trivial()) throw std::invalid_argument("full_chain: target variant is trivial");

  ReductionOutput out;
  if (from == target) {
    out.add(source, BackMap());
    return out;
  }

  Stage stage;
  stage.instances.push_back(source);
  stage.maps.emplace_back();
  if (from.parity == Parity::one_partite) stage = advance(stage, [](const Instance& x) { return reduce_1_to_3(x); });

  if (from.alpha == target.alpha) {
    if (from.t != target.t) {
      stage = advance(stage, [&](const Instance& x) { return shift_variant(x, target.t); });
    }
  } else {
    if (from.t != 0) stage = advance(stage, [](const Instance& x) { return shift_variant(x, 0); });
    stage = advance(stage, [&](const Instance& x) { return rescale_variant(x, target.alpha); });
    if (target.t != 0) stage = advance(stage, [&](const Instance& x) { return shift_variant(x, target.t); });
  }

  Variant middle = target;
  middle.parity = Parity::three_partite;
  const Value goal = target.parity == Parity::three_partite
                         ? source.universe()
                         : largest_preimage_universe(middle, source.universe());
  bool repaired = true;
  Stage repair;
  repair.dropped = stage.dropped;
  for (std::size_t i = 0; i < stage.instances.size(); ++i) {
    const Instance& x = stage.instances[i];
    if (x.universe() <= goal) {
      repair.instances.push_back(x);
      repair.maps.push_back(stage.maps[i]);
      continue;
    }
    ReductionOutput r;
    try {
      if (goal < 1) throw std::invalid_argument("no admissible universe");
      r = decrease_universe(x, Ratio{x.universe(), goal});
    } catch (const std::invalid_argument&) {
      repaired = false;
      repair.instances.push_back(x);
      repair.maps.push_back(stage.maps[i]);
      continue;
    }
    repair.dropped += r.stats.dropped;
    for (std::size_t k = 0; k < r.count(); ++k) {
      repair.instances.push_back(std::move(r.targets[k]));
      repair.maps.push_back(BackMap::compose(r.maps[k], stage.maps[i]));
    }
  }
  stage = std::move(repair);

  if (target.parity == Parity::one_partite) stage = advance(stage, [](const Instance& x) { return reduce_3_to_1(x); });

  for (std::size_t i = 0; i < stage.instances.size(); ++i) out.add(std::move(stage.instances[i]), std::move(stage.maps[i]));
  out.stats.dropped = stage.dropped;
  out.stats.universe_repaired = repaired;
  return out;
}

}  // namespace ldt
