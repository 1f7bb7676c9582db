#include "ldt/backmap.hpp"

#include <sstream>

#include "ldt/instance_io.hpp"
#include "ldt/reductions.hpp"

namespace ldt {

Value DecodeStep::encode(int origin, Value x) const {
  if (squared) {
    const Value inner = checked_mul(checked_mul(C, C), checked_sub(x, y[origin]));
    return checked_add(checked_add(inner, checked_mul(C, gamma[origin])), y[origin]);
  }
  return checked_add(checked_mul(C, x), gamma[origin]);
}

std::pair<int, Value> DecodeStep::decode(Value z) const {
  const WideInt modulus = squared ? static_cast<WideInt>(C) * C : static_cast<WideInt>(C);
  for (int i = 0; i < 3; ++i) {
    const WideInt residue =
        squared ? static_cast<WideInt>(C) * gamma[i] + y[i] : static_cast<WideInt>(gamma[i]);
    const WideInt w = static_cast<WideInt>(z) - residue;
    if (w % modulus != 0) continue;
    WideInt x = w / modulus;
    if (squared) x += y[i];
    return {i, narrow(x, "decoded value")};
  }
  throw MapBackError("encoded value " + std::to_string(z) + " matches no origin");
}

Witness BackMap::apply(const Witness& target_witness) const {
  Witness w = target_witness;
  for (const MapStep& step : steps_) {
    if (const auto* affine = std::get_if<AffineStep>(&step)) {
      if (w.origins != std::array<int, 3>{1, 2, 3}) throw MapBackError("affine step needs a 3-partite witness");
      for (int i = 0; i < 3; ++i) {
        const WideInt shifted = static_cast<WideInt>(w.values[i]) - affine->offset[i];
        if (shifted % affine->scale[i] != 0) throw MapBackError("affine step: value not divisible by scale");
        w.values[i] = narrow(shifted / affine->scale[i], "mapped value");
      }
    } else if (std::holds_alternative<CollapseStep>(step)) {
      if (w.origins != std::array<int, 3>{1, 2, 3}) throw MapBackError("collapse step needs a 3-partite witness");
      w.origins = {1, 1, 1};
    } else {
      const auto& decode = std::get<DecodeStep>(step);
      if (w.origins != std::array<int, 3>{1, 1, 1}) throw MapBackError("decode step needs a 1-partite witness");
      Combination f{};
      std::array<Value, 3> decoded{};
      for (int k = 0; k < 3; ++k) {
        const auto [origin, x] = decode.decode(w.values[k]);
        f[k] = origin + 1;
        decoded[k] = x;
      }
      if (classify_combination(decode.alpha, f) != CombinationClass::allowed) {
        throw MapBackError("decoded combination is not allowed");
      }
      Witness source;
      for (int k = 0; k < 3; ++k) source.values[f[k] - 1] = decoded[k];
      source.origins = {1, 2, 3};
      w = source;
    }
  }
  return w;
}

BackMap BackMap::compose(const BackMap& child, const BackMap& parent) {
  std::vector<MapStep> steps = child.steps_;
  for (const MapStep& step : parent.steps_) {
    auto* last = steps.empty() ? nullptr : std::get_if<AffineStep>(&steps.back());
    const auto* next = std::get_if<AffineStep>(&step);
    if (last != nullptr && next != nullptr) {
      // target = s_c (s_p src + o_p) + o_c
      AffineStep merged;
      for (int i = 0; i < 3; ++i) {
        merged.scale[i] = checked_mul(last->scale[i], next->scale[i]);
        merged.offset[i] = checked_add(checked_mul(last->scale[i], next->offset[i]), last->offset[i]);
      }
      *last = merged;
      if (last->scale == std::array<Value, 3>{1, 1, 1} && last->offset == std::array<Value, 3>{0, 0, 0}) {
        steps.pop_back();
      }
      continue;
    }
    steps.push_back(step);
  }
  return BackMap(std::move(steps));
}

namespace {

template <typename T>
std::string triple(const std::array<T, 3>& v) {
  return std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]);
}

std::array<Value, 3> parse_triple(const std::string& s) {
  std::array<Value, 3> out{};
  std::istringstream in(s);
  char comma1 = 0, comma2 = 0;
  if (!(in >> out[0] >> comma1 >> out[1] >> comma2 >> out[2]) || comma1 != ',' || comma2 != ',') {
    throw ParseError("bad triple '" + s + "'");
  }
  std::string rest;
  if (in >> rest) throw ParseError("bad triple '" + s + "'");
  return out;
}

std::string field_value(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw ParseError("expected " + key + "=..., got '" + token + "'");
  return token.substr(key.size() + 1);
}

}  // namespace

std::string format_backmap(const BackMap& map) {
  if (map.identity()) return "identity";
  std::string out;
  for (const MapStep& step : map.steps()) {
    if (!out.empty()) out += " | ";
    if (const auto* a = std::get_if<AffineStep>(&step)) {
      out += "affine scale=" + triple(a->scale) + " offset=" + triple(a->offset);
    } else if (std::holds_alternative<CollapseStep>(step)) {
      out += "collapse";
    } else {
      const auto& d = std::get<DecodeStep>(step);
      out += "decode alpha=" + triple(d.alpha) + " C=" + std::to_string(d.C) +
             " squared=" + (d.squared ? "1" : "0") + " gamma=" + triple(d.gamma) + " y=" + triple(d.y);
    }
  }
  return out;
}

BackMap parse_backmap(std::string_view text) {
  std::vector<MapStep> steps;
  std::istringstream in{std::string(text)};
  std::string token;
  std::vector<std::vector<std::string>> groups(1);
  while (in >> token) {
    if (token == "|") {
      groups.emplace_back();
    } else {
      groups.back().push_back(token);
    }
  }
  if (groups.size() == 1 && groups[0].size() == 1 && groups[0][0] == "identity") return BackMap();
  for (const auto& g : groups) {
    if (g.empty()) throw ParseError("empty back-map step");
    if (g[0] == "affine" && g.size() == 3) {
      AffineStep a;
      a.scale = parse_triple(field_value(g[1], "scale"));
      a.offset = parse_triple(field_value(g[2], "offset"));
      for (Value s : a.scale) {
        if (s == 0) throw ParseError("affine scale must be nonzero");
      }
      steps.push_back(a);
    } else if (g[0] == "collapse" && g.size() == 1) {
      steps.push_back(CollapseStep{});
    } else if (g[0] == "decode" && g.size() == 6) {
      DecodeStep d;
      d.alpha = parse_triple(field_value(g[1], "alpha"));
      d.C = parse_triple(field_value(g[2], "C") + ",0,0")[0];
      const std::string sq = field_value(g[3], "squared");
      if (sq != "0" && sq != "1") throw ParseError("squared must be 0 or 1");
      d.squared = sq == "1";
      d.gamma = parse_triple(field_value(g[4], "gamma"));
      d.y = parse_triple(field_value(g[5], "y"));
      if (d.C < 2) throw ParseError("decode C must be at least 2");
      steps.push_back(d);
    } else {
      throw ParseError("unknown back-map step '" + g[0] + "'");
    }
  }
  return BackMap(std::move(steps));
}

}  // namespace ldt
