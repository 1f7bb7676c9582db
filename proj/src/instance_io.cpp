#include "ldt/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

namespace ldt {

namespace {

Value parse_int(std::string_view tok, const char* what) {
  Value v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(std::string("bad integer for ") + what + ": '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Coefficients parse_alpha(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw ParseError("alpha needs three comma-separated integers");
  return {parse_int(parts[0], "alpha"), parse_int(parts[1], "alpha"), parse_int(parts[2], "alpha")};
}

Parity parse_parity(std::string_view s) {
  const Value p = parse_int(s, "p");
  if (p == 1) return Parity::one_partite;
  if (p == 3) return Parity::three_partite;
  throw ParseError("p must be 1 or 3");
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty instance");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  if (magic != "3LDT") throw ParseError("instance header must start with 3LDT");

  Variant var;
  Value universe = 0;
  bool seen_p = false, seen_alpha = false, seen_t = false, seen_u = false;
  std::string field;
  while (hs >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad header field '" + field + "'");
    const std::string_view key(field.data(), eq);
    const std::string_view val(field.data() + eq + 1, field.size() - eq - 1);
    if (key == "p") {
      var.parity = parse_parity(val);
      seen_p = true;
    } else if (key == "alpha") {
      var.alpha = parse_alpha(val);
      seen_alpha = true;
    } else if (key == "t") {
      var.t = parse_int(val, "t");
      seen_t = true;
    } else if (key == "U") {
      universe = parse_int(val, "U");
      seen_u = true;
    } else {
      throw ParseError("unknown header field '" + std::string(key) + "'");
    }
  }
  if (!(seen_p && seen_alpha && seen_t && seen_u)) {
    throw ParseError("header needs p=, alpha=, t= and U=");
  }

  std::vector<std::vector<Value>> sets;
  std::string line;
  for (std::size_t i = 0; i < var.set_count(); ++i) {
    if (!std::getline(in, line)) throw ParseError("missing set line " + std::to_string(i + 1));
    std::istringstream ls(line);
    std::vector<Value> values;
    std::string tok;
    while (ls >> tok) values.push_back(parse_int(tok, "element"));
    sets.push_back(std::move(values));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("trailing content after set lines");
    }
  }
  try {
    return Instance(var, universe, std::move(sets));
  } catch (const InvalidInstance& e) {
    throw ParseError(e.what());
  }
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  const Variant& v = inst.variant();
  out << "3LDT p=" << static_cast<int>(v.parity) << " alpha=" << v.alpha[0] << ',' << v.alpha[1]
      << ',' << v.alpha[2] << " t=" << v.t << " U=" << inst.universe() << '\n';
  for (const auto& s : inst.sets()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out << ' ';
      out << s[i];
    }
    out << '\n';
  }
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

std::string format_witness(const Witness& w) {
  std::ostringstream out;
  out << "WITNESS x1=" << w.values[0] << " x2=" << w.values[1] << " x3=" << w.values[2]
      << " origins=" << w.origins[0] << ',' << w.origins[1] << ',' << w.origins[2];
  return out.str();
}

Witness parse_witness(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string magic;
  in >> magic;
  if (magic != "WITNESS") throw ParseError("witness line must start with WITNESS");
  Witness w;
  bool seen[4] = {false, false, false, false};
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad witness field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string_view val(field.data() + eq + 1, field.size() - eq - 1);
    if (key == "x1" || key == "x2" || key == "x3") {
      const int i = key[1] - '1';
      w.values[i] = parse_int(val, "witness value");
      seen[i] = true;
    } else if (key == "origins") {
      const auto parts = split(val, ',');
      if (parts.size() != 3) throw ParseError("origins needs three entries");
      for (int i = 0; i < 3; ++i) {
        const Value o = parse_int(parts[i], "origin");
        if (o < 1 || o > 3) throw ParseError("origin out of range");
        w.origins[i] = static_cast<int>(o);
      }
      seen[3] = true;
    } else {
      throw ParseError("unknown witness field '" + key + "'");
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3])) throw ParseError("incomplete witness line");
  return w;
}

Variant parse_variant_spec(std::string_view spec) {
  static const std::regex pattern(
      R"(^p=(\d+),alpha=([+-]?\d+),([+-]?\d+),([+-]?\d+),t=([+-]?\d+)$)");
  std::cmatch m;
  if (!std::regex_match(spec.data(), spec.data() + spec.size(), m, pattern)) {
    throw ParseError("variant must look like p=<1|3>,alpha=<a,b,c>,t=<t>");
  }
  Variant v;
  v.parity = parse_parity(m[1].str());
  v.alpha = {parse_int(m[2].str(), "alpha"), parse_int(m[3].str(), "alpha"),
             parse_int(m[4].str(), "alpha")};
  v.t = parse_int(m[5].str(), "t");
  return v;
}

std::string format_variant_spec(const Variant& v) {
  std::ostringstream out;
  out << "p=" << static_cast<int>(v.parity) << ",alpha=" << v.alpha[0] << ',' << v.alpha[1] << ','
      << v.alpha[2] << ",t=" << v.t;
  return out.str();
}

}  // namespace ldt
