#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ldt/core.hpp"

namespace ldt {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format:
//   3LDT p=<1|3> alpha=<a1>,<a2>,<a3> t=<t> U=<U>
//   <set lines: X, or A1 A2 A3>
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);
std::string format_instance(const Instance& inst);

// WITNESS x1=<v> x2=<v> x3=<v> origins=<o1>,<o2>,<o3>
std::string format_witness(const Witness& w);
Witness parse_witness(std::string_view line);

// "p=<1|3>,alpha=<a,b,c>,t=<t>", as accepted by `reduce --to`.
Variant parse_variant_spec(std::string_view spec);
std::string format_variant_spec(const Variant& v);

}  // namespace ldt
