#pragma once

#include <string>
#include <string_view>

#include "fuglede/group.hpp"

namespace fuglede {

/// Parses `N=<modulus>;S=<e>(,<e>)*`. Elements are reduced mod N and may repeat.
/// Throws ParseError with the offending position.
IndicatorMultiset parse_set_literal(std::string_view text);

/// Inverse of parse_set_literal: sorted elements, repeated by multiplicity.
std::string format_set_literal(const IndicatorMultiset& u);

}  // namespace fuglede
