#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "twistmat/ring.hpp"

namespace twistmat::rings {

/// Polynomial over F in either dense ascending digit form ("1101" is
/// 1+t+t^3) or sparse form ("t^3+t+1"). A digits-only string longer than one
/// character is read as dense.
Poly parse_poly(const Field& F, std::string_view text, char var = 't');

/// Parse an element written with + - * / ^, parentheses, integers, the
/// variable t (poly-like rings), the field generator s, and sqrt(d).
RingElement parse_element(const Ring& r, std::string_view text);

/// Ring from a JSON object such as
/// {"kind":"localized_poly","p":2,"t_inverted":true,"inverted":["1101"]}.
Ring ring_from_json(const nlohmann::json& j);

/// Ring from JSON text or a short name: "Z", "Z[1/6]", "Z[sqrt(2)]", "F_4",
/// "F_2[t]", "F_2[t,t^-1]", "F_2[t,t^-1,(t^3+t+1)^-1]", "R_f".
Ring parse_ring(std::string_view text);

nlohmann::json ring_to_json(const Ring& r);

}  // namespace twistmat::rings
