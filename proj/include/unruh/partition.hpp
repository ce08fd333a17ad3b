#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unruh {

/// Which negativity is being asked for. The first three are tripartite
/// one-versus-two cuts of (A, I, I'); the last three are bipartite
/// reductions obtained by tracing out the remaining party.
enum class Quantity { a_rs, r_as, s_ar, rs, ar, as };

inline constexpr std::array<Quantity, 3> kTripartite{Quantity::a_rs, Quantity::r_as,
                                                     Quantity::s_ar};
inline constexpr std::array<Quantity, 3> kBipartite{Quantity::rs, Quantity::ar,
                                                    Quantity::as};

inline bool is_tripartite(Quantity q) {
  return q == Quantity::a_rs || q == Quantity::r_as || q == Quantity::s_ar;
}

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::a_rs: return "A-RS";
    case Quantity::r_as: return "R-AS";
    case Quantity::s_ar: return "S-AR";
    case Quantity::rs: return "RS";
    case Quantity::ar: return "AR";
    case Quantity::as: return "AS";
  }
  return "?";
}

inline Quantity parse_quantity(std::string_view s) {
  for (auto q : {Quantity::a_rs, Quantity::r_as, Quantity::s_ar, Quantity::rs,
                 Quantity::ar, Quantity::as}) {
    if (s == to_string(q)) return q;
  }
  throw std::invalid_argument("unknown quantity '" + std::string(s) +
                              "'; expected one of A-RS, R-AS, S-AR, RS, AR, AS");
}

/// Factor whose indices are transposed when evaluating the quantity.
inline std::string transposed_label(Quantity q) {
  switch (q) {
    case Quantity::a_rs: return "A";
    case Quantity::r_as: return "I";
    case Quantity::s_ar: return "I'";
    case Quantity::rs: return "I";
    case Quantity::ar: return "A";
    case Quantity::as: return "A";
  }
  return "";
}

/// Factor traced out of (A, I, I') before transposing; empty for the
/// tripartite cuts.
inline std::string dropped_label(Quantity q) {
  switch (q) {
    case Quantity::rs: return "A";
    case Quantity::ar: return "I'";
    case Quantity::as: return "I";
    default: return "";
  }
}

/// The quantity that plays the same role after exchanging the two
/// accelerated observers.
inline Quantity observer_swapped(Quantity q) {
  switch (q) {
    case Quantity::r_as: return Quantity::s_ar;
    case Quantity::s_ar: return Quantity::r_as;
    case Quantity::ar: return Quantity::as;
    case Quantity::as: return Quantity::ar;
    default: return q;
  }
}

}  // namespace unruh
