#pragma once

#include <string_view>

namespace seatplan {

/// Orders identifiers with embedded digit runs compared numerically, so that
/// "ws-2" < "ws-10" and "r1c9" < "r1c10". Ties on numeric value fall back to
/// plain lexicographic order, which keeps the relation a strict weak order.
bool natural_less(std::string_view a, std::string_view b);

struct NaturalLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

}  // namespace seatplan
