#ifndef DJET_PRESENTATION_HPP
#define DJET_PRESENTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "djet/poly.hpp"

namespace djet {

/// Affine presentation over the base ring: variables, relations, and an
/// optional localizing element cutting out a principal open.
struct AffinePresentation {
    std::vector<std::string> vars;
    std::vector<JetPoly> relations; // in index-zero variables named as in vars
    std::optional<JetPoly> localizer;
};

} // namespace djet

#endif
