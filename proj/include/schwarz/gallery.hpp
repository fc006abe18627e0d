#pragma once

#include <string>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/polyrat.hpp"

namespace schwarz {

// The singular-geodesic maps used by the bundled figures.
inline PolyRat gallery_map(const std::string& name) {
  if (name == "cusp-quadratic") return PolyRat::polynomial({4.0, -4.0, 1.0});  // (z-2)^2
  if (name == "cusp-quartic") return PolyRat({4.0}, {0.0, 4.0, 0.0, 0.0, 1.0});  // 4/(z^4+4z)
  if (name == "weave" || name == "celtic-cross")
    return PolyRat({5.0}, {0.0, -5.0, 0.0, 0.0, 0.0, 1.0});  // 5/(z^5-5z)
  if (name == "turtle")
    return PolyRat({cplx(-54.0, -108.0), cplx(-18.0, 0.0), cplx(-6.0, 12.0), cplx(6.0, 0.0)},
                   {0.0, -6.0, 0.0, 0.0, 0.0, 0.0, 1.0});  // 6(z-3)(z+2-i)(z+3i)/(z^6-6z)
  if (name == "bicycle-race")
    return PolyRat({cplx(-12.0, -12.0), cplx(-6.0, 6.0), cplx(-6.0, 0.0), cplx(6.0, 0.0)},
                   {0.0, -6.0, 0.0, 0.0, 0.0, 0.0, 1.0});  // 6(z-2)(z+1-i)(z+i)/(z^6-6z)
  if (name == "confocal") return PolyRat({0.5, 0.0, 0.5}, {0.0, 1.0});  // (z^2+1)/(2z)
  raise(errc::validation, "unknown gallery map: " + name);
}

inline std::vector<std::string> gallery_names() {
  return {"cusp-quadratic", "cusp-quartic", "weave", "celtic-cross", "turtle", "bicycle-race", "confocal"};
}

}  // namespace schwarz
