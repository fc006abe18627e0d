#pragma once

// Schwarz reflection geometry: Schwarz functions of analytic curves, the
// symmetric-space product of curves, Davis iteration and its continuous
// limit, the exact circle model with Lorentz coordinates, singular
// geodesics from holomorphic maps, and the verification suites.

#include "schwarz/checks.hpp"
#include "schwarz/csvio.hpp"
#include "schwarz/curve.hpp"
#include "schwarz/dynamics.hpp"
#include "schwarz/gallery.hpp"
#include "schwarz/holo.hpp"
#include "schwarz/jet.hpp"
#include "schwarz/lorentz.hpp"
#include "schwarz/mobius.hpp"
#include "schwarz/ode.hpp"
#include "schwarz/pencil.hpp"
#include "schwarz/poly.hpp"
#include "schwarz/polyrat.hpp"
#include "schwarz/roots.hpp"
#include "schwarz/svg.hpp"
#include "schwarz/symmetric.hpp"
#include "schwarz/velocity.hpp"
