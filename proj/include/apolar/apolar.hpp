#pragma once

// Umbrella header.

#include "apolar/forms.hpp"
#include "apolar/moments.hpp"
#include "apolar/multivar.hpp"
#include "apolar/ops.hpp"
#include "apolar/poly.hpp"
#include "apolar/poly_matrix.hpp"
#include "apolar/quadrature.hpp"
#include "apolar/rational.hpp"
#include "apolar/selfcheck.hpp"
#include "apolar/serialize.hpp"
#include "apolar/symfun.hpp"
