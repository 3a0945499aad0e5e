#pragma once

#include "cfg3/incidence.hpp"

namespace cfg3::fixtures {

/// Pappus configuration, (9_3)_1.
IncidenceStructure pappus();

/// The cyclic (9_3)_2 configuration (admits i -> i+2 mod 9).
IncidenceStructure nine_three_2();

/// The third of the three (9_3) configurations.
IncidenceStructure nine_three_3();

/// (10_3)_10, the cyclic table equal to C(10,1,3) up to block order.
IncidenceStructure ten_three_10();

/// Desargues configuration, (10_3)_1, built from two perspective
/// triangles: center 1, triangles {2,3,4} and {5,6,7}, axis {8,9,10}.
IncidenceStructure desargues();

}  // namespace cfg3::fixtures
