#include "cfg3/fixtures.hpp"

namespace cfg3::fixtures {

IncidenceStructure pappus() {
  return {9,
          {{1, 4, 7},
           {1, 5, 8},
           {1, 6, 9},
           {2, 4, 8},
           {2, 5, 9},
           {2, 6, 7},
           {3, 4, 9},
           {3, 5, 7},
           {3, 6, 8}}};
}

IncidenceStructure nine_three_2() {
  return {9,
          {{1, 3, 7},
           {1, 4, 6},
           {1, 5, 8},
           {2, 4, 8},
           {2, 5, 7},
           {2, 6, 9},
           {3, 5, 9},
           {3, 6, 8},
           {4, 7, 9}}};
}

IncidenceStructure nine_three_3() {
  return {9,
          {{1, 4, 7},
           {1, 5, 6},
           {1, 8, 9},
           {2, 4, 6},
           {2, 5, 8},
           {2, 7, 9},
           {3, 4, 5},
           {3, 6, 9},
           {3, 7, 8}}};
}

IncidenceStructure ten_three_10() {
  return {10,
          {{10, 1, 3},
           {1, 2, 4},
           {2, 3, 5},
           {3, 4, 6},
           {4, 5, 7},
           {5, 6, 8},
           {6, 7, 9},
           {7, 8, 10},
           {8, 9, 1},
           {9, 10, 2}}};
}

IncidenceStructure desargues() {
  // Perspective lines 1-Ai-Bi, triangle sides meeting the axis, the axis.
  return {10,
          {{1, 2, 5},
           {1, 3, 6},
           {1, 4, 7},
           {2, 3, 10},
           {2, 4, 9},
           {3, 4, 8},
           {5, 6, 10},
           {5, 7, 9},
           {6, 7, 8},
           {8, 9, 10}}};
}

}  // namespace cfg3::fixtures
