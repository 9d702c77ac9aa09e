#pragma once

#include <string>
#include <vector>

#include "kpos/braid.hpp"
#include "kpos/diagram.hpp"

namespace fx {

inline const char* const kTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
inline const char* const k74 =
    "PD[X[1,6,2,7],X[3,10,4,11],X[5,12,6,13],X[7,14,8,1],X[9,4,10,5],X[11,2,12,3],X[13,8,14,9]]";
inline const char* const kUnknot = "PD[O[]]";
// The trefoil after a Reidemeister II move, and after two Reidemeister I kinks.
inline const char* const kTrefoilR2 = "PD[X[6,1,7,2],X[2,7,3,8],X[8,3,9,4],X[4,9,5,10],X[5,1,6,10]]";
inline const char* const kTrefoilR1 = "PD[X[8,1,9,2],X[2,9,3,10],X[10,3,1,4],X[7,4,8,5],X[6,5,7,6]]";

inline kpos::Diagram trefoil() { return kpos::parse_pd(kTrefoil); }
inline kpos::Diagram seven_four() { return kpos::parse_pd(k74); }
inline kpos::Diagram unknot() { return kpos::parse_pd(kUnknot); }
inline kpos::Diagram mirror_trefoil() { return trefoil().mirror(); }
inline kpos::Diagram braid(const char* text) { return kpos::braid_closure(kpos::parse_braid(text)); }
inline kpos::Diagram hopf() { return braid("strands=2; 1 1"); }
inline kpos::Diagram negative_hopf() { return braid("strands=2; -1 -1"); }
inline kpos::Diagram figure_eight() { return braid("strands=3; 1 -2 1 -2"); }

struct Named {
  std::string name;
  kpos::Diagram diagram;
};

// Small diagrams of assorted shapes, positive and not.
inline std::vector<Named> corpus() {
  return {
      {"unknot", unknot()},
      {"unlink", kpos::parse_pd("PD[O[],O[]]")},
      {"trefoil", trefoil()},
      {"mirror trefoil", mirror_trefoil()},
      {"7_4", seven_four()},
      {"hopf", hopf()},
      {"negative hopf", negative_hopf()},
      {"figure eight", figure_eight()},
      {"kinked unknot", braid("strands=2; 1")},
      {"T(2,5)", braid("strands=2; 1 1 1 1 1")},
      {"T(3,4)", braid("strands=3; 1 2 1 2 1 2 1 2")},
      {"three chain", braid("strands=3; 1 1 2 2")},
      {"trefoil plus circle", braid("strands=3; 1 1 1")},
      {"mixed 3-braid", braid("strands=3; 1 1 -2 1 -2 -2")},
      {"mixed 4-braid", braid("strands=4; 1 -2 3 2 -1 3")},
      {"trefoil after R2", kpos::parse_pd(kTrefoilR2)},
      {"trefoil after R1 twice", kpos::parse_pd(kTrefoilR1)},
  };
}

}  // namespace fx
