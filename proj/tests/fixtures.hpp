#pragma once

#include <string>

// Named graphs used across the test suites, as graph6.
namespace fixtures {

// (3,5)-Ramsey graph: 13 vertices, 8-regular, clique number 4, independence 2
inline const std::string kRamsey35 = "LJ]lmZRnn]]\\v[";

// Schlafli graph: 27 vertices, 16-regular
inline const std::string kSchlafli =
    "ZBXzz|z^Z|tFixjTtp|mFk\\uqm|gz}]FbHvHqjh]WzFy[RmtSUztaLvyF`vw";

// complement of the Schlafli graph, as printed alongside it
inline const std::string kSchlafliComplement =
    "Z??G`@?@wrDSLGQoigbKO]CA?^{VDsjIqehgmK[EM[OzIqCyegO|FO_^{?_?";

// vertex-transitive graph on 24 vertices, degree 11, clique number 3,
// independence number 6
inline const std::string kVt24 = "W@TBOkkJBBAoSCW?Qv{V}jRrhfC{UEfaRPtAw\\_ckqGt`oL";

// 13-vertex graph whose blow-ups approach the best known K4-free two-coloring
// trade-off at (s,t) = (5,4)
inline const std::string kG54 = "L@OZ@\\Vmmu}hzL";

}  // namespace fixtures
