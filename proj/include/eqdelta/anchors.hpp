#pragma once

// Citation labels attached to engine facts and reports.
namespace eqdelta::anchors {

inline constexpr const char* kMonotone = "prop:deltaprop2(1)-(2)";
inline constexpr const char* kDuality = "prop:deltaprop2(3)";
inline constexpr const char* kCongruence = "prop:deltaprop(5)";
inline constexpr const char* kOrdinaryBound = "prop:deltaprop(3)";
inline constexpr const char* kLSpace = "prop:deltaprop(4)";
inline constexpr const char* kLBound = "prop:jbound";
inline constexpr const char* kTail = "def:j";
inline constexpr const char* kIndexValidity = "valid S-index: i = 0 or j <= 1";
inline constexpr const char* kDisjoint = "rem:disjoint";

inline constexpr const char* kFroyE = "thm:froy(1)";
inline constexpr const char* kFroyR = "thm:froy(2)";
inline constexpr const char* kFroyS = "thm:froy(3)";

inline constexpr const char* kBrie1 = "thm:briedelt(1)";
inline constexpr const char* kBrie2 = "thm:briedelt(2)";
inline constexpr const char* kBrie3 = "thm:briedelt(3)";
inline constexpr const char* kBrie4 = "thm:briedelt(4)";
inline constexpr const char* kBrie5 = "thm:briedelt(5)";
inline constexpr const char* kBrie6 = "thm:briedelt(6)";
inline constexpr const char* kBrie7 = "thm:briedelt(7)";
inline constexpr const char* kCasson = "rem:casson (delta^E_j(Sigma(2,p,q),m) = -lambda)";
inline constexpr const char* kCassonMirror = "example after prop:def (delta^E_inf(-Sigma(2,p,q),m) = lambda)";

inline constexpr const char* kPlumb1 = "thm:plumbdelta(1)";
inline constexpr const char* kPlumb2 = "thm:plumbdelta(2)";
inline constexpr const char* kMont = "thm:mont";
inline constexpr const char* kSurg1 = "thm:surglink(1)";
inline constexpr const char* kSurg2 = "thm:surglink(2)";
inline constexpr const char* kSlamDunk = "thm:slamd";
inline constexpr const char* kHalfInteger = "prop:12p";
inline constexpr const char* kV0 = "thm:V0 (delta^E_inf(-Y) = delta(-Y) - V0(K))";
inline constexpr const char* kNuPlus = "thm:V0 (nu+(K) > 0 => j^E(-Y) > 0)";

inline constexpr const char* kKnot2 = "thm:deltaK(2)";
inline constexpr const char* kKnot3 = "thm:deltaK(3)";
inline constexpr const char* kKnot4 = "thm:deltaK(4)";
inline constexpr const char* kKnot5 = "thm:deltaK(5)";
inline constexpr const char* kKnot6 = "thm:deltaK(6)";
inline constexpr const char* kKnot7 = "thm:deltaK(7)";
inline constexpr const char* kSubadd = "prop:subadd";
inline constexpr const char* kCsum = "prop:csum";

inline constexpr const char* kDef1 = "prop:def(1)";
inline constexpr const char* kDef2 = "prop:def(2)";
inline constexpr const char* kDef3 = "prop:def(3)";
inline constexpr const char* kBplus1 = "prop:b+1(1)";
inline constexpr const char* kBplus2 = "prop:b+1(2)";
inline constexpr const char* kHt = "prop:ht";
inline constexpr const char* kHm = "prop:hm";
inline constexpr const char* kNsi = "prop:nsi";

inline constexpr const char* kEemb = "prop:eemb";
inline constexpr const char* kEpplumb = "prop:epplumb";
inline constexpr const char* kDs = "prop:ds";
inline constexpr const char* kEmb1 = "prop:embbound(1)";
inline constexpr const char* kEmb2 = "prop:embbound(2)";
inline constexpr const char* kEmb3 = "prop:embbound(3)";
inline constexpr const char* kEmb4 = "prop:embbound(4)";
inline constexpr const char* kEmb5 = "prop:embbound(5)";
inline constexpr const char* kTpq = "prop:tpq";
inline constexpr const char* kRokhlinEmb = "ex:epsbri (mu(Y) = 1 => all embedding numbers >= 8)";
inline constexpr const char* kLatticeSplit = "definite-lattice split (proof of prop:embbound(5))";
inline constexpr const char* kEmbOrder = "sec:emb (eps_+- >= eps(Y,sigma) >= eps(Y))";

inline constexpr const char* kXy = "prop:xy";
inline constexpr const char* kBpm = "equ:bpm";
inline constexpr const char* kNoxy = "prop:noxy";

inline constexpr const char* kRegistry = "registry";

}  // namespace eqdelta::anchors
