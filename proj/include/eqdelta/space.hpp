#pragma once

#include <string>
#include <variant>
#include <vector>

#include "eqdelta/delta_engine.hpp"
#include "eqdelta/equivariant.hpp"
#include "eqdelta/knot_model.hpp"
#include "eqdelta/plumbing.hpp"
#include "eqdelta/seifert.hpp"

namespace eqdelta {

enum class BrieskornInvolution { M, C };
enum class PlumbingInvolution { C, M };  // c_Γ, m_Γ

struct BrieskornSpace {
  BrieskornData data;
  BrieskornInvolution involution = BrieskornInvolution::C;
};
struct EvenPlumbingSpace {
  PlumbingGraph graph;
  PlumbingInvolution involution = PlumbingInvolution::C;
  std::string key;  // optional name
};
struct MontesinosCoverSpace {
  SeifertData data;
};
struct SurgeryLinkSpace {
  FramedLink link;
  std::string key;
};
struct RationalSurgerySpace {
  std::string knot;  // registry key of a strongly invertible knot
  Slope slope{1, 2};
};
struct KnotCoverSpace {
  KnotModel knot;
};
struct SpaceDescription;
struct ConnectedSumSpace {
  std::vector<SpaceDescription> parts;
};
struct LSpaceSpace {
  std::string key;
  Rat delta;
};

struct SpaceDescription {
  std::variant<BrieskornSpace, EvenPlumbingSpace, MontesinosCoverSpace, SurgeryLinkSpace, RationalSurgerySpace, KnotCoverSpace,
               ConnectedSumSpace, LSpaceSpace>
      v;
  Side orientation = Side::Pos;

  SpaceDescription reversed() const {
    SpaceDescription d = *this;
    d.orientation = opposite(orientation);
    return d;
  }
};

inline std::string involution_tag(BrieskornInvolution i) { return i == BrieskornInvolution::M ? "m" : "c"; }
inline std::string involution_tag(PlumbingInvolution i) { return i == PlumbingInvolution::M ? "m_Gamma" : "c_Gamma"; }

inline std::string space_key(const SpaceDescription& d) {
  struct V {
    std::string operator()(const BrieskornSpace& b) const { return to_string(b.data); }
    std::string operator()(const EvenPlumbingSpace& p) const {
      if (!p.key.empty()) return p.key;
      std::string s = "Y_Gamma[";
      for (std::size_t i = 0; i < p.graph.size(); ++i) s += (i ? "," : "") + p.graph.vertices()[i].degree.str();
      return s + "]";
    }
    std::string operator()(const MontesinosCoverSpace& m) const { return to_string(m.data); }
    std::string operator()(const SurgeryLinkSpace& s) const { return s.key.empty() ? "Y(L,F)" : s.key; }
    std::string operator()(const RationalSurgerySpace& r) const { return "S_{" + to_string(r.slope) + "}(" + r.knot + ")"; }
    std::string operator()(const KnotCoverSpace& k) const { return "Sigma_2(" + knot_key(k.knot) + ")"; }
    std::string operator()(const ConnectedSumSpace& c) const {
      std::string s;
      for (std::size_t i = 0; i < c.parts.size(); ++i) s += (i ? " # " : "") + space_key(c.parts[i]);
      return s;
    }
    std::string operator()(const LSpaceSpace& l) const { return l.key; }
  };
  std::string base = std::visit(V{}, d.v);
  return d.orientation == Side::Neg ? "-" + (std::holds_alternative<ConnectedSumSpace>(d.v) ? "(" + base + ")" : base) : base;
}

inline std::string involution_of(const SpaceDescription& d) {
  if (auto* b = std::get_if<BrieskornSpace>(&d.v)) return involution_tag(b->involution);
  if (auto* p = std::get_if<EvenPlumbingSpace>(&d.v)) return involution_tag(p->involution);
  if (std::holds_alternative<MontesinosCoverSpace>(d.v) || std::holds_alternative<KnotCoverSpace>(d.v)) return "covering";
  if (std::holds_alternative<SurgeryLinkSpace>(d.v) || std::holds_alternative<RationalSurgerySpace>(d.v)) return "induced";
  if (auto* c = std::get_if<ConnectedSumSpace>(&d.v)) {
    std::string s;
    for (const auto& x : c->parts) s += (s.empty() ? "" : "#") + involution_of(x);
    return s;
  }
  return "any";
}

inline SpaceDescription brieskorn_space(std::initializer_list<long long> e, BrieskornInvolution inv, Side o = Side::Pos) {
  return {BrieskornSpace{BrieskornData::of(e), inv}, o};
}

}  // namespace eqdelta
