#pragma once

#include <string>
#include <vector>

#include "grpd/group.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

enum class Side { kLeft, kRight };

const char* to_string(Side side);

// A finite group acting on {0..carrier-1}. table[p * |K| + k] is p·k for a
// right action and k·p for a left action.
struct ActionOnSet {
  FiniteGroup group;
  std::size_t carrier = 0;
  Side side = Side::kRight;
  std::vector<Id> table;
  std::vector<std::string> labels;  // optional point labels

  Id act(Id p, Elem k) const { return table[p * group.order() + k]; }
  std::string point_label(Id p) const;
};

ValidationReport validate_action(const ActionOnSet& a);
ActionOnSet trivial_action(const FiniteGroup& k, std::size_t carrier, Side side = Side::kRight);
// K acting on itself by right multiplication.
ActionOnSet regular_action(const FiniteGroup& k);

// A groupoid acting on a set through the base map. For a right action,
// act(p, g) = p·g is defined iff base[p] = t(g); for a left action,
// act(p, g) = g·p is defined iff base[p] = s(g). Undefined entries are kNone.
struct GroupoidActionOnSet {
  GroupoidPtr groupoid;
  std::size_t carrier = 0;
  std::vector<ObjId> base;
  Side side = Side::kRight;
  std::vector<Id> table;  // p * |G1| + g
  std::vector<std::string> labels;

  bool defined(Id p, ArrId g) const {
    return side == Side::kRight ? base[p] == groupoid->tgt(g)
                                : base[p] == groupoid->src(g);
  }
  Id act(Id p, ArrId g) const { return table[p * groupoid->num_arrows() + g]; }
  std::string point_label(Id p) const;
};

ValidationReport validate_action(const GroupoidActionOnSet& a);

// The stabilizer space S_G = {g | s(g) = t(g)} with G acting on the right by
// conjugation h·g = g^-1 h g. Point i is arrows[i].
struct StabilizerSpace {
  GroupoidActionOnSet action;
  std::vector<ArrId> arrows;
};

StabilizerSpace stabilizer_space(const GroupoidPtr& g);

// A right action of a finite group on a groupoid by strict automorphisms.
struct ActionOnGroupoid {
  FiniteGroup group;
  GroupoidPtr target;
  std::vector<ObjId> on_objects;  // x * |K| + k
  std::vector<ArrId> on_arrows;   // g * |K| + k

  ObjId act_object(ObjId x, Elem k) const { return on_objects[x * group.order() + k]; }
  ArrId act_arrow(ArrId g, Elem k) const { return on_arrows[g * group.order() + k]; }
};

ValidationReport validate_action(const ActionOnGroupoid& a);
ActionOnGroupoid trivial_action(const FiniteGroup& k, const GroupoidPtr& g);
// Objects and arrows of `g` acted on by K through an action on G0 only; g
// must have only identity arrows.
ActionOnGroupoid action_on_space(const ActionOnSet& a, const GroupoidPtr& space);
// Whether k·l = l·k on every object and arrow. Returns a witness or "".
std::string commuting_witness(const ActionOnGroupoid& a, const ActionOnGroupoid& b);
// The action of K × L with (k, l) acting by k then l; requires commuting
// actions on the same groupoid.
ActionOnGroupoid product_action(const ActionOnGroupoid& a, const ActionOnGroupoid& b);

}  // namespace grpd
