#include "grpd/action.hpp"

namespace grpd {

const char* to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

std::string ActionOnSet::point_label(Id p) const {
  return p < labels.size() ? labels[p] : std::to_string(p);
}

std::string GroupoidActionOnSet::point_label(Id p) const {
  return p < labels.size() ? labels[p] : std::to_string(p);
}

ValidationReport validate_action(const ActionOnSet& a) {
  ValidationReport r;
  const std::size_t k = a.group.order();
  if (a.table.size() != a.carrier * k) {
    r.structural.push_back("action table has " + std::to_string(a.table.size()) +
                           " entries, expected " + std::to_string(a.carrier * k));
    return r;
  }
  for (Id v : a.table)
    if (v >= a.carrier) {
      r.structural.push_back("action table entry out of range");
      return r;
    }
  const FiniteGroup& K = a.group;
  for (Id p = 0; p < a.carrier; ++p) {
    if (a.act(p, K.identity()) != p) r.add("identity acts trivially", a.point_label(p));
    for (Elem x = 0; x < k; ++x)
      for (Elem y = 0; y < k; ++y) {
        const std::string w = "(" + a.point_label(p) + ", " + K.label(x) + ", " + K.label(y) + ")";
        if (a.side == Side::kRight) {
          if (a.act(a.act(p, x), y) != a.act(p, K.mul(x, y))) r.add("(p·k)·h = p·(kh)", w);
        } else {
          if (a.act(a.act(p, y), x) != a.act(p, K.mul(x, y))) r.add("k(hp) = (kh)p", w);
        }
      }
  }
  return r;
}

ActionOnSet trivial_action(const FiniteGroup& k, std::size_t carrier, Side side) {
  ActionOnSet a{k, carrier, side, std::vector<Id>(carrier * k.order()), {}};
  for (Id p = 0; p < carrier; ++p)
    for (Elem e = 0; e < k.order(); ++e) a.table[p * k.order() + e] = p;
  return a;
}

ActionOnSet regular_action(const FiniteGroup& k) {
  ActionOnSet a{k, k.order(), Side::kRight, std::vector<Id>(k.order() * k.order()), k.labels()};
  for (Elem p = 0; p < k.order(); ++p)
    for (Elem e = 0; e < k.order(); ++e) a.table[p * k.order() + e] = k.mul(p, e);
  return a;
}

ValidationReport validate_action(const GroupoidActionOnSet& a) {
  ValidationReport r;
  const FiniteGroupoid& G = *a.groupoid;
  const std::size_t na = G.num_arrows();
  if (a.base.size() != a.carrier || a.table.size() != a.carrier * na) {
    r.structural.push_back("action tables do not match the carrier");
    return r;
  }
  for (ObjId x : a.base)
    if (x >= G.num_objects()) {
      r.structural.push_back("base map entry out of range");
      return r;
    }
  for (Id p = 0; p < a.carrier; ++p)
    for (ArrId g = 0; g < na; ++g)
      if (a.defined(p, g)) {
        const Id q = a.act(p, g);
        if (q == kNone) {
          r.add("action defined on the fiber product", a.point_label(p) + " by " + G.arrow_label(g));
        } else if (q >= a.carrier) {
          r.structural.push_back("action entry out of range");
          return r;
        }
      }
  if (!r.ok()) return r;

  for (Id p = 0; p < a.carrier; ++p) {
    const ObjId x = a.base[p];
    if (a.act(p, G.unit(x)) != p) r.add("unit acts trivially", a.point_label(p));
    if (a.side == Side::kRight) {
      for (ArrId g : G.arrows_into(x)) {
        const Id pg = a.act(p, g);
        if (a.base[pg] != G.src(g)) {
          r.add("base(p·g) = s(g)", a.point_label(p) + " by " + G.arrow_label(g));
          continue;
        }
        for (ArrId h : G.arrows_into(G.src(g)))
          if (a.act(pg, h) != a.act(p, G.comp(g, h)))
            r.add("(p·g)·h = p·(gh)",
                  "(" + a.point_label(p) + ", " + G.arrow_label(g) + ", " + G.arrow_label(h) + ")");
      }
    } else {
      for (ArrId h : G.arrows_from(x)) {
        const Id hp = a.act(p, h);
        if (a.base[hp] != G.tgt(h)) {
          r.add("base(g·p) = t(g)", G.arrow_label(h) + " on " + a.point_label(p));
          continue;
        }
        for (ArrId g : G.arrows_from(G.tgt(h)))
          if (a.act(hp, g) != a.act(p, G.comp(g, h)))
            r.add("g·(h·p) = (gh)·p",
                  "(" + G.arrow_label(g) + ", " + G.arrow_label(h) + ", " + a.point_label(p) + ")");
      }
    }
  }
  return r;
}

StabilizerSpace stabilizer_space(const GroupoidPtr& gp) {
  const FiniteGroupoid& G = *gp;
  StabilizerSpace s;
  std::vector<Id> index(G.num_arrows(), kNone);
  for (ArrId a = 0; a < G.num_arrows(); ++a)
    if (G.is_loop(a)) {
      index[a] = static_cast<Id>(s.arrows.size());
      s.arrows.push_back(a);
    }
  auto& act = s.action;
  act.groupoid = gp;
  act.carrier = s.arrows.size();
  act.side = Side::kRight;
  act.table.assign(act.carrier * G.num_arrows(), kNone);
  for (Id p = 0; p < act.carrier; ++p) {
    const ArrId h = s.arrows[p];
    act.base.push_back(G.src(h));
    act.labels.push_back(G.arrow_label(h));
    for (ArrId g : G.arrows_into(G.src(h)))
      act.table[p * G.num_arrows() + g] = index[G.comp(G.inv(g), G.comp(h, g))];
  }
  return s;
}

ValidationReport validate_action(const ActionOnGroupoid& a) {
  ValidationReport r;
  const FiniteGroupoid& G = *a.target;
  const FiniteGroup& K = a.group;
  const std::size_t k = K.order();
  if (a.on_objects.size() != G.num_objects() * k || a.on_arrows.size() != G.num_arrows() * k) {
    r.structural.push_back("action tables do not match the groupoid");
    return r;
  }
  for (ObjId y : a.on_objects)
    if (y >= G.num_objects()) {
      r.structural.push_back("object image out of range");
      return r;
    }
  for (ArrId b : a.on_arrows)
    if (b >= G.num_arrows()) {
      r.structural.push_back("arrow image out of range");
      return r;
    }
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    if (a.act_object(x, K.identity()) != x) r.add("identity acts trivially on objects", G.object_label(x));
    for (Elem u = 0; u < k; ++u) {
      if (G.unit(a.act_object(x, u)) != a.act_arrow(G.unit(x), u))
        r.add("u(x)·k = u(x·k)", "(" + G.object_label(x) + ", " + K.label(u) + ")");
      for (Elem v = 0; v < k; ++v)
        if (a.act_object(a.act_object(x, u), v) != a.act_object(x, K.mul(u, v)))
          r.add("(x·k)·h = x·(kh)", "(" + G.object_label(x) + ", " + K.label(u) + ", " + K.label(v) + ")");
    }
  }
  for (ArrId g = 0; g < G.num_arrows(); ++g) {
    if (a.act_arrow(g, K.identity()) != g) r.add("identity acts trivially on arrows", G.arrow_label(g));
    for (Elem u = 0; u < k; ++u) {
      const ArrId gu = a.act_arrow(g, u);
      const std::string w = "(" + G.arrow_label(g) + ", " + K.label(u) + ")";
      if (G.src(gu) != a.act_object(G.src(g), u)) r.add("s(g·k) = s(g)·k", w);
      if (G.tgt(gu) != a.act_object(G.tgt(g), u)) r.add("t(g·k) = t(g)·k", w);
      for (Elem v = 0; v < k; ++v)
        if (a.act_arrow(gu, v) != a.act_arrow(g, K.mul(u, v)))
          r.add("(g·k)·h = g·(kh)", w + " then " + K.label(v));
    }
  }
  if (!r.ok()) return r;
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (ArrId h : G.arrows_into(G.src(g)))
      for (Elem u = 0; u < k; ++u)
        if (a.act_arrow(G.comp(g, h), u) != G.comp(a.act_arrow(g, u), a.act_arrow(h, u)))
          r.add("(gh)·k = (g·k)(h·k)",
                "(" + G.arrow_label(g) + ", " + G.arrow_label(h) + ", " + K.label(u) + ")");
  return r;
}

ActionOnGroupoid trivial_action(const FiniteGroup& k, const GroupoidPtr& g) {
  ActionOnGroupoid a{k, g, {}, {}};
  for (ObjId x = 0; x < g->num_objects(); ++x)
    for (Elem e = 0; e < k.order(); ++e) a.on_objects.push_back(x);
  for (ArrId f = 0; f < g->num_arrows(); ++f)
    for (Elem e = 0; e < k.order(); ++e) a.on_arrows.push_back(f);
  return a;
}

ActionOnGroupoid action_on_space(const ActionOnSet& s, const GroupoidPtr& space) {
  ActionOnGroupoid a{s.group, space, s.table, {}};
  for (ArrId f = 0; f < space->num_arrows(); ++f)
    for (Elem e = 0; e < s.group.order(); ++e)
      a.on_arrows.push_back(space->unit(s.act(space->src(f), e)));
  return a;
}

std::string commuting_witness(const ActionOnGroupoid& a, const ActionOnGroupoid& b) {
  const FiniteGroupoid& G = *a.target;
  for (ObjId x = 0; x < G.num_objects(); ++x)
    for (Elem k = 0; k < a.group.order(); ++k)
      for (Elem l = 0; l < b.group.order(); ++l)
        if (b.act_object(a.act_object(x, k), l) != a.act_object(b.act_object(x, l), k))
          return "object " + G.object_label(x) + " with k = " + a.group.label(k) +
                 ", l = " + b.group.label(l);
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem k = 0; k < a.group.order(); ++k)
      for (Elem l = 0; l < b.group.order(); ++l)
        if (b.act_arrow(a.act_arrow(g, k), l) != a.act_arrow(b.act_arrow(g, l), k))
          return "arrow " + G.arrow_label(g) + " with k = " + a.group.label(k) +
                 ", l = " + b.group.label(l);
  return {};
}

ActionOnGroupoid product_action(const ActionOnGroupoid& a, const ActionOnGroupoid& b) {
  ActionOnGroupoid out{FiniteGroup::product(a.group, b.group), a.target, {}, {}};
  const FiniteGroupoid& G = *a.target;
  for (ObjId x = 0; x < G.num_objects(); ++x)
    for (Elem k = 0; k < a.group.order(); ++k)
      for (Elem l = 0; l < b.group.order(); ++l)
        out.on_objects.push_back(b.act_object(a.act_object(x, k), l));
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem k = 0; k < a.group.order(); ++k)
      for (Elem l = 0; l < b.group.order(); ++l)
        out.on_arrows.push_back(b.act_arrow(a.act_arrow(g, k), l));
  return out;
}

}  // namespace grpd
