#include "grpd/construct.hpp"

#include <algorithm>

namespace grpd {

namespace {

void require_valid(const ValidationReport& r, const std::string& what) {
  if (!r.ok()) throw Refusal(what + " is not a valid action:\n" + r.to_string());
}

Id position(const std::vector<Id>& sorted, Id v) {
  return static_cast<Id>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

GroupoidPtr translation_groupoid(const ActionOnSet& a) {
  if (a.side != Side::kRight)
    throw Refusal("translation groupoid needs a right action, got a left action");
  require_valid(validate_action(a), "translation groupoid input");
  const FiniteGroup& K = a.group;
  const Id k = static_cast<Id>(K.order());
  GroupoidBuilder b;
  for (Id x = 0; x < a.carrier; ++x) b.add_object(a.point_label(x));
  for (Id x = 0; x < a.carrier; ++x)
    for (Elem e = 0; e < k; ++e)
      b.add_arrow("(" + a.point_label(x) + "," + K.label(e) + ")", a.act(x, e), x);
  for (Id x = 0; x < a.carrier; ++x) {
    b.set_unit(x, x * k + K.identity());
    for (Elem e = 0; e < k; ++e) b.set_inverse(x * k + e, a.act(x, e) * k + K.inv(e));
  }
  return std::move(b).build_shared([&K, k](ArrId g, ArrId h) {
    return (g / k) * k + K.mul(g % k, h % k);
  });
}

SemidirectSpace semidirect_space(const GroupoidActionOnSet& a) {
  require_valid(validate_action(a), "semidirect product input");
  const FiniteGroupoid& G = *a.groupoid;
  GroupoidBuilder b;
  for (Id x = 0; x < a.carrier; ++x) b.add_object(a.point_label(x));
  SemidirectSpace out;
  std::vector<ArrId> on_arrows;

  if (a.side == Side::kRight) {
    std::vector<Id> offset(a.carrier);
    for (Id x = 0; x < a.carrier; ++x) {
      offset[x] = static_cast<Id>(b.num_arrows());
      for (ArrId g : G.arrows_into(a.base[x])) {
        b.add_arrow("(" + a.point_label(x) + "," + G.arrow_label(g) + ")", a.act(x, g), x);
        on_arrows.push_back(g);
      }
    }
    auto id = [&](Id x, ArrId g) { return offset[x] + position(G.arrows_into(a.base[x]), g); };
    for (Id x = 0; x < a.carrier; ++x) {
      b.set_unit(x, id(x, G.unit(a.base[x])));
      for (ArrId g : G.arrows_into(a.base[x])) b.set_inverse(id(x, g), id(a.act(x, g), G.inv(g)));
    }
    // (x, g)(x·g, h) = (x, gh)
    std::vector<Id> point_of(b.num_arrows());
    for (Id x = 0; x < a.carrier; ++x)
      for (ArrId g : G.arrows_into(a.base[x])) point_of[id(x, g)] = x;
    out.groupoid = std::move(b).build_shared([&](ArrId u, ArrId v) {
      return id(point_of[u], G.comp(on_arrows[u], on_arrows[v]));
    });
  } else {
    std::vector<std::vector<Id>> fiber(G.num_objects());
    for (Id x = 0; x < a.carrier; ++x) fiber[a.base[x]].push_back(x);
    std::vector<Id> offset(G.num_arrows());
    std::vector<Id> point_of;
    for (ArrId g = 0; g < G.num_arrows(); ++g) {
      offset[g] = static_cast<Id>(b.num_arrows());
      for (Id x : fiber[G.src(g)]) {
        b.add_arrow("(" + G.arrow_label(g) + "," + a.point_label(x) + ")", x, a.act(x, g));
        on_arrows.push_back(g);
        point_of.push_back(x);
      }
    }
    auto id = [&](ArrId g, Id x) { return offset[g] + position(fiber[G.src(g)], x); };
    for (Id x = 0; x < a.carrier; ++x) b.set_unit(x, id(G.unit(a.base[x]), x));
    for (ArrId g = 0; g < G.num_arrows(); ++g)
      for (Id x : fiber[G.src(g)]) b.set_inverse(id(g, x), id(G.inv(g), a.act(x, g)));
    // (g, h·x)(h, x) = (gh, x)
    out.groupoid = std::move(b).build_shared([&](ArrId u, ArrId v) {
      return id(G.comp(on_arrows[u], on_arrows[v]), point_of[v]);
    });
  }
  out.projection = StrictHom{out.groupoid, a.groupoid, a.base, std::move(on_arrows)};
  return out;
}

GroupoidPtr semidirect_group(const ActionOnGroupoid& a) {
  require_valid(validate_action(a), "semidirect product input");
  const FiniteGroupoid& G = *a.target;
  const FiniteGroup& K = a.group;
  const Id k = static_cast<Id>(K.order());
  GroupoidBuilder b;
  for (ObjId x = 0; x < G.num_objects(); ++x) b.add_object(G.object_label(x));
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem e = 0; e < k; ++e)
      b.add_arrow("(" + G.arrow_label(g) + "," + K.label(e) + ")",
                  a.act_object(G.src(g), e), G.tgt(g));
  for (ObjId x = 0; x < G.num_objects(); ++x) b.set_unit(x, G.unit(x) * k + K.identity());
  // (g, k)^-1 = (g^-1·k, k^-1)
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem e = 0; e < k; ++e)
      b.set_inverse(g * k + e, a.act_arrow(G.inv(g), e) * k + K.inv(e));
  return std::move(b).build_shared([&](ArrId u, ArrId v) {
    const ArrId g = u / k, g2 = v / k;
    const Elem e = u % k, e2 = v % k;
    return G.comp(g, a.act_arrow(g2, K.inv(e))) * k + K.mul(e, e2);
  });
}

ActionOnGroupoid lift_action(const ActionOnGroupoid& k_action,
                             const ActionOnGroupoid& l_action,
                             const GroupoidPtr& g_rtimes_k) {
  const FiniteGroupoid& G = *k_action.target;
  const Id k = static_cast<Id>(k_action.group.order());
  const Id l = static_cast<Id>(l_action.group.order());
  ActionOnGroupoid out{l_action.group, g_rtimes_k, l_action.on_objects, {}};
  out.on_arrows.reserve(G.num_arrows() * k * l);
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem e = 0; e < k; ++e)
      for (Elem f = 0; f < l; ++f) out.on_arrows.push_back(l_action.act_arrow(g, f) * k + e);
  return out;
}

TwoGroupSemidirect check_two_group_semidirect(const ActionOnGroupoid& k_action,
                                              const ActionOnGroupoid& l_action) {
  if (k_action.target != l_action.target && !(*k_action.target == *l_action.target))
    throw Refusal("the two actions are on different groupoids");
  if (std::string w = commuting_witness(k_action, l_action); !w.empty())
    throw Refusal("actions do not commute: " + w);

  TwoGroupSemidirect out;
  const GroupoidPtr gk = semidirect_group(k_action);
  out.iterated = semidirect_group(lift_action(k_action, l_action, gk));
  out.combined = semidirect_group(product_action(k_action, l_action));

  const FiniteGroupoid& G = *k_action.target;
  const Id k = static_cast<Id>(k_action.group.order());
  const Id l = static_cast<Id>(l_action.group.order());
  StrictHom iso = identity_hom(out.iterated);
  iso.codomain = out.combined;
  // ((g, k), l) has id ((g * |K| + k) * |L| + l); (g, (k, l)) has id
  // g * |K||L| + k * |L| + l.
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Elem e = 0; e < k; ++e)
      for (Elem f = 0; f < l; ++f)
        iso.on_arrows[(g * k + e) * l + f] = g * (k * l) + e * l + f;
  out.report = validate_strict_hom(iso);
  out.verified = out.report.ok() && is_strict_isomorphism(iso);
  out.iso = std::move(iso);
  return out;
}

}  // namespace grpd
