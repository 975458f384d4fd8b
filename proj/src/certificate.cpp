#include "grpd/certificate.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "grpd/construct.hpp"

namespace grpd::cert {

namespace {

std::string verdict_text(const std::string& claim) {
  std::string out = claim;
  for (char& c : out)
    if (c == '#' || c == '\n') c = '_';
  if (!out.empty() && out.back() == ':') out += '.';
  return out;
}

std::string join(const std::vector<std::string>& v, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < v.size(); ++i) out += (i > from ? " " : "") + v[i];
  return out;
}

}  // namespace

void write_certificate(std::ostream& os, const PresentationCertificate& c) {
  const FiniteGroupoid& G = *c.source.base;
  os << "CERT v1\nkind:\n  presentation\nstage:\n  " << c.stage << "\nclaims:\n";
  os << "  n " << c.n << "\n";
  os << "  source_classes " << coarse_quotient(G).size() << "\n";
  os << "  frame_points " << c.frame_points << "\n";
  if (c.complete()) {
    os << "  band_points " << c.band_points << "\n";
    os << "  band_order " << c.band.order() << "\n";
    os << "  center_order " << c.center.order() << "\n";
    os << "  k_order " << c.k.order() << "\n";
    os << "  presented_objects " << c.presented->base->num_objects() << "\n";
    os << "  presented_arrows " << c.presented->base->num_arrows() << "\n";
    os << "  quotient_objects " << c.quotient->num_objects() << "\n";
    os << "  quotient_arrows " << c.quotient->num_arrows() << "\n";
  }
  os << "verdicts:\n";
  for (const Check& ch : c.transcript.checks)
    os << "  " << (ch.passed ? "pass " : "fail ") << verdict_text(ch.claim) << "\n";
  os << "\n";
  io::write_charted(os, c.source, "source");
  if (!c.complete()) return;

  // Write H, K and the action first, then rebuild the quotient from the
  // written tables so the bibundle labels match what a reader will derive.
  std::ostringstream tables;
  tables << "\n";
  io::write_charted(tables, *c.presented, "presented");
  tables << "\n";
  io::write_group(tables, c.k, "K");
  tables << "\n";
  io::write_groupoid_action(tables, *c.k_action, "K", "presented", "K_on_presented");
  os << tables.str();

  io::Library lib;
  std::ostringstream source_text;
  io::write_charted(source_text, c.source, "source");
  io::load_into(lib, io::parse_blocks(source_text.str() + tables.str(), "<certificate>"));
  const GroupoidPtr quotient = semidirect_group(lib.groupoid_actions.at("K_on_presented"));
  Bibundle p = *c.equivalence;
  p.source = quotient;
  p.target = lib.groupoids.at("source").base;
  os << "\n";
  io::write_bibundle(os, p, "equivalence", "quotient", "source");
}

std::string certificate_text(const PresentationCertificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

Transcript verify_certificate(const std::vector<io::Block>& blocks) {
  if (blocks.empty() || blocks[0].kind != "CERT") throw io::ParseError("<certificate>", 1, "expected a CERT v1 header");
  const io::Block& head = blocks[0];
  auto single = [&](const std::string& name) {
    const io::Section* s = head.find(name);
    if (!s || s->lines.size() != 1 || s->lines[0].tokens.size() != 1)
      head.fail(s ? s->line : head.line, "expected one value in '" + name + ":'");
    return s->lines[0].tokens[0];
  };
  if (single("kind") != "presentation") head.fail(head.line, "unknown certificate kind");
  const std::string stage = single("stage");
  std::map<std::string, std::size_t> claims;
  if (const io::Section* s = head.find("claims"))
    for (const auto& l : s->lines) {
      if (l.tokens.size() != 2) head.fail(l.number, "expected 'claim value'");
      try {
        claims[l.tokens[0]] = std::stoull(l.tokens[1]);
      } catch (const std::exception&) {
        head.fail(l.number, "claim value is not a number");
      }
    }
  std::vector<std::pair<bool, std::string>> verdicts;
  if (const io::Section* s = head.find("verdicts"))
    for (const auto& l : s->lines) {
      if (l.tokens.size() < 2 || (l.tokens[0] != "pass" && l.tokens[0] != "fail"))
        head.fail(l.number, "expected 'pass|fail claim'");
      verdicts.emplace_back(l.tokens[0] == "pass", join(l.tokens, 1));
    }

  std::vector<io::Block> tables;
  const io::Block* bib = nullptr;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].kind == "bibundle") {
      if (bib) blocks[i].fail(blocks[i].line, "more than one bibundle");
      bib = &blocks[i];
    } else {
      tables.push_back(blocks[i]);
    }
  }
  io::Library lib;
  io::load_into(lib, tables);
  if (!lib.groupoids.count("source")) head.fail(head.line, "certificate lacks the source groupoid");

  Transcript t;
  const ChartedGroupoid& G = lib.groupoids.at("source");
  auto check_claim = [&](const std::string& key, std::size_t actual) {
    auto it = claims.find(key);
    if (it == claims.end()) return t.record("claim " + key + " present", false);
    return t.record("claim " + key + " = " + std::to_string(it->second), it->second == actual,
                    "recomputed " + std::to_string(actual));
  };
  const ValidationReport vg = validate_charted(G);
  if (!t.record("source is a charted groupoid", vg.ok(), vg.ok() ? "" : vg.to_string())) return t;
  check_claim("n", G.n);
  check_claim("source_classes", coarse_quotient(*G.base).size());
  check_claim("frame_points", G.base->num_objects() * factorial(G.n));

  std::size_t passed = 0;
  for (const auto& v : verdicts) passed += v.first ? 1 : 0;
  t.record("recorded verdicts all pass", passed == verdicts.size(),
           std::to_string(verdicts.size() - passed) + " of " + std::to_string(verdicts.size()) + " failed");
  if (!t.record("presentation complete", stage == "complete", "stage " + stage)) return t;

  for (const char* name : {"presented"})
    if (!lib.groupoids.count(name)) head.fail(head.line, std::string("certificate lacks '") + name + "'");
  if (!lib.groups.count("K") || !lib.groupoid_actions.count("K_on_presented"))
    head.fail(head.line, "certificate lacks K or its action");
  if (!bib) head.fail(head.line, "certificate lacks the equivalence bibundle");

  const ChartedGroupoid& H = lib.groupoids.at("presented");
  const ValidationReport vh = validate_charted(H);
  if (!t.record("H is a charted groupoid", vh.ok(), vh.ok() ? "" : vh.to_string())) return t;
  const ArrId w = effective_stabilizer_witness(H);
  t.record("H purely ineffective", w == kNone, w == kNone ? "" : H.base->arrow_label(w));
  const ActionOnGroupoid& ka = lib.groupoid_actions.at("K_on_presented");
  const ValidationReport va = validate_action(ka);
  if (!t.record("K acts on H by strict automorphisms", va.ok(), va.ok() ? "" : va.to_string())) return t;

  const std::size_t center = claims.count("center_order") ? claims.at("center_order") : 0;
  std::string bad;
  for (ObjId x = 0; x < H.base->num_objects() && bad.empty(); ++x) {
    const Stabilizer s = stabilizer(*H.base, x);
    if (s.group.order() != center || !is_abelian(s.group)) bad = "stabilizer at " + H.base->object_label(x);
  }
  t.record("stabilizers of H abelian of the claimed center order", bad.empty(), bad);
  check_claim("k_order", ka.group.order());
  check_claim("presented_objects", H.base->num_objects());
  check_claim("presented_arrows", H.base->num_arrows());
  // |F_band| = |frames| |Aut(T)| = |G0| n! |Aut(T)| = |G0| |K|.
  check_claim("band_points", G.base->num_objects() * ka.group.order());

  GroupoidPtr quotient;
  try {
    quotient = semidirect_group(ka);
  } catch (const Refusal& e) {
    t.record("H ⋊ K builds", false, e.what());
    return t;
  }
  check_claim("quotient_objects", quotient->num_objects());
  check_claim("quotient_arrows", quotient->num_arrows());
  const Bibundle P = io::read_bibundle(*bib, quotient, G.base);
  const ValidationReport vp = validate_bibundle(P);
  if (!t.record("equivalence is a bibundle H ⋊ K -> G", vp.ok(), vp.ok() ? "" : vp.to_string())) return t;
  const EquivalenceCheck eq = is_equivalence(P);
  t.record("bibundle is an equivalence", eq.ok(), eq.ok() ? "" : eq.to_string());
  const CoarseMap cm = induced_coarse_map(P);
  t.record("coarse classes preserved", cm.bijective, cm.witness);
  bad.clear();
  if (cm.bijective)
    for (Id i = 0; i < cm.source.size() && bad.empty(); ++i) {
      const ObjId x = cm.source.classes[i][0];
      const ObjId y = cm.target.classes[cm.map[i]][0];
      if (!induced_stabilizer_hom(P, x, y).isomorphism) bad = "class of " + quotient->object_label(x);
    }
  t.record("stabilizer types preserved", cm.bijective && bad.empty(), bad);
  return t;
}

Transcript verify_file(const std::string& path) {
  return verify_certificate(io::read_file(path));
}

}  // namespace grpd::cert
