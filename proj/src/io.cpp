#include "grpd/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace grpd::io {

ParseError::ParseError(const std::string& file, std::size_t line, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + message), file_(file), line_(line) {}

const Section* Block::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const Section*> Block::find_all(const std::string& name) const {
  std::vector<const Section*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

std::string Block::name_or(const std::string& fallback) const {
  return args.empty() ? fallback : args.back();
}

void Block::fail(std::size_t at, const std::string& message) const {
  throw ParseError(file, at, message);
}

namespace {

const std::set<std::string> kKinds = {"GRPD", "GROUP", "ACT", "COVER", "DESC", "CERT"};

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void check_sections(const Block& b, const std::set<std::string>& allowed) {
  for (const auto& s : b.sections)
    if (!allowed.count(s.name)) b.fail(s.line, "unknown section '" + s.name + ":' in " + b.kind + " block");
}

// Label -> id with duplicate detection.
class Names {
 public:
  Names(const Block& b, std::string what) : block_(b), what_(std::move(what)) {}

  Id add(const std::string& label, std::size_t line) {
    auto [it, fresh] = ids_.emplace(label, static_cast<Id>(labels_.size()));
    if (!fresh) block_.fail(line, "duplicate " + what_ + " '" + label + "'");
    labels_.push_back(label);
    return it->second;
  }
  Id get(const std::string& label, std::size_t line) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) block_.fail(line, "unknown " + what_ + " '" + label + "'");
    return it->second;
  }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  const Block& block_;
  std::string what_;
  std::unordered_map<std::string, Id> ids_;
  std::vector<std::string> labels_;
};

Names names_from(const Block& b, const std::vector<std::string>& labels, const std::string& what,
                 const std::string& prefix) {
  Names n(b, what);
  for (const auto& l : token_labels(labels, prefix)) n.add(l, b.line);
  return n;
}

const Section& require(const Block& b, const std::string& name) {
  const Section* s = b.find(name);
  if (!s) b.fail(b.line, b.kind + " block lacks section '" + name + ":'");
  return *s;
}

void expect_tokens(const Block& b, const Line& l, std::size_t n, const std::string& shape) {
  if (l.tokens.size() != n) b.fail(l.number, "expected '" + shape + "'");
}

Names read_label_list(const Block& b, const Section& s, const std::string& what) {
  Names n(b, what);
  for (const auto& l : s.lines)
    for (const auto& t : l.tokens) n.add(t, l.number);
  return n;
}

Id parse_index(const Block& b, const std::string& token, std::size_t bound, std::size_t line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || token.empty() || token[0] == '-') b.fail(line, "expected an index, got '" + token + "'");
  if (v >= bound) b.fail(line, "index " + token + " out of range (< " + std::to_string(bound) + ")");
  return static_cast<Id>(v);
}

std::string strip_colon(std::string s) {
  if (!s.empty() && s.back() == ':') s.pop_back();
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

std::vector<Block> parse_blocks(std::string_view text, const std::string& file) {
  std::vector<Block> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = tokenize(raw);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (kKinds.count(tokens[0]) || tokens[0] == "bibundle:") {
      Block b;
      b.file = file;
      b.line = number;
      if (tokens[0] == "bibundle:") {
        b.kind = "bibundle";
        b.args.assign(tokens.begin() + 1, tokens.end());
        if (b.args.size() != 3) throw ParseError(file, number, "expected 'bibundle: name source target'");
      } else {
        b.kind = tokens[0];
        if (tokens.size() < 2 || tokens[1] != "v1")
          throw ParseError(file, number, "unsupported " + tokens[0] + " version");
        b.args.assign(tokens.begin() + 2, tokens.end());
      }
      out.push_back(std::move(b));
    } else if (out.empty()) {
      throw ParseError(file, number, "expected a block header, got '" + tokens[0] + "'");
    } else if (tokens.back().back() == ':' && (tokens.size() == 1 || tokens.back().size() > 1)) {
      Section s;
      s.line = number;
      s.name = strip_colon(tokens[0]);
      for (std::size_t i = 1; i < tokens.size(); ++i) s.args.push_back(strip_colon(tokens[i]));
      out.back().sections.push_back(std::move(s));
    } else if (out.back().sections.empty()) {
      throw ParseError(file, number, "entry outside of any section");
    } else {
      out.back().sections.back().lines.push_back({number, std::move(tokens)});
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<Block> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_blocks(ss.str(), path);
}

std::vector<std::string> token_labels(const std::vector<std::string>& labels, const std::string& prefix) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  bool ok = true;
  for (const auto& l : labels) {
    std::string t = l;
    for (char& c : t)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#') c = '_';
    if (t.empty() || t.back() == ':' || kKinds.count(t) || !seen.insert(t).second) {
      ok = false;
      break;
    }
    out.push_back(std::move(t));
  }
  if (ok) return out;
  out.clear();
  for (std::size_t i = 0; i < labels.size(); ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

ChartedGroupoid read_groupoid(const Block& b) {
  check_sections(b, {"objects", "arrows", "unit", "inv", "comp", "charts", "effect"});
  Names objects = read_label_list(b, require(b, "objects"), "object");
  Names arrows(b, "arrow");
  GroupoidBuilder g;
  for (const auto& l : objects.labels()) g.add_object(l);
  for (const auto& l : require(b, "arrows").lines) {
    expect_tokens(b, l, 3, "arrow source target");
    arrows.add(l.tokens[0], l.number);
    g.add_arrow(l.tokens[0], objects.get(l.tokens[1], l.number), objects.get(l.tokens[2], l.number));
  }
  std::vector<char> unit_seen(objects.size(), 0), inv_seen(arrows.size(), 0);
  for (const auto& l : require(b, "unit").lines) {
    expect_tokens(b, l, 2, "object arrow");
    const ObjId x = objects.get(l.tokens[0], l.number);
    if (unit_seen[x]++) b.fail(l.number, "duplicate unit for " + l.tokens[0]);
    g.set_unit(x, arrows.get(l.tokens[1], l.number));
  }
  for (const auto& l : require(b, "inv").lines) {
    expect_tokens(b, l, 2, "arrow inverse");
    const ArrId a = arrows.get(l.tokens[0], l.number);
    if (inv_seen[a]++) b.fail(l.number, "duplicate inverse for " + l.tokens[0]);
    g.set_inverse(a, arrows.get(l.tokens[1], l.number));
  }
  std::set<std::pair<ArrId, ArrId>> products;
  for (const auto& l : require(b, "comp").lines) {
    expect_tokens(b, l, 3, "a b ab");
    const ArrId x = arrows.get(l.tokens[0], l.number), y = arrows.get(l.tokens[1], l.number);
    if (!products.insert({x, y}).second) b.fail(l.number, "duplicate product " + l.tokens[0] + " " + l.tokens[1]);
    g.set_product(x, y, arrows.get(l.tokens[2], l.number));
  }
  auto base = std::make_shared<const FiniteGroupoid>(std::move(g).build());

  ChartedGroupoid c{base, 0, std::vector<std::vector<std::string>>(objects.size()),
                    std::vector<Perm>(arrows.size())};
  const Section* charts = b.find("charts");
  if (!charts) {
    if (b.find("effect")) b.fail(b.find("effect")->line, "effect without charts");
    return c;
  }
  std::vector<char> chart_seen(objects.size(), 0);
  bool first = true;
  for (const auto& l : charts->lines) {
    const ObjId x = objects.get(l.tokens[0], l.number);
    if (chart_seen[x]++) b.fail(l.number, "duplicate chart for " + l.tokens[0]);
    c.charts[x].assign(l.tokens.begin() + 1, l.tokens.end());
    if (first) c.n = c.charts[x].size();
    first = false;
  }
  for (ObjId x = 0; x < objects.size(); ++x)
    if (!chart_seen[x]) b.fail(charts->line, "no chart for object " + objects.labels()[x]);
  std::vector<char> effect_seen(arrows.size(), 0);
  if (const Section* eff = b.find("effect")) {
    for (const auto& l : eff->lines) {
      const ArrId a = arrows.get(l.tokens[0], l.number);
      if (effect_seen[a]++) b.fail(l.number, "duplicate effect for " + l.tokens[0]);
      for (std::size_t i = 1; i < l.tokens.size(); ++i)
        c.effect[a].push_back(parse_index(b, l.tokens[i], std::max<std::size_t>(c.n, 1), l.number));
    }
  }
  for (ArrId a = 0; a < arrows.size(); ++a)
    if (!effect_seen[a]) c.effect[a] = perm::identity(c.n);
  return c;
}

FiniteGroup read_group(const Block& b) {
  check_sections(b, {"elements", "mul"});
  Names elems = read_label_list(b, require(b, "elements"), "element");
  const std::size_t n = elems.size();
  if (n == 0) b.fail(b.line, "a group needs at least one element");
  std::vector<Elem> mul(n * n, kNone);
  std::vector<char> seen(n, 0);
  for (const auto& l : require(b, "mul").lines) {
    if (l.tokens.size() != n + 1) b.fail(l.number, "expected a row label and " + std::to_string(n) + " products");
    const Elem x = elems.get(strip_colon(l.tokens[0]), l.number);
    if (seen[x]++) b.fail(l.number, "duplicate row " + l.tokens[0]);
    for (std::size_t j = 0; j < n; ++j) mul[x * n + j] = elems.get(l.tokens[j + 1], l.number);
  }
  for (Elem x = 0; x < n; ++x)
    if (!seen[x]) b.fail(require(b, "mul").line, "missing row for " + elems.labels()[x]);
  try {
    return FiniteGroup::from_table(n, std::move(mul), elems.labels());
  } catch (const std::invalid_argument& e) {
    b.fail(b.line, std::string("not a group: ") + e.what());
  }
}

ActionOnSet read_set_action(const Block& b, const FiniteGroup& group) {
  check_sections(b, {"side", "carrier", "table"});
  ActionOnSet a;
  a.group = group;
  if (const Section* side = b.find("side")) {
    if (side->lines.size() != 1 || side->lines[0].tokens.size() != 1) b.fail(side->line, "expected 'left' or 'right'");
    const std::string& v = side->lines[0].tokens[0];
    if (v != "left" && v != "right") b.fail(side->lines[0].number, "expected 'left' or 'right'");
    a.side = v == "left" ? Side::kLeft : Side::kRight;
  }
  Names points = read_label_list(b, require(b, "carrier"), "point");
  a.carrier = points.size();
  a.labels = points.labels();
  a.table.assign(a.carrier * group.order(), kNone);
  std::vector<char> seen(a.carrier, 0);
  for (const auto& l : require(b, "table").lines) {
    if (l.tokens.size() != group.order() + 1)
      b.fail(l.number, "expected a point and " + std::to_string(group.order()) + " images");
    const Id p = points.get(strip_colon(l.tokens[0]), l.number);
    if (seen[p]++) b.fail(l.number, "duplicate row " + l.tokens[0]);
    for (Elem k = 0; k < group.order(); ++k) a.table[p * group.order() + k] = points.get(l.tokens[k + 1], l.number);
  }
  return a;
}

ActionOnGroupoid read_groupoid_action(const Block& b, const FiniteGroup& group, const GroupoidPtr& g) {
  check_sections(b, {"objects", "arrows"});
  Names objects = names_from(b, g->object_labels(), "object", "o");
  Names arrows = names_from(b, g->arrow_labels(), "arrow", "a");
  const std::size_t k = group.order();
  ActionOnGroupoid a{group, g, std::vector<ObjId>(g->num_objects() * k, kNone),
                     std::vector<ArrId>(g->num_arrows() * k, kNone)};
  auto fill = [&](const Section& s, const Names& names, std::vector<Id>& table) {
    std::vector<char> seen(names.size(), 0);
    for (const auto& l : s.lines) {
      if (l.tokens.size() != k + 1) b.fail(l.number, "expected a row label and " + std::to_string(k) + " images");
      const Id x = names.get(strip_colon(l.tokens[0]), l.number);
      if (seen[x]++) b.fail(l.number, "duplicate row " + l.tokens[0]);
      for (Elem e = 0; e < k; ++e) table[x * k + e] = names.get(l.tokens[e + 1], l.number);
    }
  };
  fill(require(b, "objects"), objects, a.on_objects);
  fill(require(b, "arrows"), arrows, a.on_arrows);
  return a;
}

Bibundle read_bibundle(const Block& b, const GroupoidPtr& source, const GroupoidPtr& target) {
  check_sections(b, {"total", "left", "right"});
  Names gs = names_from(b, source->arrow_labels(), "source arrow", "a");
  Names go = names_from(b, source->object_labels(), "source object", "o");
  Names hs = names_from(b, target->arrow_labels(), "target arrow", "a");
  Names ho = names_from(b, target->object_labels(), "target object", "o");
  Names elems(b, "element");
  Bibundle p{source, target, 0, {}, {}, {}, {}, {}};
  for (const auto& l : require(b, "total").lines) {
    expect_tokens(b, l, 3, "element s t");
    elems.add(l.tokens[0], l.number);
    p.s.push_back(go.get(l.tokens[1], l.number));
    p.t.push_back(ho.get(l.tokens[2], l.number));
    p.labels.push_back(l.tokens[0]);
  }
  p.size = elems.size();
  p.left.assign(source->num_arrows() * p.size, kNone);
  p.right.assign(p.size * target->num_arrows(), kNone);
  std::set<std::pair<Id, Id>> seen;
  for (const auto& l : require(b, "left").lines) {
    expect_tokens(b, l, 3, "g p gp");
    const ArrId g = gs.get(l.tokens[0], l.number);
    const Id x = elems.get(l.tokens[1], l.number);
    if (!seen.insert({g, x}).second) b.fail(l.number, "duplicate left entry");
    p.left[g * p.size + x] = elems.get(l.tokens[2], l.number);
  }
  seen.clear();
  for (const auto& l : require(b, "right").lines) {
    expect_tokens(b, l, 3, "p h ph");
    const Id x = elems.get(l.tokens[0], l.number);
    const ArrId h = hs.get(l.tokens[1], l.number);
    if (!seen.insert({x, h}).second) b.fail(l.number, "duplicate right entry");
    p.right[x * target->num_arrows() + h] = elems.get(l.tokens[2], l.number);
  }
  return p;
}

Cover read_cover(const Block& b) {
  check_sections(b, {"points", "parts"});
  Names points = read_label_list(b, require(b, "points"), "point");
  Names parts(b, "part");
  Cover c;
  c.points = points.size();
  c.point_labels = points.labels();
  for (const auto& l : require(b, "parts").lines) {
    if (l.tokens.size() < 2 || l.tokens[0].back() != ':') b.fail(l.number, "expected 'U: point...'");
    parts.add(strip_colon(l.tokens[0]), l.number);
    std::vector<Id> ids;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) ids.push_back(points.get(l.tokens[i], l.number));
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) b.fail(l.number, "point repeated in a part");
    c.parts.push_back(std::move(ids));
  }
  c.part_labels = parts.labels();
  return c;
}

DescentDatum read_descent(const Block& b, const Cover& cover, const GroupoidPtr& target) {
  check_sections(b, {"local", "right", "transition"});
  Names parts = names_from(b, [&] {
    std::vector<std::string> v;
    for (std::size_t a = 0; a < cover.size(); ++a) v.push_back(cover.part_label(a));
    return v;
  }(), "part", "U");
  Names hs = names_from(b, target->arrow_labels(), "target arrow", "a");
  Names ho = names_from(b, target->object_labels(), "target object", "o");
  const std::size_t m = cover.size();
  DescentDatum d{cover, target, {}, {}};
  std::vector<Names> elems;
  for (std::size_t a = 0; a < m; ++a) {
    elems.emplace_back(b, "element of " + cover.part_label(a));
    d.local.push_back(Bibundle{part_groupoid(cover, a), target, 0, {}, {}, {}, {}, {}});
  }
  std::vector<char> local_seen(m, 0);
  for (const Section* s : b.find_all("local")) {
    if (s->args.size() != 1) b.fail(s->line, "expected 'local U:'");
    const std::size_t a = parts.get(s->args[0], s->line);
    if (local_seen[a]++) b.fail(s->line, "duplicate local section for " + s->args[0]);
    Bibundle& P = d.local[a];
    Names pts(b, "point");
    for (Id u : cover.parts[a]) pts.add(cover.point_label(u), s->line);
    for (const auto& l : s->lines) {
      expect_tokens(b, l, 3, "element point object");
      elems[a].add(l.tokens[0], l.number);
      P.s.push_back(pts.get(l.tokens[1], l.number));
      P.t.push_back(ho.get(l.tokens[2], l.number));
      P.labels.push_back(l.tokens[0]);
    }
    P.size = P.s.size();
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (!local_seen[a]) b.fail(b.line, "no local section for " + cover.part_label(a));
    Bibundle& P = d.local[a];
    P.left.assign(P.source->num_arrows() * P.size, kNone);
    for (Id e = 0; e < P.size; ++e) P.left[P.source->unit(P.s[e]) * P.size + e] = e;
    P.right.assign(P.size * target->num_arrows(), kNone);
  }
  std::vector<char> right_seen(m, 0);
  for (const Section* s : b.find_all("right")) {
    if (s->args.size() != 1) b.fail(s->line, "expected 'right U:'");
    const std::size_t a = parts.get(s->args[0], s->line);
    if (right_seen[a]++) b.fail(s->line, "duplicate right section for " + s->args[0]);
    Bibundle& P = d.local[a];
    std::set<std::pair<Id, Id>> seen;
    for (const auto& l : s->lines) {
      expect_tokens(b, l, 3, "element arrow result");
      const Id x = elems[a].get(l.tokens[0], l.number);
      const ArrId h = hs.get(l.tokens[1], l.number);
      if (!seen.insert({x, h}).second) b.fail(l.number, "duplicate right entry");
      P.right[x * target->num_arrows() + h] = elems[a].get(l.tokens[2], l.number);
    }
  }
  // Missing chi_aa defaults to the identity, missing chi_ba to the inverse of
  // chi_ab.
  d.transition.assign(m, std::vector<std::vector<Id>>(m));
  std::vector<std::vector<char>> given(m, std::vector<char>(m, 0));
  for (const Section* s : b.find_all("transition")) {
    if (s->args.size() != 2) b.fail(s->line, "expected 'transition U V:'");
    const std::size_t a = parts.get(s->args[0], s->line), c = parts.get(s->args[1], s->line);
    if (given[a][c]++) b.fail(s->line, "duplicate transition " + s->args[0] + " " + s->args[1]);
    auto& chi = d.transition[a][c];
    chi.assign(d.local[a].size, kNone);
    for (const auto& l : s->lines) {
      expect_tokens(b, l, 2, "element image");
      const Id x = elems[a].get(l.tokens[0], l.number);
      if (chi[x] != kNone) b.fail(l.number, "duplicate transition entry for " + l.tokens[0]);
      chi[x] = elems[c].get(l.tokens[1], l.number);
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c) {
      if (given[a][c]) continue;
      auto& chi = d.transition[a][c];
      chi.assign(d.local[a].size, kNone);
      if (a == c) {
        for (Id e = 0; e < chi.size(); ++e) chi[e] = e;
      } else if (given[c][a]) {
        const auto& back = d.transition[c][a];
        for (Id f = 0; f < back.size(); ++f)
          if (back[f] != kNone && back[f] < chi.size()) chi[back[f]] = f;
      } else {
        bool overlap = false;
        for (Id u : cover.parts[a]) overlap = overlap || cover.contains(c, u);
        if (overlap) b.fail(b.line, "no transition between " + cover.part_label(a) + " and " + cover.part_label(c));
      }
    }
  return d;
}

void load_into(Library& lib, const std::vector<Block>& blocks) {
  std::set<std::string> names;
  for (const auto& [k, v] : lib.groupoids) names.insert(k);
  for (const auto& [k, v] : lib.groups) names.insert(k);
  for (const auto& [k, v] : lib.set_actions) names.insert(k);
  for (const auto& [k, v] : lib.groupoid_actions) names.insert(k);
  for (const auto& [k, v] : lib.bibundles) names.insert(k);
  for (const auto& [k, v] : lib.covers) names.insert(k);
  for (const auto& [k, v] : lib.descents) names.insert(k);
  std::size_t index = names.size();
  auto claim = [&](const Block& b, const std::string& fallback) {
    std::string name = b.name_or(fallback + std::to_string(++index));
    if (!names.insert(name).second) b.fail(b.line, "duplicate block name '" + name + "'");
    return name;
  };
  auto groupoid = [&](const Block& b, const std::string& name) -> GroupoidPtr {
    auto it = lib.groupoids.find(name);
    if (it == lib.groupoids.end()) b.fail(b.line, "unknown groupoid '" + name + "'");
    return it->second.base;
  };
  auto group = [&](const Block& b, const std::string& name) -> const FiniteGroup& {
    auto it = lib.groups.find(name);
    if (it == lib.groups.end()) b.fail(b.line, "unknown group '" + name + "'");
    return it->second;
  };
  for (const Block& b : blocks) {
    if (b.kind == "GRPD") {
      if (b.args.size() > 1) b.fail(b.line, "expected 'GRPD v1 [name]'");
      const std::string name = claim(b, "G");
      lib.groupoids[name] = read_groupoid(b);
      lib.has_charts[name] = b.find("charts") != nullptr;
      lib.groupoid_order.push_back(name);
    } else if (b.kind == "GROUP") {
      if (b.args.size() > 1) b.fail(b.line, "expected 'GROUP v1 [name]'");
      const std::string name = claim(b, "K");
      lib.groups.emplace(name, read_group(b));
      lib.group_order.push_back(name);
    } else if (b.kind == "ACT") {
      if (b.args.empty()) b.fail(b.line, "expected 'ACT v1 set|groupoid ...'");
      if (b.args[0] == "set") {
        if (b.args.size() < 2 || b.args.size() > 3) b.fail(b.line, "expected 'ACT v1 set group [name]'");
        const std::string name = b.args.size() == 3 ? b.args[2] : "A" + std::to_string(++index);
        if (!names.insert(name).second) b.fail(b.line, "duplicate block name '" + name + "'");
        lib.set_actions.emplace(name, read_set_action(b, group(b, b.args[1])));
        lib.set_action_order.push_back(name);
      } else if (b.args[0] == "groupoid") {
        if (b.args.size() < 3 || b.args.size() > 4) b.fail(b.line, "expected 'ACT v1 groupoid group groupoid [name]'");
        const std::string name = b.args.size() == 4 ? b.args[3] : "A" + std::to_string(++index);
        if (!names.insert(name).second) b.fail(b.line, "duplicate block name '" + name + "'");
        lib.groupoid_actions.emplace(name, read_groupoid_action(b, group(b, b.args[1]), groupoid(b, b.args[2])));
        lib.groupoid_action_order.push_back(name);
      } else {
        b.fail(b.line, "unknown action kind '" + b.args[0] + "'");
      }
    } else if (b.kind == "bibundle") {
      const std::string name = b.args[0];
      if (!names.insert(name).second) b.fail(b.line, "duplicate block name '" + name + "'");
      lib.bibundles.emplace(name, read_bibundle(b, groupoid(b, b.args[1]), groupoid(b, b.args[2])));
      lib.bibundle_order.push_back(name);
    } else if (b.kind == "COVER") {
      if (b.args.size() > 1) b.fail(b.line, "expected 'COVER v1 [name]'");
      const std::string name = claim(b, "C");
      lib.covers.emplace(name, read_cover(b));
      lib.cover_order.push_back(name);
    } else if (b.kind == "DESC") {
      if (b.args.size() < 2 || b.args.size() > 3) b.fail(b.line, "expected 'DESC v1 cover target [name]'");
      const std::string name = b.args.size() == 3 ? b.args[2] : "D" + std::to_string(++index);
      if (!names.insert(name).second) b.fail(b.line, "duplicate block name '" + name + "'");
      auto it = lib.covers.find(b.args[0]);
      if (it == lib.covers.end()) b.fail(b.line, "unknown cover '" + b.args[0] + "'");
      lib.descents.emplace(name, read_descent(b, it->second, groupoid(b, b.args[1])));
      lib.descent_order.push_back(name);
    } else {
      b.fail(b.line, b.kind + " blocks are not accepted here");
    }
  }
}

Library load_file(const std::string& path) {
  Library lib;
  load_into(lib, read_file(path));
  return lib;
}

void write_groupoid(std::ostream& os, const FiniteGroupoid& g, const std::string& name) {
  write_charted(os, {std::make_shared<const FiniteGroupoid>(g), 0, {}, {}}, name);
}

void write_charted(std::ostream& os, const ChartedGroupoid& c, const std::string& name) {
  const FiniteGroupoid& G = *c.base;
  const auto obj = token_labels(G.object_labels(), "o");
  const auto arr = token_labels(G.arrow_labels(), "a");
  os << "GRPD v1 " << name << "\nobjects:\n";
  for (const auto& l : obj) os << "  " << l << "\n";
  os << "arrows:\n";
  for (ArrId a = 0; a < G.num_arrows(); ++a) os << "  " << arr[a] << " " << obj[G.src(a)] << " " << obj[G.tgt(a)] << "\n";
  os << "unit:\n";
  for (ObjId x = 0; x < G.num_objects(); ++x) os << "  " << obj[x] << " " << arr[G.unit(x)] << "\n";
  os << "inv:\n";
  for (ArrId a = 0; a < G.num_arrows(); ++a) os << "  " << arr[a] << " " << arr[G.inv(a)] << "\n";
  os << "comp:\n";
  for (ArrId a = 0; a < G.num_arrows(); ++a)
    for (ArrId b : G.arrows_into(G.src(a))) os << "  " << arr[a] << " " << arr[b] << " " << arr[G.comp(a, b)] << "\n";
  if (c.charts.empty()) return;
  os << "charts:\n";
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    os << "  " << obj[x];
    for (const auto& l : token_labels(c.charts[x], "c")) os << " " << l;
    os << "\n";
  }
  bool any = false;
  for (ArrId a = 0; a < G.num_arrows(); ++a) any = any || !c.trivial_effect(a);
  if (!any) return;
  os << "effect:\n";
  for (ArrId a = 0; a < G.num_arrows(); ++a) {
    if (c.trivial_effect(a)) continue;
    os << "  " << arr[a];
    for (Id i : c.effect[a]) os << " " << i;
    os << "\n";
  }
}

void write_group(std::ostream& os, const FiniteGroup& g, const std::string& name) {
  const auto el = token_labels(g.labels(), "k");
  os << "GROUP v1 " << name << "\nelements:\n  " << join(el) << "\nmul:\n";
  for (Elem a = 0; a < g.order(); ++a) {
    os << "  " << el[a] << ":";
    for (Elem b = 0; b < g.order(); ++b) os << " " << el[g.mul(a, b)];
    os << "\n";
  }
}

void write_set_action(std::ostream& os, const ActionOnSet& a, const std::string& group, const std::string& name) {
  std::vector<std::string> labels;
  for (Id p = 0; p < a.carrier; ++p) labels.push_back(a.point_label(p));
  const auto pts = token_labels(labels, "p");
  os << "ACT v1 set " << group << " " << name << "\nside:\n  " << to_string(a.side) << "\ncarrier:\n  " << join(pts)
     << "\ntable:\n";
  for (Id p = 0; p < a.carrier; ++p) {
    os << "  " << pts[p] << ":";
    for (Elem k = 0; k < a.group.order(); ++k) os << " " << pts[a.act(p, k)];
    os << "\n";
  }
}

void write_groupoid_action(std::ostream& os, const ActionOnGroupoid& a, const std::string& group,
                           const std::string& groupoid, const std::string& name) {
  const FiniteGroupoid& G = *a.target;
  const auto obj = token_labels(G.object_labels(), "o");
  const auto arr = token_labels(G.arrow_labels(), "a");
  os << "ACT v1 groupoid " << group << " " << groupoid << " " << name << "\nobjects:\n";
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    os << "  " << obj[x] << ":";
    for (Elem k = 0; k < a.group.order(); ++k) os << " " << obj[a.act_object(x, k)];
    os << "\n";
  }
  os << "arrows:\n";
  for (ArrId g = 0; g < G.num_arrows(); ++g) {
    os << "  " << arr[g] << ":";
    for (Elem k = 0; k < a.group.order(); ++k) os << " " << arr[a.act_arrow(g, k)];
    os << "\n";
  }
}

void write_bibundle(std::ostream& os, const Bibundle& p, const std::string& name, const std::string& source,
                    const std::string& target) {
  const FiniteGroupoid& G = *p.source;
  const FiniteGroupoid& H = *p.target;
  const auto go = token_labels(G.object_labels(), "o");
  const auto ga = token_labels(G.arrow_labels(), "a");
  const auto ho = token_labels(H.object_labels(), "o");
  const auto ha = token_labels(H.arrow_labels(), "a");
  std::vector<std::string> labels;
  for (Id e = 0; e < p.size; ++e) labels.push_back(p.element_label(e));
  const auto el = token_labels(labels, "p");
  os << "bibundle: " << name << " " << source << " " << target << "\ntotal:\n";
  for (Id e = 0; e < p.size; ++e) os << "  " << el[e] << " " << go[p.s[e]] << " " << ho[p.t[e]] << "\n";
  os << "left:\n";
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Id e = 0; e < p.size; ++e)
      if (const Id r = p.act_left(g, e); r != kNone) os << "  " << ga[g] << " " << el[e] << " " << el[r] << "\n";
  os << "right:\n";
  for (Id e = 0; e < p.size; ++e)
    for (ArrId h = 0; h < H.num_arrows(); ++h)
      if (const Id r = p.act_right(e, h); r != kNone) os << "  " << el[e] << " " << ha[h] << " " << el[r] << "\n";
}

void write_cover(std::ostream& os, const Cover& c, const std::string& name) {
  std::vector<std::string> pl, ql;
  for (Id u = 0; u < c.points; ++u) pl.push_back(c.point_label(u));
  for (std::size_t a = 0; a < c.size(); ++a) ql.push_back(c.part_label(a));
  const auto pts = token_labels(pl, "m");
  const auto parts = token_labels(ql, "U");
  os << "COVER v1 " << name << "\npoints:\n  " << join(pts) << "\nparts:\n";
  for (std::size_t a = 0; a < c.size(); ++a) {
    os << "  " << parts[a] << ":";
    for (Id u : c.parts[a]) os << " " << pts[u];
    os << "\n";
  }
}

void write_descent(std::ostream& os, const DescentDatum& d, const std::string& cover, const std::string& target,
                   const std::string& name) {
  const Cover& C = d.cover;
  std::vector<std::string> pl, ql;
  for (Id u = 0; u < C.points; ++u) pl.push_back(C.point_label(u));
  for (std::size_t a = 0; a < C.size(); ++a) ql.push_back(C.part_label(a));
  const auto pts = token_labels(pl, "m");
  const auto parts = token_labels(ql, "U");
  const auto ho = token_labels(d.target->object_labels(), "o");
  const auto ha = token_labels(d.target->arrow_labels(), "a");
  std::vector<std::vector<std::string>> el(C.size());
  os << "DESC v1 " << cover << " " << target << " " << name << "\n";
  for (std::size_t a = 0; a < C.size(); ++a) {
    const Bibundle& P = d.local[a];
    std::vector<std::string> labels;
    for (Id e = 0; e < P.size; ++e) labels.push_back(P.element_label(e));
    el[a] = token_labels(labels, "e");
    os << "local " << parts[a] << ":\n";
    for (Id e = 0; e < P.size; ++e) os << "  " << el[a][e] << " " << pts[d.point_of(a, e)] << " " << ho[P.t[e]] << "\n";
    os << "right " << parts[a] << ":\n";
    for (Id e = 0; e < P.size; ++e)
      for (ArrId h = 0; h < d.target->num_arrows(); ++h)
        if (const Id r = P.act_right(e, h); r != kNone) os << "  " << el[a][e] << " " << ha[h] << " " << el[a][r] << "\n";
  }
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = 0; b < C.size(); ++b) {
      if (a == b) continue;
      const auto& chi = d.transition[a][b];
      if (std::all_of(chi.begin(), chi.end(), [](Id x) { return x == kNone; })) continue;
      os << "transition " << parts[a] << " " << parts[b] << ":\n";
      for (Id e = 0; e < chi.size(); ++e)
        if (chi[e] != kNone) os << "  " << el[a][e] << " " << el[b][chi[e]] << "\n";
    }
}

}  // namespace grpd::io
