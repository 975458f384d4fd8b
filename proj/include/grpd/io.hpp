#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grpd/action.hpp"
#include "grpd/bibundle.hpp"
#include "grpd/charted.hpp"
#include "grpd/descent.hpp"

// Line-oriented text formats. A file is a sequence of blocks, each opened by
// a header line:
//
//   GRPD v1 [name]                 objects: arrows: unit: inv: comp: charts: effect:
//   GROUP v1 [name]                elements: mul:
//   ACT v1 set <group> [name]      side: carrier: table:
//   ACT v1 groupoid <group> <grpd> [name]   objects: arrows:
//   bibundle: <name> <src> <tgt>   total: left: right:
//   COVER v1 [name]                points: parts:
//   DESC v1 <cover> <target> [name]  local U: right U: transition U V:
//   CERT v1                        kind: stage: claims: verdicts:
//
// A section header is a line whose last token ends in ':'. Entries refer to
// objects, arrows and elements by label. '#' starts a comment.
namespace grpd::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& message);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

struct Section {
  std::string name;
  std::vector<std::string> args;  // e.g. the part labels of "transition U1 U2:"
  std::size_t line = 0;
  std::vector<Line> lines;
};

struct Block {
  std::string kind;  // GRPD, GROUP, ACT, bibundle, COVER, DESC, CERT
  std::vector<std::string> args;
  std::string file;
  std::size_t line = 0;
  std::vector<Section> sections;

  const Section* find(const std::string& name) const;
  std::vector<const Section*> find_all(const std::string& name) const;
  std::string name_or(const std::string& fallback) const;
  [[noreturn]] void fail(std::size_t line, const std::string& message) const;
};

std::vector<Block> parse_blocks(std::string_view text, const std::string& file);
// Throws ParseError (line 0) if the file cannot be read.
std::vector<Block> read_file(const std::string& path);

ChartedGroupoid read_groupoid(const Block& b);
FiniteGroup read_group(const Block& b);
ActionOnSet read_set_action(const Block& b, const FiniteGroup& group);
ActionOnGroupoid read_groupoid_action(const Block& b, const FiniteGroup& group, const GroupoidPtr& g);
Bibundle read_bibundle(const Block& b, const GroupoidPtr& source, const GroupoidPtr& target);
Cover read_cover(const Block& b);
DescentDatum read_descent(const Block& b, const Cover& cover, const GroupoidPtr& target);

// Every block of a file (or several), with references resolved by name.
// Names must be unique; unnamed blocks get "<kind><index>".
struct Library {
  std::map<std::string, ChartedGroupoid> groupoids;
  std::map<std::string, bool> has_charts;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, ActionOnSet> set_actions;
  std::map<std::string, ActionOnGroupoid> groupoid_actions;
  std::map<std::string, Bibundle> bibundles;
  std::map<std::string, Cover> covers;
  std::map<std::string, DescentDatum> descents;
  // Names in file order, per kind.
  std::vector<std::string> groupoid_order, group_order, set_action_order, groupoid_action_order,
      bibundle_order, cover_order, descent_order;
};

void load_into(Library& lib, const std::vector<Block>& blocks);
Library load_file(const std::string& path);

// Labels usable as tokens: unique, nonempty, no whitespace, no trailing ':'.
// Falls back to "<prefix><id>" for every entry if any label is unusable.
std::vector<std::string> token_labels(const std::vector<std::string>& labels, const std::string& prefix);

void write_groupoid(std::ostream& os, const FiniteGroupoid& g, const std::string& name);
void write_charted(std::ostream& os, const ChartedGroupoid& g, const std::string& name);
void write_group(std::ostream& os, const FiniteGroup& g, const std::string& name);
void write_set_action(std::ostream& os, const ActionOnSet& a, const std::string& group,
                      const std::string& name);
void write_groupoid_action(std::ostream& os, const ActionOnGroupoid& a, const std::string& group,
                           const std::string& groupoid, const std::string& name);
void write_bibundle(std::ostream& os, const Bibundle& p, const std::string& name,
                    const std::string& source, const std::string& target);
void write_cover(std::ostream& os, const Cover& c, const std::string& name);
void write_descent(std::ostream& os, const DescentDatum& d, const std::string& cover,
                   const std::string& target, const std::string& name);

}  // namespace grpd::io
